#pragma once

#include <cstdint>
#include <cstring>
#include <string_view>

namespace cplearn {

/// 64-bit FNV-1a, used for config and trajectory fingerprints.
class Fnv1a {
 public:
  Fnv1a& bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < size; ++k) {
      state_ ^= p[k];
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Fnv1a& text(std::string_view s) { return bytes(s.data(), s.size()); }
  template <class T>
  Fnv1a& value(const T& v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    return bytes(buf, sizeof(T));
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace cplearn
