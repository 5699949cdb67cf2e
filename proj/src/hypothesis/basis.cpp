#include "cplearn/hypothesis/basis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cplearn/core/errors.hpp"

namespace cplearn {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Indicator:
      return "indicator";
    case BasisKind::Monomial:
      return "monomial";
  }
  return "unknown";
}

BasisKind basis_kind_from_string(const std::string& name) {
  if (name == "indicator") return BasisKind::Indicator;
  if (name == "monomial") return BasisKind::Monomial;
  throw ConfigError("unknown basis kind '" + name + "' (expected indicator or monomial)");
}

BasisFamily::BasisFamily(BasisKind kind, int size, double domain)
    : kind_(kind), size_(size), domain_(domain) {
  if (size < 1) throw ConfigError("basis size Q must be at least 1");
  if (!(domain > 0.0) || !std::isfinite(domain)) {
    throw ConfigError("basis domain R must be positive and finite");
  }
}

Eigen::VectorXd BasisFamily::eval(double r) const {
  Eigen::VectorXd out(size_);
  eval_into(r, std::span<double>(out.data(), static_cast<std::size_t>(size_)));
  return out;
}

void BasisFamily::eval_into(double r, std::span<double> out) const {
  if (!(r >= 0.0 && r <= domain_)) {
    std::ostringstream msg;
    msg << "basis evaluated at r = " << r << " outside [0, " << domain_ << "]";
    throw DomainError(msg.str());
  }
  fill(r, out);
}

void BasisFamily::eval_clamped_into(double r, std::span<double> out) const {
  fill(std::clamp(r, 0.0, domain_), out);
}

int uniform_bin(double r, double domain, int bins) {
  if (!(r > 0.0)) return 0;
  if (r >= domain) return bins - 1;
  int b = std::clamp(static_cast<int>(std::floor(r / domain * bins)), 0, bins - 1);
  // Division rounding can put r one bin off near an edge.
  if (b + 1 < bins && r >= uniform_edge(b + 1, domain, bins)) ++b;
  if (b > 0 && r < uniform_edge(b, domain, bins)) --b;
  return b;
}

int BasisFamily::bin_of(double r) const { return uniform_bin(r, domain_, size_); }

double BasisFamily::combine(std::span<const double> coeffs, double r) const {
  if (kind_ == BasisKind::Indicator) return coeffs[static_cast<std::size_t>(bin_of(r))];
  // Horner on r * (c_1 + r (c_2 + ...)).
  double acc = 0.0;
  for (int q = size_ - 1; q >= 0; --q) acc = acc * r + coeffs[static_cast<std::size_t>(q)];
  return acc * r;
}

void BasisFamily::fill(double r, std::span<double> out) const {
  switch (kind_) {
    case BasisKind::Indicator:
      std::fill(out.begin(), out.begin() + size_, 0.0);
      out[static_cast<std::size_t>(bin_of(r))] = 1.0;
      break;
    case BasisKind::Monomial: {
      double power = r;
      for (int q = 0; q < size_; ++q) {
        out[static_cast<std::size_t>(q)] = power;
        power *= r;
      }
      break;
    }
  }
}

}  // namespace cplearn
