#pragma once

#include <span>
#include <string>

#include <Eigen/Dense>

namespace cplearn {

enum class BasisKind { Indicator, Monomial };

/// Left edge of bin b when [0, domain] is cut into `bins` equal parts.
inline double uniform_edge(int b, double domain, int bins) { return domain * b / bins; }

/// Bin of r among `bins` half-open bins [edge(b), edge(b+1)), consistent with
/// uniform_edge; r = domain lands in the last bin, r outside is clamped.
int uniform_bin(double r, double domain, int bins);

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

/// Finite frame {psi_1, ..., psi_Q} on [0, R] spanning the hypothesis space.
///
/// Indicator: psi_q = 1 on [R(q-1)/Q, Rq/Q), with the last bin closed at R.
/// Monomial:  psi_q(r) = r^q for q = 1..Q (no constant term).
class BasisFamily {
 public:
  BasisFamily(BasisKind kind, int size, double domain);

  static BasisFamily indicator(int size, double domain) {
    return BasisFamily(BasisKind::Indicator, size, domain);
  }
  static BasisFamily monomial(int size, double domain) {
    return BasisFamily(BasisKind::Monomial, size, domain);
  }

  BasisKind kind() const { return kind_; }
  int size() const { return size_; }
  double domain() const { return domain_; }

  /// (psi_1(r), ..., psi_Q(r)); throws DomainError outside [0, R].
  Eigen::VectorXd eval(double r) const;

  /// Writes the basis values into out (size Q); throws DomainError outside [0, R].
  void eval_into(double r, std::span<double> out) const;

  /// Same as eval_into with r clamped to [0, R] first.
  void eval_clamped_into(double r, std::span<double> out) const;

  /// Indicator bin holding r in [0, R]; only valid for indicator families.
  int bin_of(double r) const;

  /// Sum_q coeffs_q psi_q(r).
  double combine(std::span<const double> coeffs, double r) const;

  bool operator==(const BasisFamily&) const = default;

 private:
  void fill(double r, std::span<double> out) const;

  BasisKind kind_;
  int size_;
  double domain_;
};

}  // namespace cplearn
