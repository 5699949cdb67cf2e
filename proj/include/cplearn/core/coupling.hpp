#pragma once

#include <string>
#include <variant>

#include <Eigen/Dense>

#include "cplearn/hypothesis/basis.hpp"

namespace cplearn {

/// phi(r) = gamma / (1 + r^2)^eta
struct CuckerSmale {
  double gamma;
  double eta;
};

/// phi(r) = gamma (r - r0)^2 / (a - (r - r0)^3)^eta, singular at r = r0 + a^(1/3).
struct FormationRepulsive {
  double gamma;
  double eta;
  double r0;
  double a;

  double singularity() const;
};

/// How a basis expansion behaves for r > R.
enum class Extension {
  Error,  ///< DomainError, as for the basis itself
  Clamp,  ///< constant continuation phi(r) = phi(R)
};

/// phi(r) = sum_q coeffs_q psi_q(r).
struct BasisExpansion {
  BasisFamily basis;
  Eigen::VectorXd coeffs;
  Extension extension = Extension::Error;
};

/// Scalar coupling r -> phi(r) on a working domain [0, R] with cached
/// bounds S0 = sup phi and phi_min = inf phi over the domain.
class CouplingFunction {
 public:
  using Form = std::variant<CuckerSmale, FormationRepulsive, BasisExpansion>;

  static CouplingFunction cucker_smale(double gamma, double eta, double domain);
  static CouplingFunction formation_repulsive(double gamma, double eta, double r0, double a,
                                              double domain);
  static CouplingFunction expansion(BasisFamily basis, Eigen::VectorXd coeffs,
                                    Extension extension = Extension::Error);
  /// phi == value; convenient in tests.
  static CouplingFunction constant(double value, double domain) {
    return cucker_smale(value, 0.0, domain);
  }

  /// Throws DomainError where phi is not defined.
  double operator()(double r) const;

  const Form& form() const { return form_; }
  double domain() const { return domain_; }
  double sup_bound() const { return sup_; }
  double inf_bound() const { return inf_; }

  /// Canonical text used for fingerprints and reports.
  std::string describe() const;

 private:
  CouplingFunction(Form form, double domain);

  Form form_;
  double domain_;
  double sup_ = 0.0;
  double inf_ = 0.0;
};

/// Distance kept from the formation singularity; closer evaluations throw.
inline constexpr double kSingularityMargin = 1e-6;

}  // namespace cplearn
