#include "cplearn/core/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cplearn/core/errors.hpp"

namespace cplearn {

namespace {

constexpr int kScanPoints = 20001;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double FormationRepulsive::singularity() const { return r0 + std::cbrt(a); }

CouplingFunction::CouplingFunction(Form form, double domain)
    : form_(std::move(form)), domain_(domain) {
  if (!(domain >= 0.0) || !std::isfinite(domain)) {
    throw ConfigError("coupling domain R must be finite and nonnegative");
  }
  // Dense scan for S0 and phi_min; also validates evaluability on [0, R].
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  const int points = domain > 0.0 ? kScanPoints : 1;
  for (int k = 0; k < points; ++k) {
    const double r = points > 1 ? domain * k / (points - 1) : 0.0;
    const double value = (*this)(r);
    sup = std::max(sup, value);
    inf = std::min(inf, value);
  }
  if (const auto* expansion = std::get_if<BasisExpansion>(&form_);
      expansion && expansion->basis.kind() == BasisKind::Indicator) {
    // Piecewise constant: the bin values are exact extrema.
    sup = expansion->coeffs.maxCoeff();
    inf = expansion->coeffs.minCoeff();
  }
  sup_ = sup;
  inf_ = inf;
}

CouplingFunction CouplingFunction::cucker_smale(double gamma, double eta, double domain) {
  if (!std::isfinite(gamma) || !(eta >= 0.0)) {
    throw ConfigError("Cucker-Smale coupling needs finite gamma and eta >= 0");
  }
  return CouplingFunction(CuckerSmale{gamma, eta}, domain);
}

CouplingFunction CouplingFunction::formation_repulsive(double gamma, double eta, double r0,
                                                       double a, double domain) {
  if (!(a > 0.0) || !(eta > 0.0) || !std::isfinite(gamma) || !std::isfinite(r0)) {
    throw ConfigError("formation coupling needs a > 0, eta > 0 and finite gamma, r0");
  }
  const FormationRepulsive form{gamma, eta, r0, a};
  if (domain >= form.singularity() - kSingularityMargin) {
    std::ostringstream msg;
    msg << "formation coupling is singular at r = " << form.singularity()
        << "; domain R = " << domain << " must stay below it";
    throw DomainError(msg.str());
  }
  return CouplingFunction(form, domain);
}

CouplingFunction CouplingFunction::expansion(BasisFamily basis, Eigen::VectorXd coeffs,
                                             Extension extension) {
  if (coeffs.size() != basis.size()) {
    throw ConfigError("basis expansion needs exactly Q coefficients");
  }
  if (!coeffs.allFinite()) throw ConfigError("basis expansion coefficients must be finite");
  const double domain = basis.domain();
  return CouplingFunction(BasisExpansion{std::move(basis), std::move(coeffs), extension}, domain);
}

double CouplingFunction::operator()(double r) const {
  return std::visit(
      Overloaded{
          [r](const CuckerSmale& cs) {
            if (cs.eta == 0.0) return cs.gamma;
            return cs.gamma / std::pow(1.0 + r * r, cs.eta);
          },
          [r](const FormationRepulsive& f) {
            if (r >= f.singularity() - kSingularityMargin) {
              std::ostringstream msg;
              msg << "formation coupling evaluated at r = " << r << ", not below its singularity at "
                  << f.singularity() << " minus " << kSingularityMargin;
              throw DomainError(msg.str());
            }
            const double u = r - f.r0;
            return f.gamma * u * u / std::pow(f.a - u * u * u, f.eta);
          },
          [r](const BasisExpansion& e) {
            const std::span<const double> coeffs(e.coeffs.data(),
                                                 static_cast<std::size_t>(e.coeffs.size()));
            if (e.extension == Extension::Clamp) {
              return e.basis.combine(coeffs, std::clamp(r, 0.0, e.basis.domain()));
            }
            if (!(r >= 0.0 && r <= e.basis.domain())) {
              std::ostringstream msg;
              msg << "basis expansion evaluated at r = " << r << " outside [0, "
                  << e.basis.domain() << "]";
              throw DomainError(msg.str());
            }
            return e.basis.combine(coeffs, r);
          },
      },
      form_);
}

std::string CouplingFunction::describe() const {
  std::ostringstream out;
  out << std::setprecision(17);
  std::visit(Overloaded{
                 [&](const CuckerSmale& cs) {
                   out << "cucker-smale(gamma=" << cs.gamma << ",eta=" << cs.eta << ")";
                 },
                 [&](const FormationRepulsive& f) {
                   out << "formation-repulsive(gamma=" << f.gamma << ",eta=" << f.eta
                       << ",r0=" << f.r0 << ",a=" << f.a << ")";
                 },
                 [&](const BasisExpansion& e) {
                   out << "expansion(" << to_string(e.basis.kind()) << ",Q=" << e.basis.size()
                       << ",coeffs=[";
                   for (Eigen::Index q = 0; q < e.coeffs.size(); ++q) {
                     out << (q ? "," : "") << e.coeffs(q);
                   }
                   out << "]," << (e.extension == Extension::Clamp ? "clamp" : "strict") << ")";
                 },
             },
             form_);
  out << "@R=" << domain_;
  return out.str();
}

}  // namespace cplearn
