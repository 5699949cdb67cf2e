#include "cplearn/hypothesis/design.hpp"

#include <algorithm>

#include "cplearn/core/dynamics.hpp"

namespace cplearn {

DesignBuilder::DesignBuilder(const NetworkSpec& spec, const BasisFamily& basis)
    : spec_(spec),
      basis_(basis),
      block_(spec.dim(), basis.size()),
      psi_(static_cast<std::size_t>(basis.size())) {}

long long DesignBuilder::build(std::span<const double> x, Eigen::MatrixXd* xi) {
  block_.setZero();
  long long clamped = 0;
  const int d = spec_.d();
  const int q_count = basis_.size();
  const bool indicator = basis_.kind() == BasisKind::Indicator;
  visit_edges(spec_, x, scratch_, [&](const Edge& e, std::span<const double> delta, double r) {
    if (r > basis_.domain()) ++clamped;
    const Eigen::Index ri = static_cast<Eigen::Index>(e.i) * d;
    const Eigen::Index rj = static_cast<Eigen::Index>(e.j) * d;
    if (indicator) {
      const int q = basis_.bin_of(std::min(r, basis_.domain()));
      for (int k = 0; k < d; ++k) {
        const double f = e.weight * delta[static_cast<std::size_t>(k)];
        block_(ri + k, q) += f;
        block_(rj + k, q) -= f;
      }
      if (xi) (*xi)(q, q) += r * r;
      return;
    }
    basis_.eval_clamped_into(r, psi_);
    for (int q = 0; q < q_count; ++q) {
      const double c = e.weight * psi_[static_cast<std::size_t>(q)];
      for (int k = 0; k < d; ++k) {
        const double f = c * delta[static_cast<std::size_t>(k)];
        block_(ri + k, q) += f;
        block_(rj + k, q) -= f;
      }
    }
    if (xi) {
      const Eigen::Map<const Eigen::VectorXd> p(psi_.data(), q_count);
      xi->noalias() += (r * r) * p * p.transpose();
    }
  });
  return clamped;
}

}  // namespace cplearn
