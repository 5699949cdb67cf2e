#include "cplearn/learner/stream.hpp"

#include "cplearn/core/dynamics.hpp"
#include "cplearn/core/errors.hpp"

namespace cplearn {

StreamingAccumulator::StreamingAccumulator(const NetworkSpec& spec, const BasisFamily& basis,
                                           int bins, const AssembleOptions& options,
                                           const CouplingFunction* noise_free_target)
    : spec_(spec),
      basis_(basis),
      options_(options),
      target_(noise_free_target),
      design_(spec_, basis_),
      hist_(basis.domain(), bins),
      qr_(basis.size() + 1),
      rows_(spec.dim(), basis.size() + 1),
      upsilon_(Eigen::MatrixXd::Zero(basis.size(), basis.size())),
      xi_(Eigen::MatrixXd::Zero(basis.size(), basis.size())) {
  if (options.dense) throw ConfigError("streaming assembly has no dense mode");
}

void StreamingAccumulator::push(std::span<const double> x) {
  if (static_cast<Eigen::Index>(x.size()) != spec_.dim()) throw ConfigError("frame length must be n*d");
  if (frames_ > 0) {
    // The previous frame starts a transition: it enters the regression and
    // the histogram now that its successor is known.
    const Eigen::Index q = basis_.size();
    double* v = rows_.col(q).data();
    if (target_) {
      force_into(prev_x_, spec_, *target_, std::span<double>(v, x.size()), scratch_);
    } else {
      const double inv_h = 1.0 / spec_.h();
      for (std::size_t c = 0; c < x.size(); ++c) v[c] = (x[c] - prev_x_[c]) * inv_h;
    }
    if (options_.project_perp) {
      rows_.col(q) = project_diagonal(rows_.col(q), spec_.n(), spec_.d()).second;
    }
    qr_.add_rows(rows_);
    clamped_learn_ += prev_clamped_;
    for (double r : prev_r_) hist_.add(r);
  }
  prev_clamped_ = design_.build(x, &xi_);
  clamped_all_ += prev_clamped_;
  upsilon_.selfadjointView<Eigen::Lower>().rankUpdate(design_.block().transpose());
  rows_.leftCols(basis_.size()) = design_.block();
  prev_x_.assign(x.begin(), x.end());
  prev_r_.clear();
  visit_edges(spec_, x, scratch_,
              [&](const Edge&, std::span<const double>, double r) { prev_r_.push_back(r); });
  ++frames_;
}

LearnProblem StreamingAccumulator::problem() const {
  if (frames_ < 2) throw ConfigError("learning needs at least two states");
  LearnProblem p{basis_, {}, {}, 0.0, frames_ - 1, spec_.edge_count(), clamped_learn_,
                 std::nullopt, std::nullopt, qr_.factor()};
  set_normal_equations(p);
  return p;
}

CoercivityMatrices StreamingAccumulator::coercivity() const {
  if (frames_ < 1) throw ConfigError("empty trajectory");
  CoercivityMatrices out{upsilon_.selfadjointView<Eigen::Lower>(), xi_, clamped_all_};
  const double scale = 1.0 / (static_cast<double>(frames_) * spec_.edge_count());
  out.upsilon *= scale;
  out.xi *= scale;
  out.upsilon = 0.5 * (out.upsilon + out.upsilon.transpose()).eval();
  out.xi = 0.5 * (out.xi + out.xi.transpose()).eval();
  return out;
}

}  // namespace cplearn
