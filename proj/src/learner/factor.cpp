#include "cplearn/learner/factor.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cplearn/core/errors.hpp"

namespace cplearn {

namespace {

constexpr Eigen::Index kMinBufferRows = 256;

}  // namespace

StreamingQR::StreamingQR(Eigen::Index cols)
    : cols_(cols),
      capacity_(std::max(kMinBufferRows, 4 * cols)),
      buffer_(Eigen::MatrixXd::Zero(cols + capacity_, cols)) {
  if (cols < 1) throw ConfigError("QR factor needs at least one column");
}

void StreamingQR::add_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  if (rows.cols() != cols_) throw ConfigError("row block has the wrong number of columns");
  if (filled_ + rows.rows() > capacity_) fold();
  if (rows.rows() > capacity_) {
    capacity_ = rows.rows();
    buffer_.conservativeResize(cols_ + capacity_, Eigen::NoChange);
  }
  buffer_.middleRows(cols_ + filled_, rows.rows()) = rows;
  filled_ += rows.rows();
}

void StreamingQR::fold() {
  if (filled_ == 0) return;
  const Eigen::Index rows = cols_ + filled_;
  qr_.compute(buffer_.topRows(rows));
  buffer_.topRows(cols_) = qr_.matrixQR().topRows(cols_).triangularView<Eigen::Upper>();
  filled_ = 0;
}

Eigen::MatrixXd StreamingQR::factor() const {
  StreamingQR copy = *this;
  copy.fold();
  return copy.buffer_.topRows(cols_);
}

Eigen::MatrixXd normal_equation_factor(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs,
                                       double target_sq) {
  const Eigen::Index q = gram.rows();
  if (gram.cols() != q || rhs.size() != q) throw ConfigError("normal equations have mismatched sizes");
  Eigen::MatrixXd m(q + 1, q + 1);
  m.topLeftCorner(q, q) = gram;
  m.topRightCorner(q, 1) = rhs;
  m.bottomLeftCorner(1, q) = rhs.transpose();
  m(q, q) = target_sq;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return root.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace cplearn
