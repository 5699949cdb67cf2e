#pragma once

#include <Eigen/Dense>

namespace cplearn {

/// Upper-triangular factor R of a tall matrix M fed in row blocks, with
/// R^T R = M^T M, computed by blocked Householder QR without storing M.
class StreamingQR {
 public:
  explicit StreamingQR(Eigen::Index cols);

  void add_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows);
  Eigen::Index cols() const { return cols_; }
  /// cols x cols factor of every row added so far.
  Eigen::MatrixXd factor() const;

 private:
  void fold();

  Eigen::Index cols_;
  Eigen::Index capacity_;
  Eigen::Index filled_ = 0;
  /// Top cols_ rows hold R; buffered rows follow.
  Eigen::MatrixXd buffer_;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_;
};

/// Some F with F^T F = [G r; r^T s], for problems given by their normal equations.
Eigen::MatrixXd normal_equation_factor(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs,
                                       double target_sq);

}  // namespace cplearn
