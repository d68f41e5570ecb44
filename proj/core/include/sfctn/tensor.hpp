#pragma once

// Dense real tensors and the factorizations used by the tensor-network
// engines. Matrices are Eigen column-major doubles; DenseTensor keeps a
// row-major linearization so that grouping leading axes is a free reshape.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace sfctn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<std::size_t> shape);
  DenseTensor(std::vector<std::size_t> shape, std::vector<double> data);

  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::span<const std::size_t> shape() const { return shape_; }
  std::size_t size() const { return data_.size(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  double& operator()(std::initializer_list<std::size_t> index);
  double operator()(std::initializer_list<std::size_t> index) const;

  /// Same data, new shape with equal element count.
  DenseTensor reshaped(std::vector<std::size_t> shape) const;
  /// Axis i of the result is axis perm[i] of this tensor.
  DenseTensor permuted(std::span<const std::size_t> perm) const;

  /// View as (prod of first `row_axes` dims) x (rest) row-major matrix.
  Eigen::Map<const RowMajorMatrix> as_matrix(std::size_t row_axes) const;
  Eigen::Map<RowMajorMatrix> as_matrix(std::size_t row_axes);

  double squared_norm() const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::size_t offset(std::initializer_list<std::size_t> index) const;

  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Contracts axis a_i of `a` with axis b_i of `b` for each pair. Free axes of
/// the result: a's in order, then b's in order.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::span<const std::pair<std::size_t, std::size_t>> axis_pairs);

struct SvdResult {
  Matrix left;             // rows x k, orthonormal columns
  Vector singular_values;  // k values, descending
  Matrix right;            // cols x k, orthonormal columns (t ~ left * S * right^T)
  double truncated_weight = 0.0;
};

struct TruncationPolicy {
  std::size_t max_rank = 0;
  /// Discard trailing values whose squared weight relative to the total is
  /// below this threshold.
  double relative_cutoff = 1e-12;
};

/// Rank cut by max_rank first, then by the relative squared-weight cutoff.
/// At least one value is always kept. Throws std::runtime_error on
/// non-finite input or a failed decomposition.
SvdResult truncated_svd(const Matrix& m, TruncationPolicy policy);

/// Matricizes `t` with `row_axes` first (in the given order) and the
/// remaining axes as columns, then truncates.
SvdResult truncated_svd(const DenseTensor& t, std::span<const std::size_t> row_axes,
                        TruncationPolicy policy);

struct QrResult {
  Matrix q;  // rows x k, k = min(rows, cols)
  Matrix r;  // k x cols
};

QrResult thin_qr(const Matrix& m);

/// Reconstructs left * diag(s) * right^T.
Matrix reconstruct(const SvdResult& svd);

}  // namespace sfctn
