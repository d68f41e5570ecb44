#include "sfctn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace sfctn {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) strides[i - 1] = strides[i] * shape[i];
  return strides;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(product(shape_), 0.0) {}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != product(shape_)) {
    throw std::invalid_argument("DenseTensor: data length " + std::to_string(data_.size()) +
                                " does not match shape product " +
                                std::to_string(product(shape_)));
  }
}

std::size_t DenseTensor::offset(std::initializer_list<std::size_t> index) const {
  if (index.size() != shape_.size()) throw std::invalid_argument("DenseTensor: wrong index rank");
  std::size_t off = 0;
  std::size_t axis = 0;
  for (auto i : index) {
    if (i >= shape_[axis]) throw std::out_of_range("DenseTensor: index out of range");
    off = off * shape_[axis] + i;
    ++axis;
  }
  return off;
}

double& DenseTensor::operator()(std::initializer_list<std::size_t> index) {
  return data_[offset(index)];
}

double DenseTensor::operator()(std::initializer_list<std::size_t> index) const {
  return data_[offset(index)];
}

DenseTensor DenseTensor::reshaped(std::vector<std::size_t> shape) const {
  return DenseTensor(std::move(shape), data_);
}

DenseTensor DenseTensor::permuted(std::span<const std::size_t> perm) const {
  const auto r = rank();
  if (perm.size() != r) throw std::invalid_argument("permuted: permutation has wrong length");
  std::vector<bool> seen(r, false);
  std::vector<std::size_t> new_shape(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (perm[i] >= r || seen[perm[i]]) throw std::invalid_argument("permuted: not a permutation");
    seen[perm[i]] = true;
    new_shape[i] = shape_[perm[i]];
  }
  const auto old_strides = row_major_strides(shape_);
  // Stride in the source for each destination axis.
  std::vector<std::size_t> src_strides(r);
  for (std::size_t i = 0; i < r; ++i) src_strides[i] = old_strides[perm[i]];

  DenseTensor out(new_shape);
  if (out.size() == 0) return out;
  std::vector<std::size_t> counter(r, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < out.size(); ++dst) {
    out.data_[dst] = data_[src];
    for (std::size_t axis = r; axis-- > 0;) {
      if (++counter[axis] < new_shape[axis]) {
        src += src_strides[axis];
        break;
      }
      src -= src_strides[axis] * (new_shape[axis] - 1);
      counter[axis] = 0;
    }
  }
  return out;
}

Eigen::Map<const RowMajorMatrix> DenseTensor::as_matrix(std::size_t row_axes) const {
  const auto rows = product(std::span(shape_).first(row_axes));
  const auto cols = product(std::span(shape_).subspan(row_axes));
  return {data_.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}

Eigen::Map<RowMajorMatrix> DenseTensor::as_matrix(std::size_t row_axes) {
  const auto rows = product(std::span(shape_).first(row_axes));
  const auto cols = product(std::span(shape_).subspan(row_axes));
  return {data_.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}

double DenseTensor::squared_norm() const {
  return std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0);
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     std::span<const std::pair<std::size_t, std::size_t>> axis_pairs) {
  std::vector<bool> a_used(a.rank(), false);
  std::vector<bool> b_used(b.rank(), false);
  std::vector<std::size_t> a_perm;
  std::vector<std::size_t> b_perm;
  for (const auto& [ia, ib] : axis_pairs) {
    if (ia >= a.rank() || ib >= b.rank()) throw std::invalid_argument("contract: axis out of range");
    if (a_used[ia] || b_used[ib]) throw std::invalid_argument("contract: axis paired twice");
    if (a.dim(ia) != b.dim(ib)) {
      throw std::invalid_argument("contract: dimension mismatch " + std::to_string(a.dim(ia)) +
                                  " vs " + std::to_string(b.dim(ib)));
    }
    a_used[ia] = b_used[ib] = true;
  }
  std::vector<std::size_t> out_shape;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (!a_used[i]) {
      a_perm.push_back(i);
      out_shape.push_back(a.dim(i));
    }
  }
  const auto a_free = a_perm.size();
  for (const auto& [ia, ib] : axis_pairs) {
    a_perm.push_back(ia);
    b_perm.push_back(ib);
  }
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (!b_used[i]) {
      b_perm.push_back(i);
      out_shape.push_back(b.dim(i));
    }
  }
  const auto ap = a.permuted(a_perm);
  const auto bp = b.permuted(b_perm);
  DenseTensor out(out_shape);
  out.as_matrix(a_free).noalias() = ap.as_matrix(a_free) * bp.as_matrix(axis_pairs.size());
  return out;
}

SvdResult truncated_svd(const Matrix& m, TruncationPolicy policy) {
  if (policy.max_rank == 0) throw std::invalid_argument("truncated_svd: max_rank must be >= 1");
  if (!m.allFinite()) throw std::runtime_error("truncated_svd: input contains NaN or Inf");
  if (m.size() == 0) throw std::invalid_argument("truncated_svd: empty matrix");

  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw std::runtime_error("truncated_svd: SVD failed");
  const Vector& s = svd.singularValues();
  if (!s.allFinite()) throw std::runtime_error("truncated_svd: non-finite singular values");

  const double total = s.squaredNorm();
  auto keep = static_cast<Eigen::Index>(std::min<std::size_t>(policy.max_rank, s.size()));
  if (total > 0.0) {
    while (keep > 1 && s(keep - 1) * s(keep - 1) / total < policy.relative_cutoff) --keep;
  } else {
    keep = 1;
  }
  SvdResult out;
  out.left = svd.matrixU().leftCols(keep);
  out.singular_values = s.head(keep);
  out.right = svd.matrixV().leftCols(keep);
  out.truncated_weight = s.tail(s.size() - keep).squaredNorm();
  return out;
}

SvdResult truncated_svd(const DenseTensor& t, std::span<const std::size_t> row_axes,
                        TruncationPolicy policy) {
  std::vector<std::size_t> perm(row_axes.begin(), row_axes.end());
  std::vector<bool> used(t.rank(), false);
  for (auto a : perm) {
    if (a >= t.rank() || used[a]) throw std::invalid_argument("truncated_svd: bad axis partition");
    used[a] = true;
  }
  if (perm.empty() || perm.size() == t.rank()) {
    throw std::invalid_argument("truncated_svd: partition must leave both sides non-empty");
  }
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (!used[i]) perm.push_back(i);
  }
  const auto p = t.permuted(perm);
  return truncated_svd(Matrix(p.as_matrix(row_axes.size())), policy);
}

QrResult thin_qr(const Matrix& m) {
  if (!m.allFinite()) throw std::runtime_error("thin_qr: input contains NaN or Inf");
  const auto k = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Matrix> qr(m);
  QrResult out;
  out.q = qr.householderQ() * Matrix::Identity(m.rows(), k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  // Fix the sign gauge so that diag(R) >= 0.
  for (Eigen::Index i = 0; i < k; ++i) {
    if (out.r(i, i) < 0.0) {
      out.r.row(i) *= -1.0;
      out.q.col(i) *= -1.0;
    }
  }
  return out;
}

Matrix reconstruct(const SvdResult& svd) {
  return svd.left * svd.singular_values.asDiagonal() * svd.right.transpose();
}

}  // namespace sfctn
