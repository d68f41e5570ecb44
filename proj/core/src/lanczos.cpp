#include "sfctn/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace sfctn {

namespace {

Vector random_unit(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
  return v.normalized();
}

// Two passes of classical Gram-Schmidt against the basis.
void orthogonalize(Vector& w, const std::vector<Vector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) w -= q.dot(w) * q;
  }
}

#ifndef NDEBUG
void check_symmetric(const LinearMap& apply, Eigen::Index dim, std::mt19937_64& rng) {
  const Vector x = random_unit(dim, rng);
  const Vector y = random_unit(dim, rng);
  Vector ax(dim), ay(dim);
  apply(x, ax);
  apply(y, ay);
  const double lhs = x.dot(ay);
  const double rhs = ax.dot(y);
  if (std::abs(lhs - rhs) > 1e-8 * std::max(1.0, std::abs(lhs))) {
    throw std::logic_error("lanczos_smallest: linear map is not symmetric");
  }
}
#endif

}  // namespace

LanczosResult lanczos_smallest(const LinearMap& apply, const Vector& start,
                               const LanczosOptions& options) {
  const Eigen::Index dim = start.size();
  if (dim == 0) throw std::invalid_argument("lanczos_smallest: empty start vector");
  if (options.max_iter < 1 || options.krylov_dim < 1) {
    throw std::invalid_argument("lanczos_smallest: max_iter and krylov_dim must be >= 1");
  }

  std::mt19937_64 rng(options.seed);
#ifndef NDEBUG
  check_symmetric(apply, dim, rng);
#endif

  const double start_norm = start.norm();
  if (!std::isfinite(start_norm)) throw std::runtime_error("lanczos_smallest: non-finite start");
  Vector v = start_norm > 0.0 ? Vector(start / start_norm) : random_unit(dim, rng);

  const auto kdim = static_cast<Eigen::Index>(std::min<Eigen::Index>(options.krylov_dim, dim));
  int breakdowns_left = options.max_breakdown_restarts;

  LanczosResult best;
  best.residual = std::numeric_limits<double>::infinity();
  int matvecs = 0;
  Vector w(dim);

  while (true) {
    std::vector<Vector> basis{v};
    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::SelfAdjointEigenSolver<Matrix> tri;
    double theta = 0.0;
    Vector s;

    for (Eigen::Index j = 0;; ++j) {
      apply(basis[j], w);
      ++matvecs;
      if (!w.allFinite()) throw std::runtime_error("lanczos_smallest: linear map produced NaN/Inf");
      alpha.push_back(basis[j].dot(w));
      orthogonalize(w, basis);
      const double b = w.norm();

      const auto k = static_cast<Eigen::Index>(alpha.size());
      Vector diag = Eigen::Map<const Vector>(alpha.data(), k);
      Vector sub = beta.empty() ? Vector() : Vector(Eigen::Map<const Vector>(beta.data(), k - 1));
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      theta = tri.eigenvalues()(0);
      s = tri.eigenvectors().col(0);
      const double estimate = b * std::abs(s(k - 1));
      const double scale = std::max(1.0, std::abs(theta));

      const bool exhausted = b <= 1e-12 * std::max(scale, std::abs(alpha.back()));
      if (exhausted && k < dim && breakdowns_left > 0) {
        // Invariant subspace: continue in a fresh random direction.
        --breakdowns_left;
        w = random_unit(dim, rng);
        orthogonalize(w, basis);
        if (w.norm() < 1e-10) break;
        beta.push_back(0.0);
        basis.push_back(w.normalized());
        if (k >= kdim) break;
        continue;
      }
      if (exhausted || estimate <= options.tol * scale || k >= kdim ||
          matvecs >= options.max_iter) {
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }

    const auto k = static_cast<Eigen::Index>(alpha.size());
    Vector ritz = Vector::Zero(dim);
    for (Eigen::Index i = 0; i < k; ++i) ritz += s(i) * basis[i];
    ritz.normalize();
    apply(ritz, w);
    ++matvecs;
    const double rq = ritz.dot(w);
    const double residual = (w - rq * ritz).norm();
    if (residual < best.residual) {
      best.eigenvalue = rq;
      best.eigenvector = ritz;
      best.residual = residual;
    }
    best.matvecs = matvecs;
    if (residual <= options.tol * std::max(1.0, std::abs(rq))) {
      best.converged = true;
      return best;
    }
    if (matvecs >= options.max_iter) return best;
    v = ritz;
  }
}

}  // namespace sfctn
