#pragma once

#include <cstdint>
#include <functional>

#include "sfctn/tensor.hpp"

namespace sfctn {

/// y = A x for a real symmetric A. `out` is pre-sized to in.size().
using LinearMap = std::function<void(const Vector& in, Vector& out)>;

struct LanczosOptions {
  int max_iter = 300;    // total matrix-vector products
  double tol = 1e-10;    // on ||A v - theta v|| / max(1, |theta|)
  int krylov_dim = 40;   // basis size before a restart from the Ritz vector
  int max_breakdown_restarts = 3;
  std::uint64_t seed = 0x5eed;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  Vector eigenvector;     // unit norm
  double residual = 0.0;  // ||A v - theta v||
  int matvecs = 0;
  bool converged = false;
};

/// Smallest eigenpair by restarted Lanczos with full reorthogonalization.
/// A zero start vector is replaced by a seeded random one. An exhausted
/// Krylov space (zero residual vector) before the full dimension is reached
/// is extended with a fresh random direction, at most
/// max_breakdown_restarts times. Non-convergence is reported through
/// `converged` with the best residual seen; it does not throw.
///
/// Debug builds spot-check the symmetry of `apply` and throw
/// std::logic_error if <x, A y> and <A x, y> differ by more than 1e-8.
LanczosResult lanczos_smallest(const LinearMap& apply, const Vector& start,
                               const LanczosOptions& options = {});

}  // namespace sfctn
