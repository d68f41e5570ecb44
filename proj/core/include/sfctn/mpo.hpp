#pragma once

// Matrix product operator of a chain term list, built as a finite-state
// automaton. Auxiliary states on bond b (between sites b and b+1):
//
//   0                 "initial": only identities so far
//   1                 "final":   one complete term already emitted
//   2 + k             carrier of the k-th pair term open across b
//
// A pair term (mu, nu, w) injects w X at mu, is carried by identities and
// closed by X at nu; the field lambda Z is emitted site-locally.

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sfctn/model.hpp"
#include "sfctn/tensor.hpp"

namespace sfctn {

using LocalOperator = Eigen::Matrix2d;  // (out, in) physical indices

struct MpoEntry {
  std::size_t left = 0;   // auxiliary state on the left bond
  std::size_t right = 0;  // auxiliary state on the right bond
  LocalOperator op;
};

struct MpoSite {
  std::size_t left_dim = 1;
  std::size_t right_dim = 1;
  std::vector<MpoEntry> entries;  // sparse W[left][right]

  /// 4-leg tensor (left-aux, right-aux, phys-out, phys-in).
  DenseTensor dense() const;
};

struct MpoOperator {
  std::size_t num_sites = 0;
  std::vector<MpoSite> sites;
  std::vector<std::size_t> aux_dims;  // bond b between sites b and b+1

  std::size_t max_aux_dim() const;
};

namespace pauli {
LocalOperator identity();
LocalOperator x();
LocalOperator z();
}  // namespace pauli

MpoOperator build_mpo(const TermList1D& terms);

/// (sum_mu w_mu X_mu)^2 as an automaton of width 3.
MpoOperator weighted_x_square_mpo(const std::vector<double>& weights);

/// Dense 2^N x 2^N matrix in the basis of ed.hpp; N <= 12.
Matrix mpo_to_dense(const MpoOperator& mpo);

}  // namespace sfctn
