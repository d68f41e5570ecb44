#pragma once

// Environment blocks of <psi|W|psi> for chain contractions. An environment
// holds one (bra bond x ket bond) matrix per auxiliary MPO state.

#include <vector>

#include "sfctn/mpo.hpp"
#include "sfctn/mps.hpp"

namespace sfctn::detail {

using Environment = std::vector<Matrix>;

inline Environment trivial_environment() { return Environment(1, Matrix::Ones(1, 1)); }

/// Absorbs site tensor `a` and MPO site `w` into a left environment.
Environment extend_left(const Environment& left, const MpsState::SiteTensor& a, const MpoSite& w);

/// Absorbs site tensor `a` and MPO site `w` into a right environment.
Environment extend_right(const Environment& right, const MpsState::SiteTensor& a,
                         const MpoSite& w);

}  // namespace sfctn::detail
