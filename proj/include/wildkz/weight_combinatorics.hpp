// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "wildkz/lie_core.hpp"

namespace wildkz {

// m[a] = multiplicity of the a-th positive root (RootSystem order).
using MultiplicityVector = std::vector<int>;
using WeakComposition = std::vector<int>;

// All ways of writing nu as a nonnegative integer combination of positive
// roots. Empty when nu has a negative coordinate. Lexicographically
// decreasing in the multiplicity vector.
std::vector<MultiplicityVector> mult_positive_roots(const RootVec& nu, const RootSystem& rs);

// p-tuples of nonnegative integers summing to m, lexicographically decreasing.
std::vector<WeakComposition> weak_compositions(int m, int p);

std::uint64_t dim_weight_space(const RootVec& nu, int p, const RootSystem& rs);

// Every tuple (nu_1, ..., nu_n) of elements of Q_+ with sum total.
std::vector<std::vector<RootVec>> weight_splittings(const RootVec& total, int n);

std::uint64_t dim_tensor_weight_space(const RootVec& total, const std::vector<int>& depths, const RootSystem& rs);

// Nonnegative root-lattice vectors of height at most h, ordered by height
// then lexicographically decreasing.
std::vector<RootVec> weights_up_to_height(int rank, int h);

}  // namespace wildkz
