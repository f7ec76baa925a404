// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <vector>

#include "wildkz/singular_module.hpp"

namespace wildkz {

// Pure tensor of slice basis indices, one per slot.
using TensorIndex = std::vector<int>;
using SparseTensor = std::map<TensorIndex, Q>;

// Tensor product of finite module slices; blocks are indexed by the total
// depth sum_j nu_j.
class TensorSpace {
 public:
  explicit TensorSpace(std::vector<const ModuleSlice*> slots);

  std::size_t arity() const { return slots_.size(); }
  const ModuleSlice& slot(std::size_t j) const { return *slots_[j]; }

  struct Block {
    RootVec total;
    std::vector<TensorIndex> basis;
    std::map<TensorIndex, int> index;
    std::size_t dim() const { return basis.size(); }
  };
  // Throws CutoffTooSmall if some slot slice is too shallow for the block.
  Block block(const RootVec& total) const;

  // X at one slot; throws TruncationExceeded when a factor leaves its slice.
  SparseTensor apply(std::size_t slot, const Gen& x, const SparseTensor& v) const;
  // Product word acting on one pure tensor; pairs are (slot, generator), the
  // rightmost acts first.
  SparseTensor apply_word(const std::vector<std::pair<int, Gen>>& word, const SparseTensor& v) const;

  static SparseTensor unit(const TensorIndex& idx) { return {{idx, Q(1)}}; }
  QVec to_coords(const Block& b, const SparseTensor& v) const;  // throws TruncationExceeded
  SparseTensor from_coords(const Block& b, const QVec& v) const;
  // Matrix of a sum of words from one block to another.
  QMatrix word_matrix(const Block& from, const Block& to,
                      const std::vector<std::pair<std::vector<std::pair<int, Gen>>, Q>>& words) const;

 private:
  std::vector<const ModuleSlice*> slots_;
};

void add_to(SparseTensor& acc, const SparseTensor& v, const Q& scale);

}  // namespace wildkz
