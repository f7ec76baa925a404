// SPDX-License-Identifier: MIT
#include "wildkz/tensor_slice.hpp"

#include "wildkz/errors.hpp"
#include "wildkz/weight_combinatorics.hpp"

namespace wildkz {

void add_to(SparseTensor& acc, const SparseTensor& v, const Q& scale) {
  if (is_zero(scale)) return;
  for (const auto& [k, c] : v) {
    auto [it, fresh] = acc.emplace(k, c * scale);
    if (!fresh) {
      it->second += c * scale;
      if (is_zero(it->second)) acc.erase(it);
    }
  }
}

TensorSpace::TensorSpace(std::vector<const ModuleSlice*> slots) : slots_(std::move(slots)) {
  if (slots_.empty()) fail(ErrorKind::InvalidArgument, "tensor product needs at least one slot");
}

TensorSpace::Block TensorSpace::block(const RootVec& total) const {
  Block out;
  out.total = total;
  for (const auto& split : weight_splittings(total, static_cast<int>(slots_.size()))) {
    std::vector<const std::vector<int>*> choices;
    bool empty = false;
    for (std::size_t j = 0; j < split.size(); ++j) {
      int h = 0;
      for (int c : split[j]) h += c;
      if (h > slots_[j]->height())
        fail(ErrorKind::CutoffTooSmall, "slot " + std::to_string(j) + " slice is too shallow for the requested weight");
      auto it = slots_[j]->blocks().find(split[j]);
      if (it == slots_[j]->blocks().end()) {
        empty = true;
        break;
      }
      choices.push_back(&it->second);
    }
    if (empty) continue;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
      TensorIndex idx(choices.size());
      for (std::size_t j = 0; j < choices.size(); ++j) idx[j] = (*choices[j])[pick[j]];
      out.index.emplace(idx, static_cast<int>(out.basis.size()));
      out.basis.push_back(std::move(idx));
      std::size_t j = choices.size();
      while (j > 0) {
        --j;
        if (++pick[j] < choices[j]->size()) break;
        pick[j] = 0;
        if (j == 0) {
          j = choices.size() + 1;
          break;
        }
      }
      if (j == choices.size() + 1) break;
    }
  }
  return out;
}

SparseTensor TensorSpace::apply(std::size_t slot, const Gen& x, const SparseTensor& v) const {
  SparseTensor out;
  for (const auto& [idx, c] : v) {
    const auto& col = slots_[slot]->column(x, idx[slot]);
    if (!col) fail(ErrorKind::TruncationExceeded, "generator action leaves the slot slice");
    for (const auto& [i, a] : *col) {
      TensorIndex t = idx;
      t[slot] = i;
      add_to(out, SparseTensor{{t, a}}, c);
    }
  }
  return out;
}

SparseTensor TensorSpace::apply_word(const std::vector<std::pair<int, Gen>>& word, const SparseTensor& v) const {
  SparseTensor cur = v;
  for (auto it = word.rbegin(); it != word.rend() && !cur.empty(); ++it) cur = apply(it->first, it->second, cur);
  return cur;
}

QVec TensorSpace::to_coords(const Block& b, const SparseTensor& v) const {
  QVec out(b.dim());
  for (const auto& [idx, c] : v) {
    auto it = b.index.find(idx);
    if (it == b.index.end()) fail(ErrorKind::TruncationExceeded, "tensor lies outside the block");
    out[it->second] = c;
  }
  return out;
}

SparseTensor TensorSpace::from_coords(const Block& b, const QVec& v) const {
  SparseTensor out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.emplace(b.basis[i], v[i]);
  return out;
}

QMatrix TensorSpace::word_matrix(const Block& from, const Block& to,
                                 const std::vector<std::pair<std::vector<std::pair<int, Gen>>, Q>>& words) const {
  QMatrix m(to.dim(), from.dim());
  for (std::size_t c = 0; c < from.dim(); ++c) {
    SparseTensor acc;
    for (const auto& [word, coeff] : words) add_to(acc, apply_word(word, unit(from.basis[c])), coeff);
    QVec col = to_coords(to, acc);
    for (std::size_t r = 0; r < to.dim(); ++r) m(r, c) = col[r];
  }
  return m;
}

}  // namespace wildkz
