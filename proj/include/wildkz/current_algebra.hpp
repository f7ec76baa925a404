// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wildkz/lie_core.hpp"

namespace wildkz {

// The generator X_b z^deg of the loop algebra.
struct Gen {
  int b = 0;
  int deg = 0;
  friend bool operator==(const Gen& x, const Gen& y) { return x.b == y.b && x.deg == y.deg; }
  friend bool operator!=(const Gen& x, const Gen& y) { return !(x == y); }
  // PBW order: z-degree first, then basis index.
  friend bool operator<(const Gen& x, const Gen& y) { return x.deg != y.deg ? x.deg < y.deg : x.b < y.b; }
  friend bool operator<=(const Gen& x, const Gen& y) { return !(y < x); }
};

using Factors = std::vector<Gen>;

// What to do with a term whose degree falls outside the window.
enum class WindowMode { Truncate, Widen };

// Sparse exact element of a tensor power of g[z, z^{-1}] restricted to a
// degree window, plus a central coefficient for arity-one affine elements.
class CurrentTensor {
 public:
  CurrentTensor(int arity, int lo, int hi, WindowMode mode = WindowMode::Truncate);

  // g_p element of arity k: window [0, p-1], truncating.
  static CurrentTensor truncated(int arity, int p) { return CurrentTensor(arity, 0, p - 1, WindowMode::Truncate); }

  int arity() const { return arity_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  WindowMode mode() const { return mode_; }
  const std::map<Factors, Q>& terms() const { return terms_; }
  const Q& central() const { return central_; }

  void add(const Factors& f, const Q& c);
  void add_central(const Q& c);
  void add(const CurrentTensor& other, const Q& scale = Q(1));
  CurrentTensor scaled(const Q& s) const;
  bool is_zero() const { return terms_.empty() && wildkz::is_zero(central_); }
  // Reverses the tensor factors (arity 2: the flip X (x) Y -> Y (x) X).
  CurrentTensor swapped() const;

  friend bool operator==(const CurrentTensor& a, const CurrentTensor& b) {
    return a.terms_ == b.terms_ && a.central_ == b.central_;
  }

 private:
  int arity_, lo_, hi_;
  WindowMode mode_;
  std::map<Factors, Q> terms_;
  Q central_;
};

CurrentTensor single(const Gen& g, const Q& c, int lo, int hi, WindowMode mode = WindowMode::Widen);

// [X z^a, Y z^b] = [X, Y] z^{a+b} in g_p, terms of degree >= p discarded.
CurrentTensor truncated_bracket(const LieAlgebra& g, const CurrentTensor& x, const CurrentTensor& y, int p);

// Bracket of the central extension: [X f, Y h] = [X, Y] fh + (X|Y) Res(h df) K.
// K is kept as the central coefficient.
CurrentTensor affine_bracket(const LieAlgebra& g, const CurrentTensor& x, const CurrentTensor& y);

// Bracket of two generators with the cocycle returned separately.
struct GenBracket {
  std::vector<std::pair<Gen, Q>> terms;
  Q central;
};
GenBracket bracket_generators(const LieAlgebra& g, const Gen& x, const Gen& y);

// Omega_{ml} = sum_k X_k z^m (x) X^k z^l.
CurrentTensor omega_ml(const LieAlgebra& g, int m, int l);
CurrentTensor casimir_tensor(const LieAlgebra& g);

struct SlotEmbedding {
  int n = 1;  // number of target slots
  int i = 0;  // zero-based slots
  int j = 0;
  bool product_in_slot() const { return i == j; }
};

// A symbolic n-slot operator: a sum of products of slotwise generator actions.
// Each product is read left to right as an operator word, so the rightmost
// factor acts first.
struct SlotOperator {
  int n = 1;
  std::vector<std::pair<std::vector<std::pair<int, Gen>>, Q>> words;
};

SlotOperator embed(const CurrentTensor& t, const SlotEmbedding& e);

nlohmann::json tensor_to_json(const CurrentTensor& t);
CurrentTensor tensor_from_json(const nlohmann::json& j, int arity, int lo, int hi, WindowMode mode);

}  // namespace wildkz
