#include "doctest.h"
#include "wildkz/current_algebra.hpp"
#include "wildkz/errors.hpp"

using namespace wildkz;

TEST_CASE("truncated bracket drops degrees at or above p") {
  const LieAlgebra g = build_type_a(1);
  const int e = g.e_index(0), f = g.f_index(0), h = g.h_index(0);
  auto x = single(Gen{e, 1}, Q(1), 0, 1, WindowMode::Truncate);
  auto y = single(Gen{f, 0}, Q(1), 0, 1, WindowMode::Truncate);
  auto z = truncated_bracket(g, x, y, 2);
  REQUIRE(z.terms().size() == 1);
  CHECK(z.terms().begin()->first == Factors{Gen{h, 1}});
  auto w = truncated_bracket(g, x, single(Gen{f, 1}, Q(1), 0, 1, WindowMode::Truncate), 2);
  CHECK(w.is_zero());
}

TEST_CASE("affine bracket carries the residue cocycle") {
  const LieAlgebra g = build_type_a(1);
  const int e = g.e_index(0), f = g.f_index(0);
  auto x = single(Gen{e, 2}, Q(1), -3, 3);
  auto y = single(Gen{f, -2}, Q(1), -3, 3);
  auto z = affine_bracket(g, x, y);
  CHECK(z.central() == 2 * g.gram()(e, f));
  auto zz = affine_bracket(g, y, x);
  CHECK(zz.central() == -2 * g.gram()(e, f));
}

TEST_CASE("Omega_{ml} flips to Omega_{lm}") {
  const LieAlgebra g = build_type_a(2);
  for (int m = 0; m < 3; ++m)
    for (int l = 0; l < 3; ++l) CHECK(omega_ml(g, m, l).swapped() == omega_ml(g, l, m));
}

TEST_CASE("tensors round-trip through JSON") {
  const LieAlgebra g = build_type_a(2);
  CurrentTensor t = omega_ml(g, 1, 0).scaled(Q(-3, 7));
  auto j = tensor_to_json(t);
  CHECK(tensor_from_json(j, 2, 0, 1, WindowMode::Widen) == t);
  CHECK_THROWS_AS(tensor_from_json(nlohmann::json::object(), 2, 0, 1, WindowMode::Widen), Error);
}

TEST_CASE("embedding a two-slot tensor yields ordered slot words") {
  const LieAlgebra g = build_type_a(1);
  SlotOperator op = embed(casimir_tensor(g), SlotEmbedding{3, 0, 2});
  CHECK(op.n == 3);
  CHECK(op.words.size() == g.casimir_terms().size());
  for (const auto& [w, c] : op.words) {
    CHECK(w[0].first == 0);
    CHECK(w[1].first == 2);
  }
  CHECK_THROWS_AS(embed(casimir_tensor(g), SlotEmbedding{2, 0, 2}), Error);
}

TEST_CASE("arity mismatches are rejected") {
  CurrentTensor t(2, 0, 1);
  CHECK_THROWS_AS(t.add(Factors{Gen{0, 0}}, Q(1)), Error);
  CHECK_THROWS_AS(CurrentTensor(0, 0, 1), Error);
}
