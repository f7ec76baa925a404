#include <complex>

#include "doctest.h"
#include "generators.hpp"
#include "wildkz/errors.hpp"
#include "wildkz/kz_connection.hpp"

using namespace wildkz;

namespace {

Q pascal(int n, int k) {
  if (k < 0 || k > n) return Q(0);
  std::vector<Q> row{Q(1)};
  for (int r = 1; r <= n; ++r) {
    std::vector<Q> next(r + 1, Q(1));
    for (int c = 1; c < r; ++c) next[c] = row[c - 1] + row[c];
    row = next;
  }
  return row[k];
}

Q ipow(const Q& x, int e) {
  Q r(1);
  for (int k = 0; k < (e < 0 ? -e : e); ++k) r *= x;
  return e < 0 ? Q(1) / r : r;
}

// -Omega times the truncated Taylor series of 1/(t + w1 - w2): expand
// (w2 - w1)^n / t^{n+1} and keep monomials w1^m w2^l with m, l < p.
CurrentTensor taylor_r(const LieAlgebra& g, int p, const Q& t) {
  CurrentTensor out(2, 0, p - 1);
  for (int n = 0; n <= 2 * p - 2; ++n)
    for (int m = 0; m <= n; ++m) {
      const int l = n - m;
      if (m >= p || l >= p) continue;
      Q c = pascal(n, m) * ipow(t, -1 - n);
      if (m % 2) c = -c;
      for (const auto& [a, b, w] : g.casimir_terms()) out.add(Factors{Gen{a, m}, Gen{b, l}}, -c * w);
    }
  return out;
}

// w2 / (1 - w2 (w1 + t)) = sum_n w2^{n+1} (w1 + t)^n, paired with Omega.
CurrentTensor taylor_s(const LieAlgebra& g, int p, const Q& t) {
  CurrentTensor out(2, 0, p - 1);
  for (int n = 0; n + 1 < p; ++n)
    for (int m = 0; m <= n; ++m) {
      const Q c = pascal(n, m) * ipow(t, n - m);
      for (const auto& [a, b, w] : g.casimir_terms()) out.add(Factors{Gen{a, m}, Gen{b, n + 1}}, c * w);
    }
  return out;
}

struct TameTwoPoint {
  LieAlgebra g = build_type_a(1);
  SingularModule m1, m2;
  ModuleSlice s1, s2;
  TensorSpace space;
  TensorSpace::Block block;
  TameTwoPoint(Q l1, Q l2, Q kappa)
      : m1(g, chi(l1, kappa)),
        m2(g, chi(l2, kappa)),
        s1(ModuleSlice::finite(m1, 3)),
        s2(ModuleSlice::finite(m2, 3)),
        space({&s1, &s2}),
        block(space.block({1})) {}
  static SingularCharacter chi(Q l, Q kappa) {
    SingularCharacter c;
    c.lambda = {l};
    c.kappa = kappa;
    return c;
  }
  // Omega^{(12)} computed term by term from the Casimir tensor.
  QMatrix omega12() const {
    QMatrix out(block.dim(), block.dim());
    for (std::size_t col = 0; col < block.dim(); ++col) {
      SparseTensor v = TensorSpace::unit(block.basis[col]);
      SparseTensor acc;
      for (const auto& [a, b, c] : g.casimir_terms()) add_to(acc, space.apply(0, Gen{a, 0}, space.apply(1, Gen{b, 0}, v)), c);
      const QVec coords = space.to_coords(block, acc);
      for (std::size_t r = 0; r < block.dim(); ++r) out(r, col) = coords[r];
    }
    return out;
  }
};

}  // namespace

TEST_CASE("r_p equals minus Omega times the Taylor series of the Cauchy kernel") {
  for (int rank = 1; rank <= 2; ++rank) {
    const LieAlgebra g = build_type_a(rank);
    for (int p = 1; p <= 3; ++p)
      for (const Q t : {Q(1), Q(-3, 2), Q(5, 7)}) {
        CHECK(r_matrix(g, p, t).tensor == taylor_r(g, p, t));
        CHECK(s_matrix(g, p, t).tensor == taylor_s(g, p, t));
      }
  }
}

TEST_CASE("r_1 is the KZ r-matrix") {
  const LieAlgebra g = build_type_a(1);
  CHECK(r_matrix(g, 1, Q(2)).tensor == omega_ml(g, 0, 0).scaled(Q(-1, 2)));
  CHECK(s_matrix(g, 1, Q(2)).tensor.is_zero());
  CHECK_THROWS_AS(r_matrix(g, 2, Q(0)), Error);
}

TEST_CASE("r_p is skew-symmetric") {
  gen::Rng rng(31);
  for (int rank = 1; rank <= 2; ++rank) {
    const LieAlgebra g = build_type_a(rank);
    for (int p = 1; p <= 3; ++p)
      for (int k = 0; k < 3; ++k) CHECK(skew_residual(g, p, rng.nonzero_rational()).is_zero());
  }
}

TEST_CASE("property: r_p solves the classical Yang-Baxter equation") {
  gen::Rng rng(17);
  for (int rank = 1; rank <= 2; ++rank) {
    const LieAlgebra g = build_type_a(rank);
    for (int p = 1; p <= 3; ++p)
      for (int trial = 0; trial < 3; ++trial) {
        const auto t = rng.times(3);
        CAPTURE(p);
        CHECK(cybe_residual(g, p, t[0], t[1], t[2]).is_zero());
      }
  }
}

TEST_CASE("a corrupted binomial breaks the Yang-Baxter equation") {
  const LieAlgebra g = build_type_a(1);
  CHECK_FALSE(cybe_residual(g, 2, Q(0), Q(1), Q(3), Corruption{0, 1, Q(1)}).is_zero());
  CHECK_FALSE(cybe_residual(g, 3, Q(0), Q(1), Q(3), Corruption{1, 1, Q(-1)}).is_zero());
  CHECK_THROWS_AS(cybe_residual(g, 2, Q(1), Q(1), Q(3)), Error);
}

TEST_CASE("Omega_{ml} commutes with the diagonal action") {
  for (int rank = 1; rank <= 2; ++rank) {
    const LieAlgebra g = build_type_a(rank);
    for (int m = 0; m <= 3; ++m)
      for (int l = 0; l <= 3; ++l)
        for (int x = 0; x < g.dim(); ++x) {
          CHECK(g_equivariance_residual(g, 0, 1, m, l, x, 2).is_zero());
          CHECK(g_equivariance_residual(g, 0, 2, m, l, x, 3).is_zero());
          CHECK(g_equivariance_residual(g, 1, 1, m, l, x, 2).is_zero());
        }
  }
}

TEST_CASE("the KZ Hamiltonian is -Omega/((kappa + h^vee)(t_1 - t_2))") {
  const TameTwoPoint kz(Q(1), Q(2), Q(1));
  const ConnectionData data(kz.g, ConnectionSpec{{1, 1}, std::nullopt, std::nullopt, Q(1), std::nullopt});
  const OperatorFamily fam = OperatorFamily::on_block(data, kz.space, kz.block);
  const std::vector<Q> t{Q(0), Q(2)};
  const QMatrix om = kz.omega12();
  CHECK(fam.hamiltonian(0, t).matrix == om.scaled(Q(1, 6)));   // -1/(3 * (0 - 2))
  CHECK(fam.hamiltonian(1, t).matrix == om.scaled(Q(-1, 6)));
  CHECK(fam.hamiltonian(0, t).provenance == std::vector<std::string>{"finite"});
  CHECK(om.rows() == 2);
}

TEST_CASE("dynamical term adds the dual Cartan element") {
  const TameTwoPoint kz(Q(1), Q(2), Q(1));
  ConnectionSpec spec{{1, 1}, std::nullopt, QVec{Q(4)}, Q(1), std::nullopt};
  const ConnectionData dyn(kz.g, spec);
  spec.dynamical.reset();
  const ConnectionData plain(kz.g, spec);
  const auto fd = OperatorFamily::on_block(dyn, kz.space, kz.block);
  const auto fp = OperatorFamily::on_block(plain, kz.space, kz.block);
  const std::vector<Q> t{Q(1), Q(-1)};
  // For sl2 the element dual to mu with <mu, H> = 4 is 2 H.
  QMatrix h(kz.block.dim(), kz.block.dim());
  for (std::size_t c = 0; c < kz.block.dim(); ++c) {
    const QVec v = kz.space.to_coords(kz.block, kz.space.apply(0, Gen{kz.g.h_index(0), 0}, TensorSpace::unit(kz.block.basis[c])));
    for (std::size_t r = 0; r < v.size(); ++r) h(r, c) = v[r];
  }
  CHECK(fd.hamiltonian(0, t).matrix - fp.hamiltonian(0, t).matrix == h.scaled(Q(2, 3)));
  CHECK(fd.hamiltonian(0, t).provenance.size() == 2);
  CHECK(fd.flatness_residual(0, 1, t).is_zero());
}

TEST_CASE("two-point dilation generator") {
  const TameTwoPoint kz(Q(1), Q(2), Q(1));
  const ConnectionData data(kz.g, ConnectionSpec{{1, 1}, 1, std::nullopt, Q(1), std::nullopt});
  // With r_infinity = 1 only the finite-slot pair (m, l) = (0, 0) survives,
  // whose coefficient t_12^0 = 1 does not depend on the times.
  for (int i = 0; i < 2; ++i) {
    REQUIRE(data.dilation(i).size() == 1);
    const HamiltonianTerm& term = data.dilation(i)[0];
    CHECK(term.coef.eval(std::vector<Q>{Q(3), Q(7)}) == Q(-1, 3));
    const auto& op = std::get<QuadOp>(data.ops()[term.op]);
    CHECK(op.m == 0);
    CHECK(op.l == 0);
  }
  ConnectionSpec wild{{2, 1}, 2, std::nullopt, Q(1), std::nullopt};
  const ConnectionData w(kz.g, wild);
  CHECK_THROWS_AS(w.dilation(0), Error);
}

TEST_CASE("property: exterior derivative of the connection form vanishes symbolically") {
  const LieAlgebra g = build_type_a(1);
  const std::vector<std::vector<int>> depth_sets{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {3, 1, 2}};
  for (const auto& d : depth_sets)
    for (std::optional<int> inf : {std::optional<int>(), std::optional<int>(1), std::optional<int>(2), std::optional<int>(3)}) {
      // The dynamical term stands in for the module at infinity.
      std::optional<QVec> mu;
      if (!inf) mu = QVec{Q(1, 3)};
      const ConnectionData data(g, ConnectionSpec{d, inf, mu, Q(5, 2), std::nullopt});
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK(derivative_residual(data, i, j).empty());
    }
}

TEST_CASE("flatness on a wild three-point block, and its negative control") {
  const LieAlgebra g = build_type_a(1);
  gen::Rng rng(8);
  std::vector<std::unique_ptr<SingularModule>> mods;
  std::vector<ModuleSlice> slices;
  const std::vector<int> depths{2, 1, 2, 2};
  for (int p : depths) mods.push_back(std::make_unique<SingularModule>(g, rng.character(1, p, Q(1))));
  for (auto& m : mods) slices.push_back(ModuleSlice::finite(*m, 3));
  std::vector<const ModuleSlice*> ptrs;
  for (auto& s : slices) ptrs.push_back(&s);
  const TensorSpace space(ptrs);
  const auto block = space.block({1});
  const ConnectionData data(g, ConnectionSpec{{2, 1, 2}, 2, std::nullopt, Q(1), std::nullopt});
  const auto fam = OperatorFamily::on_block(data, space, block);
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = rng.times(3);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) CHECK(fam.flatness_residual(i, j, t).is_zero());
  }
  const ConnectionData bad(g, ConnectionSpec{{2, 1, 2}, 2, std::nullopt, Q(1), Corruption{0, 1, Q(1)}});
  const auto fbad = OperatorFamily::on_block(bad, space, block);
  const std::vector<Q> t{Q(0), Q(1), Q(3)};
  bool any = false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) any = any || !fbad.flatness_residual(i, j, t).is_zero() || !derivative_residual(bad, i, j).empty();
  CHECK(any);
}

TEST_CASE("property: Euler relation for an all-tame configuration") {
  // Homogeneity of degree -1 gives sum_i t_i H_i = -(1/shift) sum_{i<j} Omega^{(ij)}.
  const TameTwoPoint kz(Q(1, 2), Q(3), Q(2));
  const ConnectionData finite(kz.g, ConnectionSpec{{1, 1}, std::nullopt, std::nullopt, Q(2), std::nullopt});
  const auto fam = OperatorFamily::on_block(finite, kz.space, kz.block);
  gen::Rng rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    const auto t = rng.times(2);
    const QMatrix lhs = fam.hamiltonian(0, t).matrix.scaled(t[0]) + fam.hamiltonian(1, t).matrix.scaled(t[1]);
    CHECK(lhs == kz.omega12().scaled(Q(-1, 4)));
  }
}

TEST_CASE("critical level and coincident times are rejected") {
  const LieAlgebra g = build_type_a(1);
  CHECK_THROWS_AS(ConnectionData(g, ConnectionSpec{{1, 1}, std::nullopt, std::nullopt, Q(-2), std::nullopt}), Error);
  CHECK_THROWS_AS(check_distinct({Q(1), Q(2), Q(1)}), Error);
  CHECK_NOTHROW(check_distinct({Q(1), Q(2), Q(3)}));
}

TEST_CASE("coefficient derivatives") {
  Coef c{Coef::Kind::Pair, 0, 1, -2, Q(3)};
  const auto d0 = c.derivative(0), d1 = c.derivative(1);
  REQUIRE(d0);
  REQUIRE(d1);
  const std::vector<Q> t{Q(2), Q(-1)};
  CHECK(d0->eval(t) == Q(-6) / 27);
  CHECK(d1->eval(t) == Q(6) / 27);
  CHECK_FALSE(c.derivative(2));
  Coef p{Coef::Kind::Power, 1, 0, 3, Q(1)};
  CHECK(p.derivative(1)->eval(t) == Q(3));
  const std::vector<std::complex<double>> tc{{2, 0}, {-1, 0}};
  CHECK(std::abs(c.eval(tc) - std::complex<double>(1.0 / 3, 0)) < 1e-15);
}
