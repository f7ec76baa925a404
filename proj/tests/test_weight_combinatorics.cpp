#include <functional>
#include <numeric>

#include "doctest.h"
#include "generators.hpp"
#include "wildkz/weight_combinatorics.hpp"

using namespace wildkz;

namespace {

// Independent count: multisets of generators F_alpha z^k (k < p) whose
// roots sum to nu, enumerated over a flat generator list.
std::uint64_t count_multisets(const RootSystem& rs, int p, const RootVec& nu) {
  std::vector<RootVec> gens;
  for (const auto& a : rs.positive_roots)
    for (int k = 0; k < p; ++k) gens.push_back(a);
  std::function<std::uint64_t(std::size_t, RootVec)> go = [&](std::size_t start, RootVec rest) -> std::uint64_t {
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) return 1;
    std::uint64_t n = 0;
    for (std::size_t g = start; g < gens.size(); ++g) {
      RootVec r = rest;
      bool ok = true;
      for (std::size_t k = 0; k < r.size(); ++k) ok = ok && (r[k] -= gens[g][k]) >= 0;
      if (ok) n += go(g, r);
    }
    return n;
  };
  return go(0, nu);
}

std::uint64_t choose(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("sl2 weight spaces have dimension C(m+p-1, m)") {
  const RootSystem rs = generate_positive_roots(cartan_matrix_type_a(1));
  for (int p = 1; p <= 4; ++p)
    for (int m = 0; m <= 6; ++m) CHECK(dim_weight_space({m}, p, rs) == choose(m + p - 1, m));
}

TEST_CASE("weight-space dimensions agree with multiset enumeration") {
  for (int r = 1; r <= 3; ++r) {
    const RootSystem rs = generate_positive_roots(cartan_matrix_type_a(r));
    for (int p = 1; p <= 3; ++p)
      for (const auto& nu : weights_up_to_height(r, r == 3 ? 3 : 4)) {
        CAPTURE(r);
        CAPTURE(p);
        CHECK(dim_weight_space(nu, p, rs) == count_multisets(rs, p, nu));
      }
  }
}

TEST_CASE("negative weights have no multiplicity vectors") {
  const RootSystem rs = generate_positive_roots(cartan_matrix_type_a(2));
  CHECK(mult_positive_roots({-1, 2}, rs).empty());
  CHECK(dim_weight_space({-1, 2}, 2, rs) == 0);
  CHECK(dim_weight_space({0, 0}, 3, rs) == 1);
}

TEST_CASE("multiplicity vectors reproduce nu and are strictly decreasing") {
  const RootSystem rs = generate_positive_roots(cartan_matrix_type_a(2));
  for (const auto& nu : weights_up_to_height(2, 5)) {
    const auto ms = mult_positive_roots(nu, rs);
    for (std::size_t k = 1; k < ms.size(); ++k) CHECK(ms[k - 1] > ms[k]);
    for (const auto& m : ms) {
      RootVec s(2, 0);
      for (std::size_t a = 0; a < m.size(); ++a)
        for (int k = 0; k < 2; ++k) s[k] += m[a] * rs.positive_roots[a][k];
      CHECK(s == nu);
    }
  }
}

TEST_CASE("weak compositions: count, sum and order") {
  for (int p = 1; p <= 4; ++p)
    for (int m = 0; m <= 5; ++m) {
      const auto cs = weak_compositions(m, p);
      CHECK(cs.size() == choose(m + p - 1, p - 1));
      for (std::size_t k = 0; k < cs.size(); ++k) {
        CHECK(std::accumulate(cs[k].begin(), cs[k].end(), 0) == m);
        if (k) CHECK(cs[k - 1] > cs[k]);
      }
    }
}

TEST_CASE("property: tensor dimension is the convolution over splittings") {
  gen::Rng rng(7);
  const RootSystem rs = generate_positive_roots(cartan_matrix_type_a(2));
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(1, 3);
    std::vector<int> depths;
    for (int j = 0; j < n; ++j) depths.push_back(rng.integer(1, 3));
    const RootVec total{rng.integer(0, 2), rng.integer(0, 2)};
    std::uint64_t expect = 0;
    for (const auto& split : weight_splittings(total, n)) {
      std::uint64_t prod = 1;
      for (int j = 0; j < n; ++j) prod *= count_multisets(rs, depths[j], split[j]);
      expect += prod;
    }
    CHECK(dim_tensor_weight_space(total, depths, rs) == expect);
  }
}

TEST_CASE("theta as total gives the sum of depths when only one factor can carry it") {
  // A single copy of theta: every splitting puts theta in one slot, whose
  // weight space is spanned by F_theta z^k and products of simple F's.
  const RootSystem rs = generate_positive_roots(cartan_matrix_type_a(1));
  const std::vector<int> depths{2, 3, 1};
  CHECK(dim_tensor_weight_space({1}, depths, rs) == 6);
}

TEST_CASE("weights up to height are sorted by height") {
  const auto ws = weights_up_to_height(2, 3);
  CHECK(ws.size() == 10);
  CHECK(ws.front() == RootVec{0, 0});
  for (std::size_t k = 1; k < ws.size(); ++k) CHECK(ws[k - 1][0] + ws[k - 1][1] <= ws[k][0] + ws[k][1]);
}
