// SPDX-License-Identifier: MIT
#include "wildkz/weight_combinatorics.hpp"

#include <algorithm>

#include "wildkz/errors.hpp"

namespace wildkz {

namespace {

void mult_dfs(const RootSystem& rs, std::size_t a, RootVec& rest, MultiplicityVector& cur,
              std::vector<MultiplicityVector>& out) {
  if (a == rs.positive_roots.size()) {
    if (std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; })) out.push_back(cur);
    return;
  }
  const RootVec& alpha = rs.positive_roots[a];
  int bound = -1;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 0) {
      int b = rest[i] / alpha[i];
      bound = bound < 0 ? b : std::min(bound, b);
    }
  for (int k = bound; k >= 0; --k) {
    for (std::size_t i = 0; i < alpha.size(); ++i) rest[i] -= k * alpha[i];
    cur[a] = k;
    mult_dfs(rs, a + 1, rest, cur, out);
    for (std::size_t i = 0; i < alpha.size(); ++i) rest[i] += k * alpha[i];
  }
  cur[a] = 0;
}

void comp_dfs(int m, int p, WeakComposition& cur, std::vector<WeakComposition>& out) {
  const int pos = static_cast<int>(cur.size());
  if (pos == p - 1) {
    cur.push_back(m);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = m; k >= 0; --k) {
    cur.push_back(k);
    comp_dfs(m - k, p, cur, out);
    cur.pop_back();
  }
}

std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void split_dfs(RootVec& rest, int slots_left, std::vector<RootVec>& cur, std::vector<std::vector<RootVec>>& out) {
  if (slots_left == 1) {
    cur.push_back(rest);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  // Enumerate all nonnegative vectors bounded by rest, lexicographically decreasing.
  const std::size_t r = rest.size();
  RootVec v = rest;
  while (true) {
    RootVec remaining(r);
    for (std::size_t i = 0; i < r; ++i) remaining[i] = rest[i] - v[i];
    cur.push_back(v);
    split_dfs(remaining, slots_left - 1, cur, out);
    cur.pop_back();
    // Decrement v in mixed radix, last coordinate fastest.
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (v[i] > 0) {
        --v[i];
        for (std::size_t j = i + 1; j < r; ++j) v[j] = rest[j];
        break;
      }
      if (i == 0) return;
    }
    if (r == 0) return;
  }
}

}  // namespace

std::vector<MultiplicityVector> mult_positive_roots(const RootVec& nu, const RootSystem& rs) {
  if (static_cast<int>(nu.size()) != rs.rank) fail(ErrorKind::InvalidArgument, "weight has wrong rank");
  std::vector<MultiplicityVector> out;
  if (std::any_of(nu.begin(), nu.end(), [](int c) { return c < 0; })) return out;
  RootVec rest = nu;
  MultiplicityVector cur(rs.positive_roots.size(), 0);
  mult_dfs(rs, 0, rest, cur, out);
  return out;
}

std::vector<WeakComposition> weak_compositions(int m, int p) {
  if (m < 0 || p < 1) fail(ErrorKind::InvalidArgument, "weak compositions need m >= 0 and p >= 1");
  std::vector<WeakComposition> out;
  WeakComposition cur;
  comp_dfs(m, p, cur, out);
  return out;
}

std::uint64_t dim_weight_space(const RootVec& nu, int p, const RootSystem& rs) {
  if (p < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  std::uint64_t total = 0;
  for (const auto& m : mult_positive_roots(nu, rs)) {
    std::uint64_t prod = 1;
    for (int ma : m) prod *= binom_u64(ma + p - 1, ma);
    total += prod;
  }
  return total;
}

std::vector<std::vector<RootVec>> weight_splittings(const RootVec& total, int n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "need at least one slot");
  std::vector<std::vector<RootVec>> out;
  if (std::any_of(total.begin(), total.end(), [](int c) { return c < 0; })) return out;
  RootVec rest = total;
  std::vector<RootVec> cur;
  split_dfs(rest, n, cur, out);
  return out;
}

std::uint64_t dim_tensor_weight_space(const RootVec& total, const std::vector<int>& depths, const RootSystem& rs) {
  for (int r : depths)
    if (r < 1) fail(ErrorKind::InvalidArgument, "depths must be positive");
  std::uint64_t sum = 0;
  for (const auto& split : weight_splittings(total, static_cast<int>(depths.size()))) {
    std::uint64_t prod = 1;
    for (std::size_t j = 0; j < split.size() && prod; ++j) prod *= dim_weight_space(split[j], depths[j], rs);
    sum += prod;
  }
  return sum;
}

std::vector<RootVec> weights_up_to_height(int rank, int h) {
  std::vector<RootVec> out;
  RootVec v(rank, 0);
  while (true) {
    int s = 0;
    for (int c : v) s += c;
    if (s <= h) out.push_back(v);
    int i = 0;
    while (i < rank) {
      if (++v[i] <= h) break;
      v[i] = 0;
      ++i;
    }
    if (i == rank) break;
  }
  std::sort(out.begin(), out.end(), [](const RootVec& a, const RootVec& b) {
    int ha = 0, hb = 0;
    for (int c : a) ha += c;
    for (int c : b) hb += c;
    return ha != hb ? ha < hb : a > b;
  });
  return out;
}

}  // namespace wildkz
