// SPDX-License-Identifier: MIT
#include "wildkz/lie_core.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "wildkz/errors.hpp"

namespace wildkz {

int RootSystem::height(const RootVec& v) const {
  int h = 0;
  for (int c : v) h += c;
  return h;
}

int RootSystem::root_index(const RootVec& v) const {
  auto it = std::find(positive_roots.begin(), positive_roots.end(), v);
  return it == positive_roots.end() ? -1 : static_cast<int>(it - positive_roots.begin());
}

Q RootSystem::pair_roots(const RootVec& a, const RootVec& b) const {
  Q out(0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (a[i] && b[j]) out += form(i, j) * a[i] * b[j];
  return out;
}

Weight RootSystem::rho() const {
  Weight w{WeightCoords::SimpleRoot, QVec(rank)};
  for (const auto& r : positive_roots)
    for (int i = 0; i < rank; ++i) w.values[i] += Q(r[i], 2);
  return w;
}

namespace {

void check_cartan_shape(const std::vector<std::vector<int>>& a) {
  const std::size_t n = a.size();
  if (n == 0) fail(ErrorKind::NotFiniteType, "empty Cartan matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) fail(ErrorKind::NotFiniteType, "Cartan matrix is not square");
    if (a[i][i] != 2) fail(ErrorKind::NotFiniteType, "Cartan matrix diagonal entries must be 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) fail(ErrorKind::NotFiniteType, "off-diagonal Cartan entries must be nonpositive");
      if ((a[i][j] == 0) != (a[j][i] == 0))
        fail(ErrorKind::NotFiniteType, "Cartan matrix zero pattern is not symmetric");
    }
  }
  // Finite type iff every leading principal minor is positive (for a
  // symmetrisable matrix this is positive definiteness of the symmetrisation).
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = a[i][j];
    if (sgn(determinant(m)) <= 0)
      fail(ErrorKind::NotFiniteType, "Cartan matrix is not of finite type (leading minor of order " +
                                         std::to_string(k) + " is not positive)");
  }
}

}  // namespace

RootSystem generate_positive_roots(const std::vector<std::vector<int>>& cartan) {
  check_cartan_shape(cartan);
  RootSystem rs;
  rs.rank = static_cast<int>(cartan.size());
  rs.cartan = cartan;
  const int r = rs.rank;
  for (int i = 0; i < r; ++i) {
    RootVec e(r, 0);
    e[i] = 1;
    rs.simple_roots.push_back(e);
  }

  // Build by height using root strings: beta + alpha_i is a root iff q > 0,
  // where q = p - <beta, alpha_i^vee> and p is the downward string length.
  std::set<RootVec> all(rs.simple_roots.begin(), rs.simple_roots.end());
  std::vector<RootVec> layer = rs.simple_roots;
  while (!layer.empty()) {
    std::set<RootVec> next;
    for (const auto& beta : layer) {
      for (int i = 0; i < r; ++i) {
        int p = 0;
        RootVec down = beta;
        while (true) {
          down[i] -= 1;
          if (down[i] < 0 || !all.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (int j = 0; j < r; ++j) pairing += beta[j] * cartan[i][j];
        if (p - pairing > 0) {
          RootVec up = beta;
          up[i] += 1;
          next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    for (const auto& v : layer) all.insert(v);
    if (all.size() > 10000) fail(ErrorKind::NotFiniteType, "root generation did not terminate");
  }
  rs.positive_roots.assign(all.begin(), all.end());
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [&](const RootVec& a, const RootVec& b) {
    int ha = rs.height(a), hb = rs.height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });

  // Squared lengths l_i with a_ij l_i = a_ji l_j, propagated along the
  // Dynkin diagram, then rescaled so the highest root has length 2.
  QVec len(r, Q(0));
  for (int start = 0; start < r; ++start) {
    if (!is_zero(len[start])) continue;
    len[start] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < r; ++j) {
        if (j == i || cartan[i][j] == 0 || !is_zero(len[j])) continue;
        len[j] = Q(cartan[i][j]) * len[i] / Q(cartan[j][i]);
        queue.push_back(j);
      }
    }
  }
  rs.form = QMatrix(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rs.form(i, j) = Q(cartan[i][j]) * len[i] / 2;
  Q top = rs.pair_roots(rs.highest_root(), rs.highest_root());
  Q scale = Q(2) / top;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rs.form(i, j) *= scale;
  return rs;
}

Q weight_form(const RootSystem& rs, const Weight& mu, const Weight& nu) {
  if (mu.coords != nu.coords) fail(ErrorKind::InvalidArgument, "weights use different coordinate declarations");
  const int r = rs.rank;
  if (static_cast<int>(mu.values.size()) != r || static_cast<int>(nu.values.size()) != r)
    fail(ErrorKind::InvalidArgument, "weight has wrong number of coordinates");
  auto to_roots = [&](const QVec& v) {
    if (mu.coords == WeightCoords::SimpleRoot) return v;
    // Dynkin labels m_k = sum_i a_ki c_i; solve for the root coordinates c.
    QMatrix a(r, r);
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < r; ++i) a(k, i) = rs.cartan[k][i];
    return inverse(a).apply(v);
  };
  QVec a = to_roots(mu.values), b = to_roots(nu.values);
  Q out(0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out += rs.form(i, j) * a[i] * b[j];
  return out;
}

std::vector<std::vector<int>> cartan_matrix_type_a(int rank) {
  std::vector<std::vector<int>> a(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) {
    a[i][i] = 2;
    if (i + 1 < rank) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

BasisKind LieAlgebra::kind(int b) const {
  if (b < num_positive()) return BasisKind::F;
  if (b < num_positive() + rank()) return BasisKind::H;
  return BasisKind::E;
}

int LieAlgebra::root_of(int b) const {
  switch (kind(b)) {
    case BasisKind::F: return b;
    case BasisKind::E: return b - num_positive() - rank();
    default: fail(ErrorKind::InvalidArgument, "Cartan element has no root");
  }
}

int LieAlgebra::cartan_of(int b) const {
  if (kind(b) != BasisKind::H) fail(ErrorKind::InvalidArgument, "not a Cartan element");
  return b - num_positive();
}

std::string LieAlgebra::label(int b) const {
  auto root_label = [&](int idx) {
    std::string s;
    for (int c : rs_.positive_roots[idx]) s += std::to_string(c);
    return s;
  };
  switch (kind(b)) {
    case BasisKind::F: return "F" + root_label(root_of(b));
    case BasisKind::H: return "H" + std::to_string(cartan_of(b) + 1);
    case BasisKind::E: return "E" + root_label(root_of(b));
  }
  return "?";
}

RootVec LieAlgebra::basis_weight(int b) const {
  RootVec out(rank(), 0);
  if (kind(b) == BasisKind::H) return out;
  out = rs_.positive_roots[root_of(b)];
  if (kind(b) == BasisKind::F)
    for (int& c : out) c = -c;
  return out;
}

Q LieAlgebra::root_on_cartan(const RootVec& alpha, int k) const {
  int v = 0;
  for (int i = 0; i < rank(); ++i) v += alpha[i] * rs_.cartan[k][i];
  return Q(v);
}

QVec LieAlgebra::bracket(const QVec& x, const QVec& y) const {
  QVec out(dim_);
  for (int a = 0; a < dim_; ++a) {
    if (is_zero(x[a])) continue;
    for (int b = 0; b < dim_; ++b) {
      if (is_zero(y[b])) continue;
      Q c = x[a] * y[b];
      for (const auto& [k, s] : table_[a][b]) out[k] += c * s;
    }
  }
  return out;
}

Q LieAlgebra::cartan_form(const QVec& mu, const QVec& nu) const {
  Q out(0);
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) out += mu[i] * cartan_gram_inv_(i, j) * nu[j];
  return out;
}

QVec LieAlgebra::cartan_dual_element(const QVec& mu) const { return cartan_gram_inv_.apply(mu); }

int LieAlgebra::transpose_of(int b) const {
  switch (kind(b)) {
    case BasisKind::F: return e_index(root_of(b));
    case BasisKind::E: return f_index(root_of(b));
    default: return b;
  }
}

LieAlgebra build_type_a(int rank) {
  if (rank < 1) fail(ErrorKind::InvalidArgument, "type A rank must be at least 1");
  LieAlgebra g;
  g.name_ = "A" + std::to_string(rank);
  g.rs_ = generate_positive_roots(cartan_matrix_type_a(rank));
  const int n = rank + 1;
  const int s = g.num_positive();
  g.dim_ = 2 * s + rank;

  // Positive root with coordinates 1 on [i, j) corresponds to e_i - e_j.
  auto root_span = [&](const RootVec& v) {
    int i = 0;
    while (v[i] == 0) ++i;
    int j = i;
    while (j < rank && v[j] == 1) ++j;
    return std::make_pair(i, j);
  };
  g.matrices_.assign(g.dim_, QMatrix(n, n));
  for (int a = 0; a < s; ++a) {
    auto [i, j] = root_span(g.rs_.positive_roots[a]);
    g.matrices_[g.f_index(a)](j, i) = 1;
    g.matrices_[g.e_index(a)](i, j) = 1;
  }
  for (int k = 0; k < rank; ++k) {
    g.matrices_[g.h_index(k)](k, k) = 1;
    g.matrices_[g.h_index(k)](k + 1, k + 1) = -1;
  }
  std::map<std::pair<int, int>, int> offdiag;
  for (int a = 0; a < s; ++a) {
    auto [i, j] = root_span(g.rs_.positive_roots[a]);
    offdiag[{j, i}] = g.f_index(a);
    offdiag[{i, j}] = g.e_index(a);
  }
  auto decompose = [&](const QMatrix& m) {
    SparseElem out;
    Q running(0);
    for (int k = 0; k < rank; ++k) {
      running += m(k, k);
      if (!is_zero(running)) out.emplace_back(g.h_index(k), running);
    }
    for (const auto& [ij, b] : offdiag)
      if (!is_zero(m(ij.first, ij.second))) out.emplace_back(b, m(ij.first, ij.second));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };

  g.table_.assign(g.dim_, std::vector<SparseElem>(g.dim_));
  for (int a = 0; a < g.dim_; ++a)
    for (int b = 0; b < g.dim_; ++b) g.table_[a][b] = decompose(commutator(g.matrices_[a], g.matrices_[b]));

  g.gram_ = QMatrix(g.dim_, g.dim_);
  for (int a = 0; a < g.dim_; ++a)
    for (int b = 0; b < g.dim_; ++b) {
      QMatrix prod = g.matrices_[a] * g.matrices_[b];
      Q tr(0);
      for (int i = 0; i < n; ++i) tr += prod(i, i);
      g.gram_(a, b) = tr;
    }
  g.dual_ = inverse(g.gram_);
  for (int a = 0; a < g.dim_; ++a)
    for (int b = 0; b < g.dim_; ++b)
      if (!is_zero(g.dual_(a, b))) g.omega_.emplace_back(a, b, g.dual_(a, b));

  QMatrix hg(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) hg(i, j) = g.gram_(g.h_index(i), g.h_index(j));
  g.cartan_gram_inv_ = inverse(hg);

  // h^vee from the adjoint Casimir acting on the highest root vector.
  const int x = g.e_index(s - 1);
  QVec ex(g.dim_);
  ex[x] = 1;
  QVec acc(g.dim_);
  for (const auto& [a, b, c] : g.omega_) {
    QVec xa(g.dim_), xb(g.dim_);
    xa[a] = 1;
    xb[b] = c;
    QVec t = g.bracket(xa, g.bracket(xb, ex));
    for (int k = 0; k < g.dim_; ++k) acc[k] += t[k];
  }
  g.hdual_ = acc[x] / 2;
  return g;
}

nlohmann::json element_to_json(const SparseElem& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [b, c] : x) out.push_back({b, to_string(c)});
  return out;
}

SparseElem element_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_array()) fail(ErrorKind::Schema, "element must be a JSON array");
  SparseElem out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_string())
      fail(ErrorKind::Schema, "element entries must be [basis_index, \"p/q\"]");
    const int b = e[0].get<int>();
    if (b < 0 || b >= dim) fail(ErrorKind::Schema, "basis index out of range");
    out.emplace_back(b, parse_rational(e[1].get<std::string>()));
  }
  return out;
}

}  // namespace wildkz
