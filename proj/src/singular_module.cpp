// SPDX-License-Identifier: MIT
#include "wildkz/singular_module.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "wildkz/errors.hpp"
#include "wildkz/weight_combinatorics.hpp"

namespace wildkz {

void SingularCharacter::validate(const LieAlgebra& g) const {
  if (p < 1) fail(ErrorKind::Schema, "depth p must be at least 1");
  if (static_cast<int>(lambda.size()) != g.rank()) fail(ErrorKind::Schema, "lambda has wrong number of coordinates");
  if (static_cast<int>(q.size()) != p - 1) fail(ErrorKind::Schema, "q must contain exactly p-1 functionals");
  for (const auto& a : q)
    if (static_cast<int>(a.size()) != g.rank()) fail(ErrorKind::Schema, "wild functional has wrong number of coordinates");
}

void add_to(SparseVec& acc, const SparseVec& v, const Q& scale) {
  if (is_zero(scale)) return;
  for (const auto& [m, c] : v) {
    auto [it, fresh] = acc.emplace(m, c * scale);
    if (!fresh) {
      it->second += c * scale;
      if (is_zero(it->second)) acc.erase(it);
    }
  }
}

SingularModule::SingularModule(const LieAlgebra& g, SingularCharacter chi) : g_(&g), chi_(std::move(chi)) {
  chi_.validate(g);
}

bool SingularModule::is_creation(const Gen& x) const {
  if (x.deg < 0) return true;
  return x.deg < chi_.p && g_->kind(x.b) == BasisKind::F;
}

SparseVec SingularModule::base(const Gen& x) const {
  if (x.deg >= chi_.p) return {};
  if (is_creation(x)) return {{Mono{x}, Q(1)}};
  if (g_->kind(x.b) == BasisKind::E) return {};
  const Q& val = chi_.a(x.deg)[g_->cartan_of(x.b)];
  if (is_zero(val)) return {};
  return {{Mono{}, val}};
}

SparseVec SingularModule::act(const Gen& x, const Mono& m) const {
  if (m.empty()) return base(x);
  // z^p g[[z]] kills the finite module, and brackets with nonnegative
  // degrees cannot lower the degree of x.
  if (x.deg >= chi_.p && m.front().deg >= 0) return {};
  const Gen& y1 = m.front();
  if (is_creation(x) && x <= y1) {
    Mono out;
    out.reserve(m.size() + 1);
    out.push_back(x);
    out.insert(out.end(), m.begin(), m.end());
    return {{std::move(out), Q(1)}};
  }
  const auto key = std::make_pair(x, m);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  // x y1 rest = y1 (x rest) + [x, y1] rest + kappa c(x, y1) rest
  const Mono rest(m.begin() + 1, m.end());
  SparseVec out;
  for (const auto& [mono, c] : act(x, rest)) add_to(out, act(y1, mono), c);
  GenBracket br = bracket_generators(*g_, x, y1);
  for (const auto& [gen, c] : br.terms) add_to(out, act(gen, rest), c);
  if (!is_zero(br.central)) add_to(out, SparseVec{{rest, Q(1)}}, br.central * chi_.kappa);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(key, out);
  return out;
}

SparseVec SingularModule::act(const Gen& x, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [m, c] : v) add_to(out, act(x, m), c);
  return out;
}

SparseVec SingularModule::act_word(const std::vector<Gen>& word, const SparseVec& v) const {
  SparseVec cur = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = act(*it, cur);
  return cur;
}

RootVec SingularModule::depth_of(const Mono& m) const {
  RootVec nu(g_->rank(), 0);
  for (const auto& x : m) {
    RootVec w = g_->basis_weight(x.b);
    for (int i = 0; i < g_->rank(); ++i) nu[i] -= w[i];
  }
  return nu;
}

int SingularModule::negative_degree(const Mono& m) {
  int k = 0;
  for (const auto& x : m)
    if (x.deg < 0) k -= x.deg;
  return k;
}

std::string mono_label(const LieAlgebra& g, const Mono& m) {
  std::string s;
  for (const auto& x : m) {
    s += g.label(x.b);
    if (x.deg != 0) s += "z^" + std::to_string(x.deg);
    s += " ";
  }
  return s + "w";
}

// ---------------------------------------------------------------------------

void ModuleSlice::add_basis(const Mono& m) {
  if (index_.count(m)) return;
  const int idx = static_cast<int>(basis_.size());
  basis_.push_back(m);
  depths_.push_back(mod_->depth_of(m));
  index_.emplace(m, idx);
  blocks_[depths_.back()].push_back(idx);
}

namespace {

// PBW monomials of the finite module with a given nu, built from
// multiplicity vectors and weak compositions of each multiplicity.
std::vector<Mono> finite_monomials(const LieAlgebra& g, int p, const RootVec& nu) {
  std::vector<Mono> out;
  for (const auto& mult : mult_positive_roots(nu, g.roots())) {
    std::vector<int> roots;
    std::vector<std::vector<WeakComposition>> choices;
    for (std::size_t a = 0; a < mult.size(); ++a)
      if (mult[a] > 0) {
        roots.push_back(static_cast<int>(a));
        choices.push_back(weak_compositions(mult[a], p));
      }
    std::vector<std::size_t> pick(roots.size(), 0);
    while (true) {
      Mono m;
      for (std::size_t r = 0; r < roots.size(); ++r) {
        const auto& phi = choices[r][pick[r]];
        for (int i = 0; i < p; ++i)
          for (int e = 0; e < phi[i]; ++e) m.push_back(Gen{g.f_index(roots[r]), i});
      }
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      std::size_t r = 0;
      while (r < roots.size() && ++pick[r] == choices[r].size()) pick[r++] = 0;
      if (r == roots.size()) break;
    }
  }
  return out;
}

void negative_parts(const LieAlgebra& g, int budget, const Gen* min_gen, Mono& cur, std::vector<Mono>& out) {
  out.push_back(cur);
  for (int d = -budget; d <= -1; ++d)
    for (int b = 0; b < g.dim(); ++b) {
      Gen x{b, d};
      if (min_gen && x < *min_gen) continue;
      cur.push_back(x);
      negative_parts(g, budget + d, &cur.back(), cur, out);
      cur.pop_back();
    }
}

}  // namespace

ModuleSlice ModuleSlice::finite(const SingularModule& mod, int height) {
  if (height < 0) fail(ErrorKind::InvalidArgument, "height cutoff must be nonnegative");
  ModuleSlice s(mod, height, 0);
  for (const auto& nu : weights_up_to_height(mod.algebra().rank(), height))
    for (const auto& m : finite_monomials(mod.algebra(), mod.depth(), nu)) s.add_basis(m);
  return s;
}

ModuleSlice ModuleSlice::affine(const SingularModule& mod, int height, int neg_degree) {
  if (height < 0 || neg_degree < 0) fail(ErrorKind::InvalidArgument, "slice cutoffs must be nonnegative");
  ModuleSlice s(mod, height, neg_degree);
  std::vector<Mono> negs;
  Mono cur;
  negative_parts(mod.algebra(), neg_degree, nullptr, cur, negs);
  std::sort(negs.begin(), negs.end(), [](const Mono& a, const Mono& b) {
    int ka = SingularModule::negative_degree(a), kb = SingularModule::negative_degree(b);
    return ka != kb ? ka < kb : a < b;
  });
  std::vector<Mono> fin;
  for (const auto& nu : weights_up_to_height(mod.algebra().rank(), height))
    for (auto& m : finite_monomials(mod.algebra(), mod.depth(), nu)) fin.push_back(std::move(m));
  for (const auto& n : negs)
    for (const auto& f : fin) {
      Mono m = n;
      m.insert(m.end(), f.begin(), f.end());
      s.add_basis(m);
    }
  return s;
}

int ModuleSlice::index_of(const Mono& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

bool ModuleSlice::contains(const Mono& m) const { return index_.count(m) > 0; }

const std::optional<std::vector<std::pair<int, Q>>>& ModuleSlice::column(const Gen& x, int col) const {
  std::lock_guard<std::mutex> lock(*mu_);
  auto& cols = columns_[x];
  if (cols.empty()) cols.resize(basis_.size());
  auto& entry = cols[col];
  if (!entry) {
    std::vector<std::pair<int, Q>> out;
    bool escaped = false;
    for (const auto& [m, c] : mod_->act(x, basis_[col])) {
      int i = index_of(m);
      if (i < 0) {
        escaped = true;
        break;
      }
      out.emplace_back(i, c);
    }
    if (!escaped) {
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      entry = std::move(out);
    } else {
      // Mark as computed-but-escaping with a sentinel.
      entry = std::vector<std::pair<int, Q>>{{-1, Q(0)}};
    }
  }
  static const std::optional<std::vector<std::pair<int, Q>>> none;
  if (!entry->empty() && entry->front().first == -1) return none;
  return entry;
}

QVec ModuleSlice::act(const Gen& x, const QVec& v) const {
  if (v.size() != basis_.size()) fail(ErrorKind::InvalidArgument, "vector length does not match slice");
  QVec out(basis_.size());
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (is_zero(v[c])) continue;
    const auto& col = column(x, static_cast<int>(c));
    if (!col) fail(ErrorKind::TruncationExceeded, "generator action leaves the module slice");
    for (const auto& [i, a] : *col) out[i] += a * v[c];
  }
  return out;
}

QMatrix ModuleSlice::matrix(const Gen& x) const {
  const std::size_t n = basis_.size();
  QMatrix m(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const auto& col = column(x, static_cast<int>(c));
    if (!col) fail(ErrorKind::TruncationExceeded, "generator action leaves the module slice");
    for (const auto& [i, a] : *col) m(i, c) = a;
  }
  return m;
}

QVec ModuleSlice::to_coords(const SparseVec& v) const {
  QVec out(basis_.size());
  for (const auto& [m, c] : v) {
    int i = index_of(m);
    if (i < 0) fail(ErrorKind::TruncationExceeded, "vector lies outside the module slice");
    out[i] = c;
  }
  return out;
}

SparseVec ModuleSlice::from_coords(const QVec& v) const {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.emplace(basis_[i], v[i]);
  return out;
}

std::uint64_t brute_force_pbw_count(const LieAlgebra& g, int p, const RootVec& nu) {
  std::vector<Gen> gens;
  for (int a = 0; a < g.num_positive(); ++a)
    for (int i = 0; i < p; ++i) gens.push_back(Gen{g.f_index(a), i});
  std::sort(gens.begin(), gens.end());
  std::uint64_t count = 0;
  RootVec rest = nu;
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (std::all_of(rest.begin(), rest.end(), [](int c) { return c == 0; })) ++count;
    for (std::size_t k = start; k < gens.size(); ++k) {
      const RootVec& alpha = g.roots().positive_roots[g.root_of(gens[k].b)];
      bool ok = true;
      for (std::size_t i = 0; i < rest.size(); ++i) ok = ok && rest[i] >= alpha[i];
      if (!ok) continue;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= alpha[i];
      dfs(k);
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] += alpha[i];
    }
  };
  if (std::any_of(nu.begin(), nu.end(), [](int c) { return c < 0; })) return 0;
  dfs(0);
  return count;
}

// ---------------------------------------------------------------------------

Gen DualModuleSlice::theta_of(const Gen& x, Q& sign) const {
  const LieAlgebra& g = base_->module().algebra();
  if (theta_ == Theta::Dual) {
    sign = -1;
    return x;
  }
  sign = 1;
  return Gen{g.transpose_of(x.b), x.deg};
}

QVec DualModuleSlice::act(const Gen& x, const QVec& phi) const {
  const ModuleSlice& s = *base_;
  const LieAlgebra& g = s.module().algebra();
  if (phi.size() != s.dim()) fail(ErrorKind::InvalidArgument, "dual vector length does not match slice");
  Q sign;
  const Gen tx = theta_of(x, sign);
  const RootVec shift = g.basis_weight(tx.b);
  QVec out(s.dim());
  if (x.deg >= s.module().depth()) return out;
  for (std::size_t b = 0; b < phi.size(); ++b) {
    if (is_zero(phi[b])) continue;
    RootVec target = s.depth_of_index(static_cast<int>(b));
    int h = 0;
    bool negative = false;
    for (std::size_t i = 0; i < target.size(); ++i) {
      target[i] += shift[i];
      negative = negative || target[i] < 0;
      h += target[i];
    }
    if (negative) continue;
    if (h > s.height()) fail(ErrorKind::TruncationExceeded, "dual action leaves the module slice");
    auto it = s.blocks().find(target);
    if (it == s.blocks().end()) continue;
    for (int c : it->second) {
      const auto& col = s.column(tx, c);
      if (!col) fail(ErrorKind::TruncationExceeded, "dual action leaves the module slice");
      for (const auto& [i, a] : *col)
        if (i == static_cast<int>(b)) out[c] += sign * a * phi[b];
    }
  }
  return out;
}

QVec DualModuleSlice::cyclic() const {
  QVec out(base_->dim());
  out[base_->cyclic_index()] = 1;
  return out;
}

QVec DualModuleSlice::weight_of(int b) const {
  const SingularModule& mod = base_->module();
  const LieAlgebra& g = mod.algebra();
  QVec out(g.rank());
  for (int k = 0; k < g.rank(); ++k) {
    out[k] = mod.character().lambda[k] - g.root_on_cartan(base_->depth_of_index(b), k);
    if (theta_ == Theta::Dual) out[k] = -out[k];
  }
  return out;
}

// ---------------------------------------------------------------------------

QMatrix shapovalov_matrix(const ModuleSlice& slice, int basis_index, int root) {
  const SingularModule& mod = slice.module();
  const LieAlgebra& g = mod.algebra();
  const int p = mod.depth();
  const Mono& w = slice.basis().at(basis_index);
  QMatrix m(p, p);
  for (int k = 0; k < p; ++k) {
    SparseVec fv = mod.act(Gen{g.f_index(root), k}, w);
    for (int j = 0; j < p; ++j) {
      SparseVec efv = mod.act(Gen{g.e_index(root), j}, fv);
      auto it = efv.find(w);
      if (it != efv.end()) m(j, k) = it->second;
    }
  }
  return m;
}

Q obstruction_determinant(const ModuleSlice& slice, int basis_index, int root) {
  return determinant(shapovalov_matrix(slice, basis_index, root));
}

Q candidate_pairing(const ModuleSlice& slice, int root, const QVec& b) {
  const SingularModule& mod = slice.module();
  const LieAlgebra& g = mod.algebra();
  const int p = mod.depth();
  if (static_cast<int>(b.size()) != p) fail(ErrorKind::InvalidArgument, "need p coefficients");
  // <theta^{-1}(E_alpha) z^j psi, v> = <psi, E_alpha z^j v>.
  const SparseVec v = mod.act(Gen{g.f_index(root), p - 1}, Mono{});
  Q out(0);
  for (int j = 0; j < p; ++j) {
    SparseVec ev = mod.act(Gen{g.e_index(root), j}, v);
    auto it = ev.find(Mono{});
    if (it != ev.end()) out += b[j] * it->second;
  }
  return out;
}

std::map<RootVec, QMatrix> shapovalov_pairing(const ModuleSlice& slice) {
  const SingularModule& mod = slice.module();
  const LieAlgebra& g = mod.algebra();
  std::map<RootVec, QMatrix> out;
  for (const auto& [nu, idx] : slice.blocks()) {
    QMatrix s(idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      // Phi(y_1 ... y_n w) = y_1 ... y_n psi, and <y psi, v> = <psi, theta(y) v>.
      std::vector<Gen> word;
      const Mono& u = slice.basis()[idx[r]];
      for (const auto& y : u) word.push_back(Gen{g.transpose_of(y.b), y.deg});
      // theta(y_n) ... theta(y_1) v: y_1 acts first.
      std::reverse(word.begin(), word.end());
      for (std::size_t c = 0; c < idx.size(); ++c) {
        SparseVec res = mod.act_word(word, SparseVec{{slice.basis()[idx[c]], Q(1)}});
        auto it = res.find(Mono{});
        if (it != res.end()) s(r, c) = it->second;
      }
    }
    out.emplace(nu, std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

Q level_shift(const LieAlgebra& g, const Q& kappa) {
  Q s = kappa + g.dual_coxeter();
  if (is_zero(s)) fail(ErrorKind::CriticalLevel, "level is critical (kappa = -h^vee)");
  return s;
}

SparseVec sugawara_apply(const SingularModule& mod, int n, const SparseVec& v) {
  const LieAlgebra& g = mod.algebra();
  const Q pref = Q(1) / (2 * level_shift(g, mod.character().kappa));
  int kmax = 0;
  for (const auto& [m, c] : v) kmax = std::max(kmax, SingularModule::negative_degree(m));
  const int bound = mod.depth() + kmax + std::abs(n) + 1;
  SparseVec out;
  for (int j = -bound; j <= bound; ++j) {
    for (const auto& [a, b, c] : g.casimir_terms()) {
      Gen left{a, -j}, right{b, n + j};
      // Normal order puts elements of g[[z]] on the right.
      if (left.deg >= 0 && right.deg < 0) std::swap(left, right);
      add_to(out, mod.act(left, mod.act(right, v)), c * pref);
    }
  }
  return out;
}

std::optional<Q> sugawara_closed_form(const LieAlgebra& g, const SingularCharacter& chi, int n) {
  const int p = chi.p;
  if (n > 2 * (p - 1)) return Q(0);
  const Q pref = Q(1) / (2 * level_shift(g, chi.kappa));
  if (n >= p) {
    Q s(0);
    for (int j = 1 - p + n; j <= p - 1; ++j) s += g.cartan_form(chi.a(j), chi.a(n - j));
    return pref * s;
  }
  if (n == p - 1) {
    Q s(0);
    for (int j = 0; j <= p - 1; ++j) s += g.cartan_form(chi.a(j), chi.a(p - 1 - j));
    QVec rho(g.rank());
    for (int k = 0; k < g.rank(); ++k) {
      Q v(0);
      const auto& r = g.rho().values;
      for (int i = 0; i < g.rank(); ++i) v += r[i] * g.roots().cartan[k][i];
      rho[k] = v;
    }
    s += 2 * p * g.cartan_form(rho, chi.a(p - 1));
    return pref * s;
  }
  return std::nullopt;
}

EigenCheck sugawara_eigencheck(const SingularModule& mod, int n) {
  EigenCheck r;
  r.n = n;
  SparseVec res = sugawara_apply(mod, n, SparseVec{{Mono{}, Q(1)}});
  r.eigen = std::all_of(res.begin(), res.end(), [](const auto& kv) { return kv.first.empty(); });
  auto it = res.find(Mono{});
  r.computed = it == res.end() ? Q(0) : it->second;
  r.closed = sugawara_closed_form(mod.algebra(), mod.character(), n);
  r.pass = r.eigen && (!r.closed || *r.closed == r.computed);
  return r;
}

SparseVec sugawara_commutator_residual(const SingularModule& mod, const Gen& x, const Mono& v) {
  const SparseVec vv{{v, Q(1)}};
  SparseVec out = sugawara_apply(mod, -1, mod.act(x, vv));
  add_to(out, mod.act(x, sugawara_apply(mod, -1, vv)), Q(-1));
  add_to(out, mod.act(Gen{x.b, x.deg - 1}, vv), Q(x.deg));
  return out;
}

}  // namespace wildkz
