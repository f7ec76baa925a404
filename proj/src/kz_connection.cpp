// SPDX-License-Identifier: MIT
#include "wildkz/kz_connection.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "wildkz/errors.hpp"
#include "wildkz/singular_module.hpp"

namespace wildkz {

namespace {

Q binom_or_corrupt(int m, int l, const std::optional<Corruption>& corrupt) {
  Q b = binomial(m + l, l);
  if (corrupt && corrupt->m == m && corrupt->l == l) b += corrupt->delta;
  return b;
}

Q sign_pow(int e) { return (e % 2 == 0) ? Q(1) : Q(-1); }

}  // namespace

void check_distinct(const std::vector<Q>& t) {
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b)
      if (t[a] == t[b]) fail(ErrorKind::CoincidentTimes, "marked times must be pairwise distinct");
}

RMatrixValue r_matrix(const LieAlgebra& g, int p, const Q& t, const std::optional<Corruption>& corrupt) {
  if (p < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  if (is_zero(t)) fail(ErrorKind::ZeroTime, "r_p(t) has a pole at t = 0");
  CurrentTensor out = CurrentTensor::truncated(2, p);
  for (int m = 0; m < p; ++m)
    for (int l = 0; l < p; ++l)
      out.add(omega_ml(g, m, l), -sign_pow(m) * binom_or_corrupt(m, l, corrupt) * power(t, -1 - m - l));
  return {t, out};
}

RMatrixValue s_matrix(const LieAlgebra& g, int p, const Q& t) {
  if (p < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  CurrentTensor out = CurrentTensor::truncated(2, p);
  for (int m = 0; m < p; ++m)
    for (int l = 0; m + l + 1 < p; ++l) out.add(omega_ml(g, m, m + l + 1), binomial(m + l, l) * power(t, l));
  return {t, out};
}

CurrentTensor skew_residual(const LieAlgebra& g, int p, const Q& t) {
  CurrentTensor out = r_matrix(g, p, t).tensor;
  out.add(r_matrix(g, p, -t).tensor.swapped());
  return out;
}

CurrentTensor embedded_commutator(const LieAlgebra& g, int p, int n, const CurrentTensor& a, std::pair<int, int> sa,
                                  const CurrentTensor& b, std::pair<int, int> sb) {
  if (a.arity() != 2 || b.arity() != 2) fail(ErrorKind::InvalidArgument, "embedded commutator expects arity two");
  std::set<int> all{sa.first, sa.second, sb.first, sb.second};
  if (static_cast<int>(all.size()) != n || n != 3)
    fail(ErrorKind::InvalidArgument, "slot pairs must share one slot and cover three slots");
  if (*all.begin() < 0 || *all.rbegin() >= n) fail(ErrorKind::InvalidArgument, "slot out of range");
  const int shared = (sa.first == sb.first || sa.first == sb.second) ? sa.first : sa.second;
  const int a_other = sa.first == shared ? sa.second : sa.first;
  const int b_other = sb.first == shared ? sb.second : sb.first;
  const int a_shared_pos = sa.first == shared ? 0 : 1;
  const int b_shared_pos = sb.first == shared ? 0 : 1;

  CurrentTensor out = CurrentTensor::truncated(n, p);
  for (const auto& [fa, ca] : a.terms())
    for (const auto& [fb, cb] : b.terms()) {
      const Gen& xa = fa[a_shared_pos];
      const Gen& xb = fb[b_shared_pos];
      if (xa.deg + xb.deg >= p) continue;
      for (const auto& [gen, c] : bracket_generators(g, xa, xb).terms) {
        Factors f(n);
        f[shared] = gen;
        f[a_other] = fa[1 - a_shared_pos];
        f[b_other] = fb[1 - b_shared_pos];
        out.add(f, ca * cb * c);
      }
    }
  return out;
}

CurrentTensor cybe_residual(const LieAlgebra& g, int p, const Q& t1, const Q& t2, const Q& t3,
                            const std::optional<Corruption>& corrupt) {
  check_distinct({t1, t2, t3});
  const CurrentTensor r12 = r_matrix(g, p, t1 - t2, corrupt).tensor;
  const CurrentTensor r13 = r_matrix(g, p, t1 - t3, corrupt).tensor;
  const CurrentTensor r23 = r_matrix(g, p, t2 - t3, corrupt).tensor;
  CurrentTensor out = embedded_commutator(g, p, 3, r12, {0, 1}, r13, {0, 2});
  out.add(embedded_commutator(g, p, 3, r13, {0, 2}, r23, {1, 2}));
  out.add(embedded_commutator(g, p, 3, r12, {0, 1}, r23, {1, 2}));
  return out;
}

namespace {

void accumulate(std::map<std::pair<Gen, Gen>, Q>& acc, const Gen& x, const Gen& y, const Q& c) {
  if (is_zero(c)) return;
  auto [it, fresh] = acc.emplace(std::make_pair(x, y), c);
  if (!fresh) {
    it->second += c;
    if (is_zero(it->second)) acc.erase(it);
  }
}

void accumulate(std::map<Gen, Q>& acc, const Gen& x, const Q& c) {
  if (is_zero(c)) return;
  auto [it, fresh] = acc.emplace(x, c);
  if (!fresh) {
    it->second += c;
    if (is_zero(it->second)) acc.erase(it);
  }
}

}  // namespace

EquivarianceResidual g_equivariance_residual(const LieAlgebra& g, int i, int j, int m, int l, int x, int n) {
  if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::InvalidArgument, "slot out of range");
  if (m < 0 || l < 0) fail(ErrorKind::InvalidArgument, "degrees must be nonnegative");
  if (x < 0 || x >= g.dim()) fail(ErrorKind::InvalidArgument, "basis index out of range");
  const Gen gx{x, 0};
  EquivarianceResidual out;
  // Word Y1 Y2 in slot order (i, j); when i == j it is a product in U and is
  // put in PBW order.
  auto add_word = [&](const Gen& y1, const Gen& y2, const Q& c) {
    if (i != j || y1 <= y2) {
      accumulate(out.quadratic, y1, y2, c);
      return;
    }
    accumulate(out.quadratic, y2, y1, c);
    const GenBracket br = bracket_generators(g, y1, y2);
    for (const auto& [gen, d] : br.terms) accumulate(out.linear, gen, c * d);
  };
  for (const auto& [a, b, c] : g.casimir_terms()) {
    const Gen ga{a, m}, gb{b, l};
    // A [B, X] + [A, X] B.
    for (const auto& [gen, d] : bracket_generators(g, gb, gx).terms) add_word(ga, gen, c * d);
    for (const auto& [gen, d] : bracket_generators(g, ga, gx).terms) add_word(gen, gb, c * d);
  }
  return out;
}

Q Coef::eval(const std::vector<Q>& t) const {
  switch (kind) {
    case Kind::Const:
      return c;
    case Kind::Pair: {
      Q d = t.at(i) - t.at(j);
      if (is_zero(d) && e < 0) fail(ErrorKind::CoincidentTimes, "marked times must be pairwise distinct");
      return c * power(d, e);
    }
    case Kind::Power:
      return e == 0 ? c : c * power(t.at(i), e);
  }
  return c;
}

std::complex<double> Coef::eval(const std::vector<std::complex<double>>& t) const {
  const double cd = c.get_d();
  switch (kind) {
    case Kind::Const:
      return cd;
    case Kind::Pair: {
      std::complex<double> d = t.at(i) - t.at(j);
      if (d == 0.0 && e < 0) fail(ErrorKind::CoincidentTimes, "marked times must be pairwise distinct");
      return cd * std::pow(d, e);
    }
    case Kind::Power:
      return e == 0 ? std::complex<double>(cd) : cd * std::pow(t.at(i), e);
  }
  return cd;
}

std::optional<Coef> Coef::derivative(int k) const {
  if (kind == Kind::Const || e == 0) return std::nullopt;
  Coef out = *this;
  out.e = e - 1;
  if (kind == Kind::Pair) {
    if (k == i)
      out.c = c * e;
    else if (k == j)
      out.c = -c * e;
    else
      return std::nullopt;
    return out;
  }
  if (k != i) return std::nullopt;
  out.c = c * e;
  return out;
}

ConnectionData::ConnectionData(const LieAlgebra& g, ConnectionSpec spec) : g_(&g), spec_(std::move(spec)) {
  shift_ = level_shift(g, spec_.kappa);
  const int n = num_points();
  if (n < 1) fail(ErrorKind::InvalidArgument, "at least one marked point is required");
  for (int r : spec_.depths)
    if (r < 1) fail(ErrorKind::InvalidArgument, "depths must be positive");
  if (spec_.infinity && *spec_.infinity < 1) fail(ErrorKind::InvalidArgument, "depth at infinity must be positive");
  if (spec_.infinity && spec_.dynamical)
    fail(ErrorKind::InvalidArgument, "the dynamical term replaces the module at infinity");
  if (spec_.dynamical && static_cast<int>(spec_.dynamical->size()) != g.rank())
    fail(ErrorKind::Schema, "mu must have one entry per Cartan generator");
  const Q inv = Q(1) / shift_;
  ham_.resize(n);
  dil_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int ri = spec_.depths[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int m = 0; m < ri; ++m)
        for (int l = 0; l < spec_.depths[j]; ++l) {
          const int op = intern(QuadOp{i, j, m, l});
          const Q b = binom_or_corrupt(m, l, spec_.corrupt);
          ham_[i].push_back({Coef{Coef::Kind::Pair, i, j, -1 - m - l, -inv * sign_pow(m) * b}, op, "finite"});
          dil_[i].push_back({Coef{Coef::Kind::Pair, i, j, -m - l, -inv * sign_pow(m) * binomial(m + l, l)}, op, "dilation"});
        }
    }
    if (spec_.infinity) {
      for (int m = 0; m < ri; ++m)
        for (int l = 0; m + l + 1 < *spec_.infinity; ++l) {
          const int op = intern(QuadOp{i, n, m, m + l + 1});
          ham_[i].push_back({Coef{Coef::Kind::Power, i, 0, l, inv * binomial(m + l, l)}, op, "infinity"});
        }
    }
    if (spec_.dynamical) {
      const int op = intern(CartanOp{i, g.cartan_dual_element(*spec_.dynamical)});
      ham_[i].push_back({Coef{Coef::Kind::Const, 0, 0, 0, inv}, op, "dynamical"});
    }
  }
}

int ConnectionData::intern(const Op& op) {
  auto it = std::find(ops_.begin(), ops_.end(), op);
  if (it != ops_.end()) return static_cast<int>(it - ops_.begin());
  ops_.push_back(op);
  return static_cast<int>(ops_.size()) - 1;
}

const std::vector<HamiltonianTerm>& ConnectionData::dilation(int i) const {
  if ((spec_.infinity && *spec_.infinity > 1) || spec_.dynamical)
    fail(ErrorKind::InvalidArgument, "the dilation action needs a tame module at infinity");
  return dil_.at(i);
}

std::map<std::string, Q> derivative_residual(const ConnectionData& data, int i, int j) {
  std::map<std::string, Q> acc;
  auto add = [&](const HamiltonianTerm& term, int k, const Q& sign) {
    auto d = term.coef.derivative(k);
    if (!d) return;
    Coef c = *d;
    Op op = data.ops()[term.op];
    // Canonical form: pair coefficients with i < j, quadratic operators with a < b.
    if (c.kind == Coef::Kind::Pair && c.i > c.j) {
      std::swap(c.i, c.j);
      c.c *= sign_pow(c.e);
    }
    if (auto* q = std::get_if<QuadOp>(&op); q && q->a > q->b) {
      std::swap(q->a, q->b);
      std::swap(q->m, q->l);
    }
    std::ostringstream key;
    key << static_cast<int>(c.kind) << ':' << c.i << ':' << c.j << ':' << c.e << '|';
    if (const auto* q = std::get_if<QuadOp>(&op))
      key << "Q" << q->a << ',' << q->b << ',' << q->m << ',' << q->l;
    else
      key << "H" << std::get<CartanOp>(op).slot;
    auto [it, fresh] = acc.emplace(key.str(), sign * c.c);
    if (!fresh) {
      it->second += sign * c.c;
      if (is_zero(it->second)) acc.erase(it);
    }
  };
  for (const auto& term : data.hamiltonian(j)) add(term, i, Q(1));
  for (const auto& term : data.hamiltonian(i)) add(term, j, Q(-1));
  return acc;
}

QMatrix op_matrix(const LieAlgebra& g, const TensorSpace& space, const TensorSpace::Block& block, const Op& op) {
  std::vector<std::pair<std::vector<std::pair<int, Gen>>, Q>> words;
  if (const auto* q = std::get_if<QuadOp>(&op)) {
    for (const auto& [a, b, c] : g.casimir_terms()) {
      std::pair<int, Gen> left{q->a, Gen{a, q->m}}, right{q->b, Gen{b, q->l}};
      // Distinct slots commute; acting with the depth-lowering factor first
      // keeps intermediate tensors inside the slot slices.
      if (q->a != q->b && g.kind(b) != BasisKind::E && g.kind(a) == BasisKind::E) std::swap(left, right);
      words.push_back({{left, right}, c});
    }
  } else {
    const auto& h = std::get<CartanOp>(op);
    for (int k = 0; k < g.rank(); ++k)
      if (!is_zero(h.h[k])) words.push_back({{{h.slot, Gen{g.h_index(k), 0}}}, h.h[k]});
  }
  return space.word_matrix(block, block, words);
}

OperatorFamily::OperatorFamily(const ConnectionData& data, std::vector<QMatrix> matrices)
    : data_(&data), mats_(std::move(matrices)) {
  if (mats_.size() != data.ops().size()) fail(ErrorKind::InvalidArgument, "one matrix per operator is required");
  dim_ = mats_.empty() ? 0 : mats_.front().rows();
  fmats_.reserve(mats_.size());
  for (const auto& m : mats_) {
    std::vector<std::complex<double>> f(dim_ * dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) f[r * dim_ + c] = m(r, c).get_d();
    fmats_.push_back(std::move(f));
  }
}

OperatorFamily OperatorFamily::on_block(const ConnectionData& data, const TensorSpace& space,
                                        const TensorSpace::Block& block) {
  std::vector<QMatrix> mats;
  mats.reserve(data.ops().size());
  for (const auto& op : data.ops()) mats.push_back(op_matrix(data.algebra(), space, block, op));
  OperatorFamily fam(data, std::move(mats));
  fam.dim_ = block.dim();
  return fam;
}

ConnectionOperator OperatorFamily::evaluate(const std::vector<HamiltonianTerm>& terms, int i,
                                            const std::vector<Q>& t) const {
  if (static_cast<int>(t.size()) != data_->num_points())
    fail(ErrorKind::InvalidArgument, "one time per finite marked point is required");
  check_distinct(t);
  ConnectionOperator out{t, i, QMatrix(dim_, dim_), {}};
  std::set<std::string> sources;
  for (const auto& term : terms) {
    out.matrix.add_scaled(mats_[term.op], term.coef.eval(t));
    sources.insert(term.source);
  }
  out.provenance.assign(sources.begin(), sources.end());
  return out;
}

ConnectionOperator OperatorFamily::hamiltonian(int i, const std::vector<Q>& t) const {
  return evaluate(data_->hamiltonian(i), i, t);
}

ConnectionOperator OperatorFamily::dilation(int i, const std::vector<Q>& t) const {
  return evaluate(data_->dilation(i), i, t);
}

QMatrix OperatorFamily::flatness_residual(int i, int j, const std::vector<Q>& t) const {
  if (i == j) fail(ErrorKind::InvalidArgument, "flatness residual needs two distinct slots");
  return commutator(hamiltonian(i, t).matrix, hamiltonian(j, t).matrix);
}

std::vector<std::complex<double>> OperatorFamily::evaluate_float(const std::vector<HamiltonianTerm>& terms,
                                                                 const std::vector<std::complex<double>>& t) const {
  std::vector<std::complex<double>> out(dim_ * dim_);
  for (const auto& term : terms) {
    const std::complex<double> c = term.coef.eval(t);
    const auto& m = fmats_[term.op];
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * m[k];
  }
  return out;
}

std::vector<std::complex<double>> OperatorFamily::hamiltonian_float(int i,
                                                                    const std::vector<std::complex<double>>& t) const {
  return evaluate_float(data_->hamiltonian(i), t);
}

std::vector<std::complex<double>> OperatorFamily::dilation_float(int i,
                                                                 const std::vector<std::complex<double>>& t) const {
  return evaluate_float(data_->dilation(i), t);
}

}  // namespace wildkz
