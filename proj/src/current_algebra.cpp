// SPDX-License-Identifier: MIT
#include "wildkz/current_algebra.hpp"

#include <algorithm>

#include "wildkz/errors.hpp"

namespace wildkz {

CurrentTensor::CurrentTensor(int arity, int lo, int hi, WindowMode mode)
    : arity_(arity), lo_(lo), hi_(hi), mode_(mode), central_(0) {
  if (arity < 1) fail(ErrorKind::InvalidArgument, "tensor arity must be positive");
  if (lo > hi) fail(ErrorKind::InvalidArgument, "empty degree window");
}

void CurrentTensor::add(const Factors& f, const Q& c) {
  if (static_cast<int>(f.size()) != arity_) fail(ErrorKind::InvalidArgument, "factor count does not match arity");
  if (wildkz::is_zero(c)) return;
  for (const auto& x : f) {
    if (x.deg >= lo_ && x.deg <= hi_) continue;
    if (mode_ == WindowMode::Truncate) return;
    lo_ = std::min(lo_, x.deg);
    hi_ = std::max(hi_, x.deg);
  }
  auto [it, fresh] = terms_.emplace(f, c);
  if (!fresh) {
    it->second += c;
    if (wildkz::is_zero(it->second)) terms_.erase(it);
  }
}

void CurrentTensor::add_central(const Q& c) {
  if (arity_ != 1) fail(ErrorKind::InvalidArgument, "central term only exists in arity one");
  central_ += c;
}

void CurrentTensor::add(const CurrentTensor& other, const Q& scale) {
  if (other.arity_ != arity_) fail(ErrorKind::InvalidArgument, "arity mismatch in tensor sum");
  for (const auto& [f, c] : other.terms_) add(f, c * scale);
  if (!wildkz::is_zero(other.central_)) central_ += other.central_ * scale;
}

CurrentTensor CurrentTensor::scaled(const Q& s) const {
  CurrentTensor out(arity_, lo_, hi_, mode_);
  out.add(*this, s);
  return out;
}

CurrentTensor CurrentTensor::swapped() const {
  CurrentTensor out(arity_, lo_, hi_, mode_);
  for (const auto& [f, c] : terms_) {
    Factors r(f.rbegin(), f.rend());
    out.add(r, c);
  }
  out.central_ = central_;
  return out;
}

CurrentTensor single(const Gen& g, const Q& c, int lo, int hi, WindowMode mode) {
  CurrentTensor t(1, lo, hi, mode);
  t.add({g}, c);
  return t;
}

GenBracket bracket_generators(const LieAlgebra& g, const Gen& x, const Gen& y) {
  GenBracket out;
  for (const auto& [k, c] : g.bracket_basis(x.b, y.b)) out.terms.push_back({Gen{k, x.deg + y.deg}, c});
  // Res(z^b d z^a) = a when a + b = 0.
  if (x.deg + y.deg == 0 && x.deg != 0) out.central = Q(x.deg) * g.gram()(x.b, y.b);
  return out;
}

CurrentTensor truncated_bracket(const LieAlgebra& g, const CurrentTensor& x, const CurrentTensor& y, int p) {
  if (x.arity() != 1 || y.arity() != 1) fail(ErrorKind::InvalidArgument, "bracket needs arity-one elements");
  CurrentTensor out = CurrentTensor::truncated(1, p);
  for (const auto& [fx, cx] : x.terms())
    for (const auto& [fy, cy] : y.terms()) {
      if (fx[0].deg < 0 || fy[0].deg < 0) fail(ErrorKind::InvalidArgument, "negative degree in g_p bracket");
      for (const auto& [gen, c] : bracket_generators(g, fx[0], fy[0]).terms) out.add({gen}, cx * cy * c);
    }
  return out;
}

CurrentTensor affine_bracket(const LieAlgebra& g, const CurrentTensor& x, const CurrentTensor& y) {
  if (x.arity() != 1 || y.arity() != 1) fail(ErrorKind::InvalidArgument, "bracket needs arity-one elements");
  CurrentTensor out(1, std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi()), WindowMode::Widen);
  for (const auto& [fx, cx] : x.terms())
    for (const auto& [fy, cy] : y.terms()) {
      GenBracket br = bracket_generators(g, fx[0], fy[0]);
      for (const auto& [gen, c] : br.terms) out.add({gen}, cx * cy * c);
      if (!is_zero(br.central)) out.add_central(cx * cy * br.central);
    }
  return out;
}

CurrentTensor omega_ml(const LieAlgebra& g, int m, int l) {
  CurrentTensor out(2, std::min(m, l), std::max(m, l), WindowMode::Widen);
  for (const auto& [a, b, c] : g.casimir_terms()) out.add({Gen{a, m}, Gen{b, l}}, c);
  return out;
}

CurrentTensor casimir_tensor(const LieAlgebra& g) { return omega_ml(g, 0, 0); }

SlotOperator embed(const CurrentTensor& t, const SlotEmbedding& e) {
  if (t.arity() != 2) fail(ErrorKind::InvalidArgument, "embedding expects an arity-two tensor");
  if (e.i < 0 || e.j < 0 || e.i >= e.n || e.j >= e.n) fail(ErrorKind::InvalidArgument, "slot out of range");
  SlotOperator op;
  op.n = e.n;
  for (const auto& [f, c] : t.terms()) op.words.push_back({{{e.i, f[0]}, {e.j, f[1]}}, c});
  return op;
}

nlohmann::json tensor_to_json(const CurrentTensor& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [f, c] : t.terms()) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& x : f) factors.push_back({x.b, x.deg});
    out.push_back({{"factors", factors}, {"coeff", to_string(c)}});
  }
  return out;
}

CurrentTensor tensor_from_json(const nlohmann::json& j, int arity, int lo, int hi, WindowMode mode) {
  CurrentTensor out(arity, lo, hi, mode);
  if (!j.is_array()) fail(ErrorKind::Schema, "tensor must be a JSON array");
  for (const auto& term : j) {
    if (!term.contains("factors") || !term.contains("coeff")) fail(ErrorKind::Schema, "tensor term needs factors and coeff");
    Factors f;
    for (const auto& x : term.at("factors")) {
      if (!x.is_array() || x.size() != 2) fail(ErrorKind::Schema, "factor must be [basis_index, z_degree]");
      f.push_back(Gen{x[0].get<int>(), x[1].get<int>()});
    }
    out.add(f, parse_rational(term.at("coeff").get<std::string>()));
  }
  return out;
}

}  // namespace wildkz
