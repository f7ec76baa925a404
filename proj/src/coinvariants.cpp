// SPDX-License-Identifier: MIT
#include "wildkz/coinvariants.hpp"

#include <cmath>

#include "wildkz/errors.hpp"

namespace wildkz {

using nlohmann::json;

InfinityMode parse_infinity_mode(const std::string& s) {
  if (s == "tame") return InfinityMode::Tame;
  if (s == "singular") return InfinityMode::Singular;
  if (s == "dual") return InfinityMode::Dual;
  if (s == "contragredient") return InfinityMode::Contragredient;
  if (s == "dynamical") return InfinityMode::Dynamical;
  if (s == "restricted") return InfinityMode::Restricted;
  fail(ErrorKind::Schema, "unknown infinity mode '" + s + "'");
}

std::string infinity_mode_name(InfinityMode m) {
  switch (m) {
    case InfinityMode::Tame: return "tame";
    case InfinityMode::Singular: return "singular";
    case InfinityMode::Dual: return "dual";
    case InfinityMode::Contragredient: return "contragredient";
    case InfinityMode::Dynamical: return "dynamical";
    case InfinityMode::Restricted: return "restricted";
  }
  return "tame";
}

std::vector<int> MarkedConfiguration::depths() const {
  std::vector<int> out;
  for (const auto& pt : points) out.push_back(pt.chi.p);
  return out;
}

std::vector<Q> MarkedConfiguration::exact_times() const {
  std::vector<Q> out;
  for (const auto& pt : points) {
    if (!pt.exact) fail(ErrorKind::Schema, "exact computations need rational times");
    out.push_back(*pt.exact);
  }
  return out;
}

std::vector<Q> MarkedConfiguration::exact_times_or_default() const {
  std::vector<Q> out;
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back(points[i].exact ? *points[i].exact : Q(static_cast<long>(i)));
  return out;
}

std::vector<std::complex<double>> MarkedConfiguration::float_times() const {
  std::vector<std::complex<double>> out;
  for (const auto& pt : points) out.push_back(pt.t);
  return out;
}

void MarkedConfiguration::validate(const LieAlgebra& g) const {
  if (points.empty()) fail(ErrorKind::Schema, "at least one marked point is required");
  if (height < 0 || neg_degree < 0) fail(ErrorKind::Schema, "truncation cutoffs must be nonnegative");
  for (const auto& pt : points) pt.chi.validate(g);
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b)
      if (points[a].t == points[b].t) fail(ErrorKind::CoincidentTimes, "marked times must be pairwise distinct");
  infinity.chi.validate(g);
  const bool tame_only = infinity.mode != InfinityMode::Singular;
  if (tame_only && infinity.chi.p != 1)
    fail(ErrorKind::Schema, "only the singular infinity mode accepts a wild character");
  if (infinity.mode == InfinityMode::Dynamical) {
    if (!infinity.mu) fail(ErrorKind::Schema, "dynamical infinity needs mu");
    if (static_cast<int>(infinity.mu->size()) != g.rank()) fail(ErrorKind::Schema, "mu needs one entry per Cartan generator");
  }
}

Q parse_level(const std::string& s) {
  static const char* sentinels[] = {"-hv", "-h^v", "-h^vee", "−h∨", "-h∨", "−hv", "−h^v"};
  for (const char* x : sentinels)
    if (s == x) fail(ErrorKind::CriticalLevel, "level '" + s + "' is the critical level");
  return parse_rational(s);
}

namespace {

Q rational_value(const json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Q(v.get<long>());
  fail(ErrorKind::Schema, std::string(what) + " must be a \"p/q\" string or an integer");
}

QVec rational_list(const json& v, const char* what) {
  if (!v.is_array()) fail(ErrorKind::Schema, std::string(what) + " must be an array");
  QVec out;
  for (const auto& x : v) out.push_back(rational_value(x, what));
  return out;
}

SingularCharacter character_from(const json& j, int rank, const Q& kappa, int default_depth) {
  SingularCharacter chi;
  chi.kappa = kappa;
  chi.lambda = j.contains("lambda") ? rational_list(j.at("lambda"), "lambda") : QVec(rank);
  if (j.contains("q")) {
    if (!j.at("q").is_array()) fail(ErrorKind::Schema, "q must be an array of weights");
    for (const auto& a : j.at("q")) chi.q.push_back(rational_list(a, "q"));
  }
  chi.p = j.contains("depth") ? j.at("depth").get<int>() : std::max<int>(default_depth, static_cast<int>(chi.q.size()) + 1);
  // Missing wild coefficients default to zero.
  while (static_cast<int>(chi.q.size()) < chi.p - 1) chi.q.push_back(QVec(rank));
  return chi;
}

json rational_json(const QVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json character_json(const SingularCharacter& chi) {
  json q = json::array();
  for (const auto& a : chi.q) q.push_back(rational_json(a));
  return {{"depth", chi.p}, {"lambda", rational_json(chi.lambda)}, {"q", q}};
}

}  // namespace

MarkedConfiguration parse_configuration(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Schema, "configuration must be a JSON object");
  MarkedConfiguration c;
  try {
    if (j.contains("algebra")) {
      const auto& a = j.at("algebra");
      if (a.is_string()) {
        const std::string s = a.get<std::string>();
        if (s.size() < 2 || s[0] != 'A') fail(ErrorKind::Schema, "algebra must be of type A");
        c.rank = std::stoi(s.substr(1));
      } else {
        if (a.value("type", std::string("A")) != "A") fail(ErrorKind::Schema, "algebra must be of type A");
        c.rank = a.at("rank").get<int>();
      }
    }
    if (c.rank < 1) fail(ErrorKind::Schema, "rank must be positive");
    if (!j.contains("kappa")) fail(ErrorKind::Schema, "kappa is required");
    c.kappa = j.at("kappa").is_string() ? parse_level(j.at("kappa").get<std::string>()) : rational_value(j.at("kappa"), "kappa");
    if (!j.contains("points") || !j.at("points").is_array()) fail(ErrorKind::Schema, "points must be an array");
    for (const auto& pj : j.at("points")) {
      MarkedPoint pt;
      if (!pj.contains("t")) fail(ErrorKind::Schema, "every point needs a time t");
      const auto& t = pj.at("t");
      if (t.is_array()) {
        if (t.size() != 2 || !t[0].is_number() || !t[1].is_number()) fail(ErrorKind::Schema, "complex time must be [re, im]");
        pt.t = {t[0].get<double>(), t[1].get<double>()};
      } else {
        pt.exact = rational_value(t, "t");
        pt.t = pt.exact->get_d();
      }
      pt.chi = character_from(pj, c.rank, c.kappa, 1);
      c.points.push_back(std::move(pt));
    }
    const json inf = j.value("infinity", json::object());
    c.infinity.mode = parse_infinity_mode(inf.value("mode", std::string("tame")));
    c.infinity.chi = character_from(inf, c.rank, c.kappa, 1);
    if (inf.contains("mu")) c.infinity.mu = rational_list(inf.at("mu"), "mu");
    if (j.contains("truncation")) {
      const auto& tr = j.at("truncation");
      c.height = tr.value("height", c.height);
      c.neg_degree = tr.value("negative_degree", c.neg_degree);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, std::string("malformed configuration: ") + e.what());
  }
  return c;
}

json configuration_to_json(const MarkedConfiguration& c) {
  json pts = json::array();
  for (const auto& pt : c.points) {
    json p = character_json(pt.chi);
    if (pt.exact)
      p["t"] = to_string(*pt.exact);
    else
      p["t"] = {pt.t.real(), pt.t.imag()};
    pts.push_back(p);
  }
  json inf = character_json(c.infinity.chi);
  inf["mode"] = infinity_mode_name(c.infinity.mode);
  if (c.infinity.mu) inf["mu"] = rational_json(*c.infinity.mu);
  return {{"algebra", {{"type", "A"}, {"rank", c.rank}}},
          {"kappa", to_string(c.kappa)},
          {"points", pts},
          {"infinity", inf},
          {"truncation", {{"height", c.height}, {"negative_degree", c.neg_degree}}}};
}

std::optional<RootVec> to_positive_root_coords(const LieAlgebra& g, const QVec& h_values) {
  const int r = g.rank();
  QMatrix m(r, r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) m(k, i) = g.root_on_cartan(g.roots().simple_roots[i], k);
  const QVec nu = inverse(m).apply(h_values);
  RootVec out;
  for (const auto& x : nu) {
    if (x.get_den() != 1 || sgn(x) < 0) return std::nullopt;
    out.push_back(static_cast<int>(x.get_num().get_si()));
  }
  return out;
}

ConfigurationModel::ConfigurationModel(const LieAlgebra& g, MarkedConfiguration cfg) : g_(&g), cfg_(std::move(cfg)) {
  if (cfg_.rank != g.rank()) fail(ErrorKind::Schema, "configuration rank does not match the algebra");
  cfg_.validate(g);
  const InfinityMode mode = cfg_.infinity.mode;
  inf_slot_ = mode == InfinityMode::Tame || mode == InfinityMode::Singular;
  for (const auto& pt : cfg_.points) mods_.push_back(std::make_unique<SingularModule>(g, pt.chi));
  if (inf_slot_) mods_.push_back(std::make_unique<SingularModule>(g, cfg_.infinity.chi));
  slices_.reserve(mods_.size());
  for (const auto& m : mods_) slices_.push_back(ModuleSlice::finite(*m, cfg_.height));
  std::vector<const ModuleSlice*> ptrs;
  for (const auto& s : slices_) ptrs.push_back(&s);
  space_ = std::make_unique<TensorSpace>(ptrs);

  QVec sum(g.rank());
  for (const auto& pt : cfg_.points)
    for (int k = 0; k < g.rank(); ++k) sum[k] += pt.chi.lambda[k];
  for (int k = 0; k < g.rank(); ++k) sum[k] += cfg_.infinity.chi.lambda[k];
  total_ = to_positive_root_coords(g, sum);

  ConnectionSpec spec;
  spec.depths = cfg_.depths();
  spec.kappa = cfg_.kappa;
  if (inf_slot_) spec.infinity = cfg_.infinity.chi.p;
  if (mode == InfinityMode::Dynamical) spec.dynamical = cfg_.infinity.mu;
  conn_ = std::make_unique<ConnectionData>(g, spec);
}

std::string ConfigurationModel::label(const TensorIndex& idx) const {
  std::string out;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (j) out += " ⊗ ";
    out += mono_label(*g_, space_->slot(j).basis()[idx[j]]);
  }
  return out;
}

BlockSpace::BlockSpace(TensorSpace::Block ambient, RowSpace relations, std::vector<std::string> labels)
    : ambient_(std::move(ambient)), relations_(std::move(relations)), labels_(std::move(labels)) {
  free_ = relations_.free_columns();
}

std::vector<std::string> BlockSpace::basis_labels() const {
  std::vector<std::string> out;
  for (auto c : free_) out.push_back(labels_.at(c));
  return out;
}

QVec BlockSpace::project(const QVec& v) const {
  if (v.size() != ambient_dim()) fail(ErrorKind::InvalidArgument, "vector does not live on the ambient slice");
  const QVec r = relations_.reduce(v);
  QVec out(free_.size());
  for (std::size_t q = 0; q < free_.size(); ++q) out[q] = r[free_[q]];
  return out;
}

QVec BlockSpace::section(const QVec& u) const {
  if (u.size() != dim()) fail(ErrorKind::InvalidArgument, "vector does not live on the quotient");
  QVec out(ambient_dim());
  for (std::size_t q = 0; q < free_.size(); ++q) out[free_[q]] = u[q];
  return out;
}

TensorSpace::Block tensor_weight_slice(const ConfigurationModel& model, const RootVec& total) {
  return model.space().block(total);
}

namespace {

void insert_images(RowSpace& rel, const TensorSpace& space, const TensorSpace::Block& from,
                   const TensorSpace::Block& to, int basis) {
  std::vector<std::pair<std::vector<std::pair<int, Gen>>, Q>> words;
  for (std::size_t k = 0; k < space.arity(); ++k) words.push_back({{{static_cast<int>(k), Gen{basis, 0}}}, Q(1)});
  for (std::size_t c = 0; c < from.dim(); ++c) {
    SparseTensor acc;
    for (const auto& [w, coeff] : words) add_to(acc, space.apply_word(w, TensorSpace::unit(from.basis[c])), coeff);
    rel.insert(space.to_coords(to, acc));
  }
}

}  // namespace

BlockSpace compute_coinvariants(const ConfigurationModel& model) {
  const auto& cfg = model.config();
  const LieAlgebra& g = model.algebra();
  const RootSystem& rs = g.roots();
  const InfinityMode mode = cfg.infinity.mode;
  if (mode == InfinityMode::Dual)
    fail(ErrorKind::InvalidArgument,
         "the plain theta-dual at infinity has infinite-dimensional weight slices; use contragredient");
  if (!model.lambda_total()) return BlockSpace(TensorSpace::Block{}, RowSpace(0), {});
  const RootVec& n0 = *model.lambda_total();
  const bool plain = model.infinity_is_slot();
  const int need = rs.height(n0) + (plain ? rs.height(rs.highest_root()) : 0);
  if (cfg.height < need)
    fail(ErrorKind::CutoffTooSmall, "height cutoff " + std::to_string(cfg.height) + " is below the required " +
                                        std::to_string(need));
  const TensorSpace& space = model.space();
  TensorSpace::Block amb = space.block(n0);
  RowSpace rel(amb.dim());
  if (plain || mode == InfinityMode::Contragredient) {
    for (int a = 0; a < g.num_positive(); ++a) {
      const RootVec& beta = rs.positive_roots[a];
      RootVec lower = n0, upper = n0;
      bool nonneg = true;
      for (std::size_t k = 0; k < beta.size(); ++k) {
        lower[k] -= beta[k];
        upper[k] += beta[k];
        nonneg = nonneg && lower[k] >= 0;
      }
      if (nonneg) insert_images(rel, space, space.block(lower), amb, g.f_index(a));
      if (plain) insert_images(rel, space, space.block(upper), amb, g.e_index(a));
    }
  }
  std::vector<std::string> labels;
  for (const auto& idx : amb.basis) labels.push_back(model.label(idx));
  return BlockSpace(std::move(amb), std::move(rel), std::move(labels));
}

QMatrix reduce_operator(const QMatrix& op, const BlockSpace& space) {
  if (op.rows() != space.ambient_dim() || op.cols() != space.ambient_dim())
    fail(ErrorKind::InvalidArgument, "operator does not act on the ambient slice");
  for (const auto& row : space.relations().rows())
    if (!space.relations().contains(op.apply(row)))
      fail(ErrorKind::NonInvariant, "operator does not preserve the relation subspace");
  const auto& free = space.free_columns();
  QMatrix out(free.size(), free.size());
  for (std::size_t c = 0; c < free.size(); ++c) {
    QVec e(space.ambient_dim());
    e[free[c]] = 1;
    const QVec img = space.project(op.apply(e));
    for (std::size_t r = 0; r < free.size(); ++r) out(r, c) = img[r];
  }
  return out;
}

OperatorFamily reduce_family(const OperatorFamily& family, const BlockSpace& space) {
  std::vector<QMatrix> mats;
  for (const auto& m : family.matrices()) mats.push_back(reduce_operator(m, space));
  if (mats.empty()) fail(ErrorKind::InvalidArgument, "empty operator family");
  return OperatorFamily(family.data(), std::move(mats));
}

OperatorFamily ambient_family(const ConfigurationModel& model, const BlockSpace& space) {
  return OperatorFamily::on_block(model.connection(), model.space(), space.ambient());
}

Q pole_expansion_finite(int m, int l, const Q& ti, const Q& tj) {
  if (ti == tj) fail(ErrorKind::CoincidentTimes, "pole expansion at a coincident point");
  return binomial(m + l - 1, l) / (power(ti - tj, l) * power(tj - ti, m));
}

Q pole_expansion_infinity(int m, int l, const Q& ti) { return binomial(m + l - 1, l) * power(ti, l); }

ResidueReport residue_identity_check(const ConfigurationModel& model, int i, const TensorIndex& witness,
                                     const std::vector<Q>& t) {
  const auto& cfg = model.config();
  const int n = static_cast<int>(cfg.points.size());
  if (i < 0 || i >= n) fail(ErrorKind::InvalidArgument, "slot out of range");
  if (cfg.infinity.mode == InfinityMode::Dynamical || cfg.infinity.mode == InfinityMode::Dual)
    fail(ErrorKind::InvalidArgument, "the residue check needs a singular module or a tame dual at infinity");
  const TensorSpace& space = model.space();
  if (witness.size() != space.arity()) fail(ErrorKind::InvalidArgument, "witness arity mismatch");
  if (static_cast<int>(t.size()) != n) fail(ErrorKind::InvalidArgument, "one time per finite point is required");
  check_distinct(t);
  const ModuleSlice& si = space.slot(i);
  const SparseVec lv = sugawara_apply(model.module(i), -1, SparseVec{{si.basis()[witness[i]], Q(1)}});

  SparseTensor direct;
  for (const auto& [mono, c] : lv) {
    TensorIndex base = witness;
    if (mono.empty() || mono.front().deg >= 0) {
      base[i] = si.index_of(mono);
      if (base[i] < 0) fail(ErrorKind::TruncationExceeded, "L_{-1} image leaves the slot slice");
      add_to(direct, TensorSpace::unit(base), c);
      continue;
    }
    const Gen y = mono.front();
    const Mono rest(mono.begin() + 1, mono.end());
    if (!rest.empty() && rest.front().deg < 0) fail(ErrorKind::TruncationExceeded, "two negative modes at one slot");
    base[i] = si.index_of(rest);
    if (base[i] < 0) fail(ErrorKind::TruncationExceeded, "L_{-1} image leaves the slot slice");
    const int m = -y.deg;
    const SparseTensor u = TensorSpace::unit(base);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int l = 0; l < cfg.points[j].chi.p; ++l)
        add_to(direct, space.apply(j, Gen{y.b, l}, u), -c * pole_expansion_finite(m, l, t[i], t[j]));
    }
    if (model.infinity_is_slot())
      for (int l = 0; m + l < cfg.infinity.chi.p; ++l)
        add_to(direct, space.apply(model.infinity_slot(), Gen{y.b, m + l}, u), -c * pole_expansion_infinity(m, l, t[i]));
  }

  RootVec total(model.algebra().rank(), 0);
  for (std::size_t j = 0; j < witness.size(); ++j) {
    const RootVec& nu = space.slot(j).depth_of_index(witness[j]);
    for (std::size_t k = 0; k < nu.size(); ++k) total[k] += nu[k];
  }
  const TensorSpace::Block block = space.block(total);
  const OperatorFamily fam = OperatorFamily::on_block(model.connection(), space, block);
  ResidueReport rep;
  rep.direct = space.to_coords(block, direct);
  rep.hamiltonian = fam.hamiltonian(i, t).matrix.apply(space.to_coords(block, TensorSpace::unit(witness)));
  for (auto& x : rep.hamiltonian) x = -x;
  rep.equal = rep.direct == rep.hamiltonian;
  rep.equal_mod_relations = rep.equal;
  if (!rep.equal && model.lambda_total() && *model.lambda_total() == total &&
      model.config().infinity.mode != InfinityMode::Restricted) {
    const BlockSpace bs = compute_coinvariants(model);
    QVec diff = rep.direct;
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= rep.hamiltonian[k];
    rep.equal_mod_relations = bs.is_zero_class(diff);
  }
  return rep;
}

}  // namespace wildkz
