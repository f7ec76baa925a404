// SPDX-License-Identifier: MIT
#include "report.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "wildkz/errors.hpp"
#include "wildkz/transport.hpp"
#include "wildkz/weight_combinatorics.hpp"

namespace wildkz::cli {

json matrix_json(const QMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(row);
  }
  return out;
}

json vector_json(const QVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

namespace {

json root_json(const RootVec& v) { return json(v); }

json complex_vector_json(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back({v[k].real(), v[k].imag()});
  return out;
}

json times_json(const std::vector<Q>& t) { return vector_json(t); }

}  // namespace

std::vector<Q> parse_times(const std::string& csv) {
  std::vector<Q> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) fail(ErrorKind::Schema, "--at needs a comma-separated list of rational times");
  return out;
}

std::vector<Q> random_rationals(std::uint64_t seed, std::size_t count, std::size_t salt) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + salt);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 7);
  std::vector<Q> out;
  std::set<Q> seen;
  while (out.size() < count) {
    Q x(num(rng), den(rng));
    x.canonicalize();
    if (seen.insert(x).second) out.push_back(x);
  }
  return out;
}

LieAlgebra algebra_from_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'A') fail(ErrorKind::Schema, "algebra must be written A<rank>, e.g. A1");
  int rank = 0;
  try {
    rank = std::stoi(name.substr(1));
  } catch (const std::exception&) {
    fail(ErrorKind::Schema, "algebra must be written A<rank>, e.g. A1");
  }
  if (rank < 1) fail(ErrorKind::Schema, "rank must be positive");
  return build_type_a(rank);
}

unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WILDKZ_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

json report_dims(const LieAlgebra& g, int p, int height) {
  if (p < 1 || height < 0) fail(ErrorKind::InvalidArgument, "depth must be positive and height nonnegative");
  json rows = json::array();
  bool pass = true;
  for (const auto& nu : weights_up_to_height(g.rank(), height)) {
    const auto formula = dim_weight_space(nu, p, g.roots());
    const auto brute = brute_force_pbw_count(g, p, nu);
    pass = pass && formula == brute;
    rows.push_back({{"nu", root_json(nu)}, {"formula", formula}, {"brute_force", brute}, {"pass", formula == brute}});
  }
  return {{"command", "dims"},
          {"inputs", {{"algebra", g.name()}, {"p", p}, {"height", height}}},
          {"results", rows},
          {"pass", pass}};
}

json report_module_build(const LieAlgebra& g, const MarkedConfiguration& cfg) {
  json pts = json::array();
  bool pass = true;
  for (std::size_t k = 0; k < cfg.points.size(); ++k) {
    const auto& chi = cfg.points[k].chi;
    SingularModule mod(g, chi);
    ModuleSlice slice = ModuleSlice::finite(mod, cfg.height);
    json blocks = json::array();
    for (const auto& [nu, idx] : slice.blocks())
      blocks.push_back({{"nu", root_json(nu)}, {"dim", idx.size()}, {"formula", dim_weight_space(nu, chi.p, g.roots())}});
    bool blocks_ok = true, highest = true, cartan = true;
    for (int b = 0; b < g.dim(); ++b)
      for (int d = 0; d < chi.p; ++d) {
        const Gen x{b, d};
        for (std::size_t c = 0; c < slice.dim(); ++c) {
          const auto& col = slice.column(x, static_cast<int>(c));
          if (!col) continue;
          RootVec expect = slice.depth_of_index(static_cast<int>(c));
          const RootVec wt = g.basis_weight(b);
          for (std::size_t q = 0; q < expect.size(); ++q) expect[q] -= wt[q];
          for (const auto& [i, a] : *col)
            if (slice.depth_of_index(i) != expect) blocks_ok = false;
        }
        const auto& col = slice.column(x, slice.cyclic_index());
        if (g.kind(b) == BasisKind::E && col && !col->empty()) highest = false;
        if (g.kind(b) == BasisKind::H) {
          const Q expect = chi.a(d)[g.cartan_of(b)];
          const bool ok = col && ((col->empty() && is_zero(expect)) ||
                                  (col->size() == 1 && col->front().first == slice.cyclic_index() && col->front().second == expect));
          cartan = cartan && ok;
        }
      }
    bool dims_ok = true;
    for (const auto& bj : blocks) dims_ok = dims_ok && bj["dim"] == bj["formula"];
    const bool ok = blocks_ok && highest && cartan && dims_ok;
    pass = pass && ok;
    pts.push_back({{"point", k},
                   {"dim", slice.dim()},
                   {"blocks", blocks},
                   {"checks",
                    {{"weight_blocks_preserved", blocks_ok},
                     {"n_plus_kills_w", highest},
                     {"cartan_acts_by_character", cartan},
                     {"dims_match_formula", dims_ok}}},
                   {"pass", ok}});
  }
  return {{"command", "module-build"}, {"inputs", configuration_to_json(cfg)}, {"results", pts}, {"pass", pass}};
}

json report_sugawara(const LieAlgebra& g, const MarkedConfiguration& cfg) {
  json pts = json::array();
  bool pass = true;
  for (std::size_t k = 0; k < cfg.points.size(); ++k) {
    SingularModule mod(g, cfg.points[k].chi);
    const int p = mod.depth();
    json eig = json::array();
    bool ok = true;
    for (int n = p - 1; n <= 2 * p; ++n) {  // w is an eigenvector only from p - 1 on
      const EigenCheck e = sugawara_eigencheck(mod, n);
      ok = ok && e.pass;
      eig.push_back({{"n", n},
                     {"eigenvector", e.eigen},
                     {"computed", to_string(e.computed)},
                     {"closed_form", e.closed ? json(to_string(*e.closed)) : json(nullptr)},
                     {"pass", e.pass}});
    }
    ModuleSlice aff = ModuleSlice::affine(mod, 2, cfg.neg_degree);
    std::size_t checks = 0, failures = 0;
    for (const auto& v : aff.basis())
      for (int b = 0; b < g.dim(); ++b)
        for (int m = -1; m <= p; ++m) {
          ++checks;
          if (!sugawara_commutator_residual(mod, Gen{b, m}, v).empty()) ++failures;
        }
    ok = ok && failures == 0;
    pass = pass && ok;
    pts.push_back({{"point", k},
                   {"eigenvalues", eig},
                   {"commutator", {{"checks", checks}, {"failures", failures}}},
                   {"pass", ok}});
  }
  return {{"command", "sugawara-check"}, {"inputs", configuration_to_json(cfg)}, {"results", pts}, {"pass", pass}};
}

json report_shapovalov(const LieAlgebra& g, const MarkedConfiguration& cfg) {
  json pts = json::array();
  bool pass = true;
  for (std::size_t k = 0; k < cfg.points.size(); ++k) {
    const auto& chi = cfg.points[k].chi;
    SingularModule mod(g, chi);
    ModuleSlice slice = ModuleSlice::finite(mod, std::max(1, g.roots().height(g.roots().highest_root())) * chi.p);
    json roots = json::array();
    for (int a = 0; a < g.num_positive(); ++a) {
      const Q det = obstruction_determinant(slice, slice.cyclic_index(), a);
      Q top(0);
      const RootVec& alpha = g.roots().positive_roots[a];
      QVec hval(g.rank());
      for (int q = 0; q < g.rank(); ++q) hval[q] = g.root_on_cartan(alpha, q);
      // <a_{p-1}, H_alpha> with H_alpha the coroot written in the H_k basis.
      const QVec coroot = g.cartan_dual_element(hval);
      const Q norm = g.roots().pair_roots(alpha, alpha);
      for (int q = 0; q < g.rank(); ++q) top += chi.a(chi.p - 1)[q] * coroot[q] * 2 / norm;
      const bool ok = is_zero(det) == is_zero(top);
      pass = pass && ok;
      roots.push_back({{"root", root_json(alpha)},
                       {"determinant", to_string(det)},
                       {"top_pairing", to_string(top)},
                       {"pass", ok}});
    }
    pts.push_back({{"point", k}, {"roots", roots}});
  }
  return {{"command", "shapovalov"}, {"inputs", configuration_to_json(cfg)}, {"results", pts}, {"pass", pass}};
}

json report_cybe(const LieAlgebra& g, int p, const SweepOptions& opt) {
  if (p < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  const int bound = 6 * p;
  const std::size_t samples = opt.samples > 0 ? static_cast<std::size_t>(opt.samples) : static_cast<std::size_t>(bound + 1);
  std::vector<std::array<Q, 3>> pts;
  for (std::size_t s = 0; s < samples; ++s) {
    auto t = random_rationals(opt.seed, 3, s);
    pts.push_back({t[0], t[1], t[2]});
  }
  std::vector<char> zero(samples, 0), skew(samples, 0);
  const unsigned nthreads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(samples)));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < nthreads; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t s = w; s < samples; s += nthreads) {
        zero[s] = cybe_residual(g, p, pts[s][0], pts[s][1], pts[s][2]).is_zero();
        skew[s] = skew_residual(g, p, pts[s][0] - pts[s][1]).is_zero();
      }
    }));
  for (auto& j : jobs) j.get();
  json rows = json::array();
  bool pass = true;
  for (std::size_t s = 0; s < samples; ++s) {
    pass = pass && zero[s] && skew[s];
    rows.push_back({{"t", {to_string(pts[s][0]), to_string(pts[s][1]), to_string(pts[s][2])}},
                    {"cybe_zero", static_cast<bool>(zero[s])},
                    {"skew_zero", static_cast<bool>(skew[s])}});
  }
  return {{"command", "cybe-check"},
          {"inputs", {{"algebra", g.name()}, {"p", p}, {"samples", samples}, {"seed", opt.seed}}},
          {"degree_bound", bound},
          {"samples_exceed_bound", samples > static_cast<std::size_t>(bound)},
          {"results", rows},
          {"pass", pass}};
}

namespace {

bool has_quotient(InfinityMode m) {
  return m == InfinityMode::Tame || m == InfinityMode::Singular || m == InfinityMode::Contragredient;
}

// Ambient slice, optional coinvariant block, and the exact operator families.
struct Setup {
  std::unique_ptr<ConfigurationModel> model;
  std::optional<BlockSpace> block;
  TensorSpace::Block ambient;
  std::unique_ptr<OperatorFamily> family, reduced;
};

Setup build_setup(const LieAlgebra& g, const MarkedConfiguration& cfg, bool reduce) {
  Setup s;
  s.model = std::make_unique<ConfigurationModel>(g, cfg);
  if (!s.model->lambda_total()) fail(ErrorKind::InvalidArgument, "|lambda| is not in Q_+; the weight slice is empty");
  if (has_quotient(cfg.infinity.mode)) {
    s.block.emplace(compute_coinvariants(*s.model));
    s.ambient = s.block->ambient();
  } else {
    s.ambient = tensor_weight_slice(*s.model, *s.model->lambda_total());
  }
  s.family = std::make_unique<OperatorFamily>(OperatorFamily::on_block(s.model->connection(), s.model->space(), s.ambient));
  if (reduce && s.block && s.block->dim() > 0) s.reduced = std::make_unique<OperatorFamily>(reduce_family(*s.family, *s.block));
  return s;
}

}  // namespace

json report_flatness(const LieAlgebra& g, const MarkedConfiguration& cfg, const SweepOptions& opt) {
  Setup s = build_setup(g, cfg, true);
  const int n = static_cast<int>(cfg.points.size());
  std::vector<std::vector<Q>> points;
  points.push_back(cfg.exact_times_or_default());
  const std::size_t samples = opt.samples > 0 ? static_cast<std::size_t>(opt.samples) : 4;
  for (std::size_t k = 0; k < samples; ++k) points.push_back(random_rationals(opt.seed, n, 1000 + k));
  json rows = json::array();
  bool pass = true;
  for (const auto& t : points)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const bool amb = s.family->flatness_residual(i, j, t).is_zero();
        const bool red = !s.reduced || s.reduced->flatness_residual(i, j, t).is_zero();
        pass = pass && amb && red;
        rows.push_back({{"t", times_json(t)}, {"i", i}, {"j", j}, {"commutator_zero", amb}, {"reduced_commutator_zero", red}});
      }
  json deriv = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool ok = derivative_residual(s.model->connection(), i, j).empty();
      pass = pass && ok;
      deriv.push_back({{"i", i}, {"j", j}, {"derivative_part_zero", ok}});
    }
  return {{"command", "flatness-check"},
          {"inputs", configuration_to_json(cfg)},
          {"ambient_dim", s.ambient.dim()},
          {"block_dim", s.block ? json(s.block->dim()) : json(nullptr)},
          {"commutators", rows},
          {"derivatives", deriv},
          {"descends_to_coinvariants", static_cast<bool>(s.reduced) || !s.block || s.block->dim() == 0},
          {"pass", pass}};
}

json report_coinvariants(const LieAlgebra& g, const MarkedConfiguration& cfg) {
  ConfigurationModel model(g, cfg);
  const BlockSpace bs = compute_coinvariants(model);
  std::vector<int> depths = cfg.depths();
  if (model.infinity_is_slot()) depths.push_back(cfg.infinity.chi.p);
  const std::uint64_t formula =
      model.lambda_total() ? dim_tensor_weight_space(*model.lambda_total(), depths, g.roots()) : 0;
  const bool ok = formula == bs.ambient_dim();
  return {{"command", "coinvariants"},
          {"inputs", configuration_to_json(cfg)},
          {"lambda_total", model.lambda_total() ? root_json(*model.lambda_total()) : json(nullptr)},
          {"ambient_dim", bs.ambient_dim()},
          {"ambient_dim_formula", formula},
          {"relation_rank", bs.relation_rank()},
          {"block_dim", bs.dim()},
          {"basis", bs.basis_labels()},
          {"pass", ok}};
}

json report_connection(const LieAlgebra& g, const MarkedConfiguration& cfg, const std::optional<std::vector<Q>>& at) {
  Setup s = build_setup(g, cfg, true);
  const std::vector<Q> t = at ? *at : cfg.exact_times();
  if (t.size() != cfg.points.size()) fail(ErrorKind::InvalidArgument, "--at needs one time per marked point");
  json ops = json::array();
  for (int i = 0; i < static_cast<int>(t.size()); ++i) {
    const ConnectionOperator op = s.family->hamiltonian(i, t);
    json entry = {{"slot", i}, {"provenance", op.provenance}, {"ambient", matrix_json(op.matrix)}};
    if (s.reduced) entry["reduced"] = matrix_json(s.reduced->hamiltonian(i, t).matrix);
    ops.push_back(entry);
  }
  std::vector<std::string> labels;
  for (const auto& idx : s.ambient.basis) labels.push_back(s.model->label(idx));
  return {{"command", "connection"},
          {"inputs", configuration_to_json(cfg)},
          {"at", times_json(t)},
          {"ambient_basis", labels},
          {"block_basis", s.block ? json(s.block->basis_labels()) : json(nullptr)},
          {"hamiltonians", ops},
          {"pass", true}};
}

json report_transport(const LieAlgebra& g, const MarkedConfiguration& cfg, const json& path_json,
                      const std::optional<json>& v0_json) {
  Setup s = build_setup(g, cfg, true);
  const OperatorFamily& fam = s.reduced ? *s.reduced : *s.family;
  const PathSpec path = PathSpec::from_json(path_json);
  Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(fam.dim()));
  if (v0_json) {
    if (!v0_json->is_array() || v0_json->size() != fam.dim())
      fail(ErrorKind::Schema, "v0 must list one complex entry per block coordinate");
    for (std::size_t k = 0; k < fam.dim(); ++k) {
      const auto& x = (*v0_json)[k];
      v0[static_cast<Eigen::Index>(k)] = x.is_array() ? std::complex<double>(x.at(0).get<double>(), x.at(1).get<double>())
                                                      : std::complex<double>(x.get<double>(), 0.0);
    }
  } else if (fam.dim() > 0) {
    v0[0] = 1.0;
  }
  const TransportResult fwd = integrate(fam, path, v0);
  double reversal = 0;
  bool reversible = true;
  try {
    const TransportResult back = integrate(fam, path.reversed(), fwd.v);
    reversal = fam.dim() ? (back.v - v0).cwiseAbs().maxCoeff() : 0.0;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidArgument) throw;
    reversible = false;
  }
  const bool ok = !reversible || reversal <= 1e-8;
  return {{"command", "transport"},
          {"inputs", {{"config", configuration_to_json(cfg)}, {"path", path_json}}},
          {"space", s.reduced ? "coinvariants" : "ambient"},
          {"dim", fam.dim()},
          {"v0", complex_vector_json(v0)},
          {"v1", complex_vector_json(fwd.v)},
          {"stats",
           {{"steps", fwd.stats.steps},
            {"rhs_evaluations", fwd.stats.rhs_evaluations},
            {"min_distance", fwd.stats.min_distance},
            {"distance_floor", fwd.stats.floor},
            {"error_bound", fwd.stats.error_bound}}},
          {"reversal_residual", reversible ? json(reversal) : json(nullptr)},
          {"pass", ok}};
}

}  // namespace wildkz::cli
