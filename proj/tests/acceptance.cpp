// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every check here recomputes its expectation independently
// of the code path under test where that is possible.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "wildkz/coinvariants.hpp"
#include "wildkz/errors.hpp"
#include "wildkz/transport.hpp"
#include "wildkz/weight_combinatorics.hpp"

using namespace wildkz;
using nlohmann::json;
using C = std::complex<double>;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  Q rational() {
    Q x(integer(-9, 9), integer(1, 6));
    x.canonicalize();
    return x;
  }
  Q nonzero() {
    Q x;
    do x = rational();
    while (x == 0);
    return x;
  }
  SingularCharacter character(int rank, int p, const Q& kappa) {
    SingularCharacter chi;
    chi.p = p;
    chi.kappa = kappa;
    for (int k = 0; k < rank; ++k) chi.lambda.push_back(rational());
    for (int i = 1; i < p; ++i) {
      QVec a;
      for (int k = 0; k < rank; ++k) a.push_back(rational());
      chi.q.push_back(a);
    }
    return chi;
  }

 private:
  std::mt19937_64 eng_;
};

// Multisets of F_alpha z^k, k < p, summing to nu.
std::uint64_t multiset_count(const RootSystem& rs, int p, const RootVec& nu) {
  std::vector<RootVec> gens;
  for (const auto& a : rs.positive_roots)
    for (int k = 0; k < p; ++k) gens.push_back(a);
  std::function<std::uint64_t(std::size_t, const RootVec&)> go = [&](std::size_t from, const RootVec& rest) {
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) return std::uint64_t{1};
    std::uint64_t n = 0;
    for (std::size_t g = from; g < gens.size(); ++g) {
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

bool zero_vec(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

json sl2_point(const std::string& t, const std::string& lambda, int depth, const std::vector<std::string>& q) {
  json p = {{"t", t}, {"lambda", {lambda}}, {"depth", depth}};
  json qs = json::array();
  for (const auto& x : q) qs.push_back({x});
  p["q"] = qs;
  return p;
}

// Independent tensor count: convolution of multiset counts over splittings.
std::uint64_t multiset_convolution(const LieAlgebra& g, const std::vector<int>& depths, int m) {
  std::function<std::uint64_t(std::size_t, int)> go = [&](std::size_t j, int rest) -> std::uint64_t {
    if (j + 1 == depths.size()) return multiset_count(g.roots(), depths[j], {rest});
    std::uint64_t n = 0;
    for (int k = 0; k <= rest; ++k) n += multiset_count(g.roots(), depths[j], {k}) * go(j + 1, rest - k);
    return n;
  };
  return go(0, m);
}

// ---------------------------------------------------------------------------

void weight_dimensions(Outcome& o) {
  int cases = 0;
  for (int r = 1; r <= 2; ++r) {
    const LieAlgebra g = build_type_a(r);
    for (int p = 1; p <= 3; ++p)
      for (const auto& nu : weights_up_to_height(r, 4)) {
        const std::uint64_t formula = dim_weight_space(nu, p, g.roots());
        o.require(formula == brute_force_pbw_count(g, p, nu), "library brute force");
        o.require(formula == multiset_count(g.roots(), p, nu), "independent multiset count");
        ++cases;
      }
  }
  o.note << cases << " weight spaces";
}

void highest_weight(Outcome& o) {
  Rng rng(2);
  std::size_t columns = 0;
  for (int r = 1; r <= 2; ++r) {
    const LieAlgebra g = build_type_a(r);
    for (int p = 1; p <= 3; ++p) {
      const SingularCharacter chi = rng.character(r, p, Q(1));
      const SingularModule mod(g, chi);
      const ModuleSlice slice = ModuleSlice::finite(mod, 4);
      for (int b = 0; b < g.dim(); ++b) {
        const RootVec shift = g.basis_weight(b);
        for (int k = 0; k < p; ++k)
          for (std::size_t c = 0; c < slice.dim(); ++c) {
            const auto& img = slice.column(Gen{b, k}, static_cast<int>(c));
            ++columns;
            if (!img) continue;
            RootVec expect = slice.depth_of_index(static_cast<int>(c));
            for (int i = 0; i < r; ++i) expect[i] -= shift[i];
            for (const auto& [row, coef] : *img) o.require(slice.depth_of_index(row) == expect, "weight block");
          }
      }
      QVec w(slice.dim());
      w[slice.cyclic_index()] = 1;
      for (int a = 0; a < g.num_positive(); ++a)
        for (int k = 0; k < p; ++k) o.require(zero_vec(slice.act(Gen{g.e_index(a), k}, w)), "n+ kills w");
      for (int h = 0; h < r; ++h)
        for (int i = 0; i < p; ++i) {
          QVec expect(slice.dim());
          expect[slice.cyclic_index()] = chi.a(i)[h];
          o.require(slice.act(Gen{g.h_index(h), i}, w) == expect, "Cartan character");
        }
    }
  }
  o.note << columns << " generator columns";
}

void sugawara(Outcome& o) {
  const LieAlgebra g = build_type_a(1);
  Rng rng(3);
  auto form = [](const QVec& a, const QVec& b) -> Q { return a[0] * b[0] / 2; };
  int checks = 0;
  for (int p = 1; p <= 3; ++p)
    for (int trial = 0; trial < 5; ++trial) {
      Q kappa;
      do kappa = rng.rational();
      while (kappa == -2);
      const SingularCharacter chi = rng.character(1, p, kappa);
      const SingularModule mod(g, chi);
      const Q shift = kappa + 2;
      for (int n = p - 1; n <= 2 * p + 1; ++n) {
        const EigenCheck e = sugawara_eigencheck(mod, n);
        Q expect(0);
        if (n == p - 1) {
          for (int j = 0; j <= p - 1; ++j) expect += form(chi.a(j), chi.a(p - 1 - j));
          expect += 2 * p * form({Q(1)}, chi.a(p - 1));
        } else if (n <= 2 * (p - 1)) {
          for (int j = 1 - p + n; j <= p - 1; ++j) expect += form(chi.a(j), chi.a(n - j));
        }
        expect /= 2 * shift;
        o.require(e.eigen && e.computed == expect, "eigenvalue");
        ++checks;
      }
      if (p == 1) {
        const Q l = chi.lambda[0];
        o.require(sugawara_eigencheck(mod, 0).computed == form({l}, {l + 2}) / (2 * shift), "Delta_lambda");
      }
      // The commutator sweep is the expensive part (about 5 s per depth-3
      // character), so it runs on two characters per depth.
      if (trial >= 2) continue;
      const ModuleSlice aff = ModuleSlice::affine(mod, 2, p);
      for (const Mono& v : aff.basis())
        for (int b = 0; b < g.dim(); ++b)
          for (int m = -1; m <= p; ++m) {
            o.require(sugawara_commutator_residual(mod, Gen{b, m}, v).empty(), "[L_-1, X z^m]");
            ++checks;
          }
    }
  o.note << checks << " exact checks";
}

void cybe(Outcome& o) {
  Rng rng(4);
  int samples = 0;
  for (int r = 1; r <= 2; ++r) {
    const LieAlgebra g = build_type_a(r);
    for (int p = 1; p <= 3; ++p) {
      // Clearing (t12 t13 t23)^{2p-1} leaves a numerator of degree below 6p.
      const int count = 6 * p + 1;
      for (int s = 0; s < count; ++s) {
        Q t1 = rng.rational(), t2, t3;
        do t2 = rng.rational();
        while (t2 == t1);
        do t3 = rng.rational();
        while (t3 == t1 || t3 == t2);
        o.require(cybe_residual(g, p, t1, t2, t3).is_zero(), "CYBE residual");
        ++samples;
      }
    }
  }
  const LieAlgebra g = build_type_a(1);
  o.require(!cybe_residual(g, 2, Q(0), Q(1), Q(3), Corruption{0, 1, Q(1)}).is_zero(), "negative control");
  o.note << samples << " sample triples";
}

void flatness(Outcome& o) {
  const LieAlgebra g = build_type_a(1);
  Rng rng(5);
  const std::vector<std::vector<int>> depth_sets{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}};
  std::size_t largest = 0;
  double loop_residual = 0;
  for (const auto& depths : depth_sets)
    for (int rinf : {1, 2}) {
      std::vector<json> pts;
      const char* times[] = {"0", "1", "3"};
      for (int j = 0; j < 3; ++j) {
        std::vector<std::string> q;
        for (int k = 1; k < depths[j]; ++k) q.push_back(to_string(rng.nonzero()));
        pts.push_back(sl2_point(times[j], to_string(rng.rational()), depths[j], q));
      }
      json inf = {{"mode", rinf == 1 ? "tame" : "singular"}, {"lambda", {"1"}}, {"depth", rinf}};
      if (rinf == 2) inf["q"] = {{to_string(rng.nonzero())}};
      const json cfg = {{"algebra", "A1"}, {"kappa", "3/2"}, {"points", pts}, {"infinity", inf}, {"truncation", {{"height", 3}}}};
      const ConfigurationModel model(g, parse_configuration(cfg));
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) o.require(derivative_residual(model.connection(), i, j).empty(), "dH");
      for (int m = 0; m <= 3; ++m) {
        const auto block = tensor_weight_slice(model, {m});
        if (block.dim() > 50) continue;
        largest = std::max(largest, block.dim());
        const auto fam = OperatorFamily::on_block(model.connection(), model.space(), block);
        for (const std::vector<Q>& t : {std::vector<Q>{Q(0), Q(1), Q(3)}, std::vector<Q>{Q(-1, 2), Q(2), Q(7, 3)}})
          for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) o.require(fam.flatness_residual(i, j, t).is_zero(), "[H_i, H_j]");
        if (m == 2) {
          PathSpec loop;
          loop.start = {C(0), C(1), C(3)};
          PathSegment arc;
          arc.kind = PathSegment::Kind::Arc;
          arc.center = {C(0, 0.3), C(1), C(3)};
          arc.angle = 2 * M_PI;
          loop.segments.push_back(arc);
          const auto mono = monodromy(fam, loop);
          const double res = max_abs(mono.m - Eigen::MatrixXcd::Identity(fam.dim(), fam.dim()));
          loop_residual = std::max(loop_residual, res);
          o.require(res <= 1e-8, "closed-loop transport");
        }
      }
    }
  o.note << "largest slice " << largest << ", loop residual " << loop_residual;
}

void equivariance(Outcome& o) {
  int checks = 0;
  for (int r = 1; r <= 2; ++r) {
    const LieAlgebra g = build_type_a(r);
    for (int m = 0; m <= 3; ++m)
      for (int l = 0; l <= 3; ++l)
        for (int x = 0; x < g.dim(); ++x) {
          o.require(g_equivariance_residual(g, 0, 1, m, l, x, 2).is_zero(), "Omega^{(ij)}");
          o.require(g_equivariance_residual(g, 0, 0, m, l, x, 1).is_zero(), "Omega^{(ii)}");
          checks += 2;
        }
  }
  const LieAlgebra g = build_type_a(1);
  const std::vector<json> pts{sl2_point("0", "1", 2, {"1/3"}), sl2_point("1", "2", 1, {}), sl2_point("3", "1/2", 2, {"2"})};
  int reduced = 0;
  for (const json& inf : {json{{"mode", "singular"}, {"lambda", {"-3/2"}}, {"depth", 2}, {"q", {{"1/5"}}}},
                          json{{"mode", "tame"}, {"lambda", {"1/2"}}}, json{{"mode", "contragredient"}, {"lambda", {"1/2"}}}}) {
    const json cfg = {{"algebra", "A1"}, {"kappa", "1"}, {"points", pts}, {"infinity", inf}, {"truncation", {{"height", 4}}}};
    const ConfigurationModel model(g, parse_configuration(cfg));
    const BlockSpace bs = compute_coinvariants(model);
    try {
      const auto red = reduce_family(ambient_family(model, bs), bs);
      reduced += static_cast<int>(red.dim());
    } catch (const Error& e) {
      o.require(false, std::string("reduction: ") + e.what());
    }
  }
  o.note << checks << " symbolic residuals, reduced families of total dim " << reduced;
}

void coinvariants(Outcome& o) {
  const LieAlgebra g = build_type_a(1);
  Rng rng(7);
  int checks = 0;
  // Ambient slice dimension against the tensor formula.
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<json> pts;
    std::vector<int> depths;
    int sum = 0;
    for (int j = 0; j < 3; ++j) {
      const int d = rng.integer(1, 2), l = rng.integer(0, 2);
      std::vector<std::string> q;
      for (int k = 1; k < d; ++k) q.push_back(to_string(rng.nonzero()));
      pts.push_back(sl2_point(std::to_string(j), std::to_string(l), d, q));
      depths.push_back(d);
      sum += l;
    }
    const int linf = sum % 2;
    const json cfg = {{"algebra", "A1"}, {"kappa", "1"}, {"points", pts},
                      {"infinity", {{"mode", "tame"}, {"lambda", {std::to_string(linf)}}}}, {"truncation", {{"height", 5}}}};
    const ConfigurationModel model(g, parse_configuration(cfg));
    const BlockSpace bs = compute_coinvariants(model);
    depths.push_back(1);
    o.require(bs.ambient_dim() == multiset_convolution(g, depths, (sum + linf) / 2), "ambient formula");
    ++checks;
  }
  // |lambda| = m alpha on finite slots of depths (2, 3, 1): C(m + 5, m); m = 1 is theta.
  for (int m = 1; m <= 3; ++m) {
    const json cfg = {{"algebra", "A1"}, {"kappa", "1"},
                      {"points", {sl2_point("0", "1", 2, {"1"}), sl2_point("1", "1", 3, {"2", "-1"}), sl2_point("3", "0", 1, {})}},
                      {"infinity", {{"mode", "contragredient"}, {"lambda", {std::to_string(2 * m - 2)}}}},
                      {"truncation", {{"height", m}}}};
    const ConfigurationModel model(g, parse_configuration(cfg));
    const BlockSpace bs = compute_coinvariants(model);
    o.require(bs.ambient_dim() == choose(m + 5, m), "C(m+R-1, m)");
    if (m == 1) o.require(bs.ambient_dim() == 6, "theta gives sum of depths");
    ++checks;
  }
  // Nontriviality witness: m copies of F z^{r-1} on the first slot.
  for (int m = 0; m <= 3; ++m) {
    const json cfg = {{"algebra", "A1"}, {"kappa", "1"},
                      {"points", {sl2_point("0", "1", 2, {"1/2"}), sl2_point("2", "1", 2, {"-1"})}},
                      {"infinity", {{"mode", "contragredient"}, {"lambda", {std::to_string(2 * m - 2)}}}},
                      {"truncation", {{"height", std::max(m, 1)}}}};
    const ConfigurationModel model(g, parse_configuration(cfg));
    const BlockSpace bs = compute_coinvariants(model);
    const TensorIndex idx{model.space().slot(0).index_of(Mono(m, Gen{g.f_index(0), 1})), model.space().slot(1).cyclic_index()};
    QVec v(bs.ambient_dim());
    v[bs.ambient().index.at(idx)] = 1;
    o.require(!bs.is_zero_class(v), "witness nonzero");
    ++checks;
  }
  o.note << checks << " configurations";
}

void affine(Outcome& o) {
  const LieAlgebra g = build_type_a(1);
  const json cfg = {{"algebra", "A1"}, {"kappa", "1"},
                    {"points", {{{"t", "0"}, {"lambda", {"1/2"}}}, {{"t", "2"}, {"lambda", {"3/4"}}}}},
                    {"infinity", {{"mode", "restricted"}, {"lambda", {"11/4"}}}}, {"truncation", {{"height", 4}}}};
  const ConfigurationModel model(g, parse_configuration(cfg));
  const BlockSpace bs = compute_coinvariants(model);
  const auto fam = ambient_family(model, bs);
  Eigen::VectorXcd v0(fam.dim());
  for (Eigen::Index k = 0; k < v0.size(); ++k) v0[k] = C(1.0 / (k + 1), 0.25 * k);
  const CPoint t0{C(0), C(2)};
  const double trans = affine_equivariance_check(fam, t0, 0.0, C(0.5, 0.3), v0).residual;
  const double dil = affine_equivariance_check(fam, t0, 0.1, C(0), v0).residual;
  o.require(fam.dim() > 0, "nonempty block");
  o.require(trans <= 1e-8, "translation");
  o.require(dil <= 1e-6, "dilation");
  o.note << "block dim " << fam.dim() << ", translation " << trans << ", dilation " << dil;
}

void shapovalov(Outcome& o) {
  const LieAlgebra g = build_type_a(1);
  Rng rng(9);
  int nonzero = 0, zero = 0;
  for (int trial = 0; trial < 8; ++trial) {
    SingularCharacter chi = rng.character(1, 2, Q(1));
    const bool vanish = trial % 2 == 1;
    if (vanish) chi.q[0] = {Q(0)};
    else chi.q[0] = {rng.nonzero()};
    const SingularModule mod(g, chi);
    const ModuleSlice slice = ModuleSlice::finite(mod, 1);
    const Q det = obstruction_determinant(slice, slice.cyclic_index(), 0);
    // E z^j F z^k w = a_{j+k}(H) w: det [[a0, a1], [a1, 0]] = -a1^2.
    o.require(det == -chi.q[0][0] * chi.q[0][0], "closed form");
    o.require((det != 0) == !vanish, "vanishing pattern");
    (det != 0 ? nonzero : zero)++;
  }
  o.note << nonzero << " nonzero, " << zero << " zero determinants";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"weight dimensions", weight_dimensions}, {"highest weight and semisimplicity", highest_weight},
      {"Sugawara eigenvalues", sugawara},       {"classical Yang-Baxter", cybe},
      {"flatness", flatness},                   {"equivariance and descent", equivariance},
      {"coinvariants", coinvariants},           {"affine equivariance", affine},
      {"Shapovalov obstruction", shapovalov}};
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << "criterion " << k + 1 << " (" << criteria[k].first << "): " << (o.pass ? "PASS" : "FAIL") << "  ["
              << o.note.str() << "; " << std::fixed << std::setprecision(2) << secs << " s]" << std::defaultfloat << "\n";
  }
  return all ? 0 : 1;
}
