// SPDX-License-Identifier: MIT
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "report.hpp"
#include "wildkz/errors.hpp"

using namespace wildkz;
using namespace wildkz::cli;

namespace {

json read_json(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Schema, std::string("cannot open ") + what + " file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Schema, std::string("invalid JSON in ") + what + ": " + e.what());
  }
}

void emit(const json& doc, const std::string& path) {
  const std::string text = doc.dump(2);
  std::cout << text << "\n";
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact singular modules, irregular KZ connections and their transport"};
  app.require_subcommand(1);

  std::string config_path, emit_path, algebra = "A1", at, path_file, v0_file;
  int samples = 0, p = 1, height = -1, neg_degree = -1;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "configuration JSON file");
    if (needs_config) opt->required();
    sub->add_option("--emit", emit_path, "also write the report to this file");
    sub->add_option("--samples", samples, "number of random sample points");
    sub->add_option("--seed", seed, "seed for sample points");
    sub->add_option("--height", height, "override the height cutoff");
    sub->add_option("--neg-degree", neg_degree, "override the negative-degree cutoff");
  };

  auto* dims = app.add_subcommand("dims", "weight-space dimensions against brute-force PBW enumeration");
  add_common(dims, false);
  dims->add_option("--p", p, "depth");
  dims->add_option("--algebra", algebra, "algebra, e.g. A1");
  auto* build = app.add_subcommand("module-build", "build finite slices and check highest-weight properties");
  add_common(build, true);
  auto* sug = app.add_subcommand("sugawara-check", "Sugawara eigenvalues and the L_{-1} commutator");
  add_common(sug, true);
  auto* shap = app.add_subcommand("shapovalov", "obstruction determinants at the cyclic vector");
  add_common(shap, true);
  auto* cybe = app.add_subcommand("cybe-check", "classical Yang-Baxter and skew-symmetry residuals");
  add_common(cybe, false);
  cybe->add_option("--p", p, "depth");
  cybe->add_option("--algebra", algebra, "algebra, e.g. A1");
  auto* flat = app.add_subcommand("flatness-check", "commutators and derivative part of the curvature");
  add_common(flat, true);
  auto* coin = app.add_subcommand("coinvariants", "exact space of coinvariants");
  add_common(coin, true);
  auto* conn = app.add_subcommand("connection", "Hamiltonian matrices at a point");
  add_common(conn, true);
  conn->add_option("--at", at, "comma-separated rational times");
  auto* tr = app.add_subcommand("transport", "parallel transport along a path");
  add_common(tr, true);
  tr->add_option("--path", path_file, "path JSON file")->required();
  tr->add_option("--v0", v0_file, "initial vector JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    auto load_config = [&]() {
      MarkedConfiguration cfg = parse_configuration(read_json(config_path, "config"));
      if (height >= 0) cfg.height = height;
      if (neg_degree >= 0) cfg.neg_degree = neg_degree;
      return cfg;
    };
    SweepOptions opt{samples, seed, thread_cap()};
    json doc;
    if (dims->parsed()) {
      const LieAlgebra g = algebra_from_name(algebra);
      doc = report_dims(g, p, height >= 0 ? height : 4);
    } else if (cybe->parsed()) {
      const LieAlgebra g = algebra_from_name(algebra);
      doc = report_cybe(g, p, opt);
    } else {
      const MarkedConfiguration cfg = load_config();
      const LieAlgebra g = build_type_a(cfg.rank);
      if (build->parsed()) doc = report_module_build(g, cfg);
      if (sug->parsed()) doc = report_sugawara(g, cfg);
      if (shap->parsed()) doc = report_shapovalov(g, cfg);
      if (flat->parsed()) doc = report_flatness(g, cfg, opt);
      if (coin->parsed()) doc = report_coinvariants(g, cfg);
      if (conn->parsed()) doc = report_connection(g, cfg, at.empty() ? std::nullopt : std::optional(parse_times(at)));
      if (tr->parsed()) {
        std::optional<json> v0;
        if (!v0_file.empty()) v0 = read_json(v0_file, "v0");
        doc = report_transport(g, cfg, read_json(path_file, "path"), v0);
      }
    }
    emit(doc, emit_path);
    return doc.value("pass", false) ? 0 : 1;
  } catch (const Error& e) {
    json err = {{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}, {"pass", false}};
    std::cout << err.dump(2) << "\n";
    return error_exit_code(e.kind());
  }
}
