// SPDX-License-Identifier: MIT
// Report builders behind the wildkz subcommands. Every report is a JSON
// object with the inputs echoed, the results and a top-level "pass" flag.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wildkz/coinvariants.hpp"

namespace wildkz::cli {

using nlohmann::json;

struct SweepOptions {
  int samples = 8;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

json report_dims(const LieAlgebra& g, int p, int height);
json report_module_build(const LieAlgebra& g, const MarkedConfiguration& cfg);
json report_sugawara(const LieAlgebra& g, const MarkedConfiguration& cfg);
json report_shapovalov(const LieAlgebra& g, const MarkedConfiguration& cfg);
json report_cybe(const LieAlgebra& g, int p, const SweepOptions& opt);
json report_flatness(const LieAlgebra& g, const MarkedConfiguration& cfg, const SweepOptions& opt);
json report_coinvariants(const LieAlgebra& g, const MarkedConfiguration& cfg);
json report_connection(const LieAlgebra& g, const MarkedConfiguration& cfg, const std::optional<std::vector<Q>>& at);
json report_transport(const LieAlgebra& g, const MarkedConfiguration& cfg, const json& path, const std::optional<json>& v0);

json matrix_json(const QMatrix& m);
json vector_json(const QVec& v);
std::vector<Q> parse_times(const std::string& csv);
// Distinct random rationals with small numerators and denominators.
std::vector<Q> random_rationals(std::uint64_t seed, std::size_t count, std::size_t salt);
LieAlgebra algebra_from_name(const std::string& name);
unsigned thread_cap();

}  // namespace wildkz::cli
