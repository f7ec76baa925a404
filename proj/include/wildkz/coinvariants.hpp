// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wildkz/kz_connection.hpp"
#include "wildkz/linalg.hpp"
#include "wildkz/singular_module.hpp"
#include "wildkz/tensor_slice.hpp"

namespace wildkz {

// What sits at infinity.
//   Tame, Singular: a singular module, realised as an extra tensor slot.
//   Contragredient: the contragredient dual of a tame module, kept at its
//     cyclic covector; coinvariants become an n^- quotient of the finite slots.
//   Dual: the plain theta-dual; rejected for coinvariants.
//   Dynamical: the module induced from h[[z]] + z g[[z]]; contributes the
//     Cartan term mu and no relations.
//   Restricted: functions vanishing at an unmarked point; no relations.
enum class InfinityMode { Tame, Singular, Dual, Contragredient, Dynamical, Restricted };

InfinityMode parse_infinity_mode(const std::string& s);
std::string infinity_mode_name(InfinityMode m);

struct MarkedPoint {
  std::complex<double> t;
  std::optional<Q> exact;  // set when the time was given as a rational
  SingularCharacter chi;
};

struct InfinitySlot {
  InfinityMode mode = InfinityMode::Tame;
  SingularCharacter chi;  // p = 1 unless mode is Singular
  std::optional<QVec> mu;
};

struct MarkedConfiguration {
  int rank = 1;
  Q kappa;
  std::vector<MarkedPoint> points;
  InfinitySlot infinity;
  int height = 4;
  int neg_degree = 1;

  std::vector<int> depths() const;
  std::vector<Q> exact_times() const;  // Schema error if a time is not rational
  std::vector<std::complex<double>> float_times() const;
  std::vector<Q> exact_times_or_default() const;  // 0, 1, 2, ... for missing times
  void validate(const LieAlgebra& g) const;
};

// Level strings: rationals, or one of the critical sentinels ("-hv", "-h^v",
// "−h∨"), which raise CriticalLevel.
Q parse_level(const std::string& s);
MarkedConfiguration parse_configuration(const nlohmann::json& j);
nlohmann::json configuration_to_json(const MarkedConfiguration& c);

// Modules, slices and the tensor space of a configuration.
class ConfigurationModel {
 public:
  ConfigurationModel(const LieAlgebra& g, MarkedConfiguration cfg);
  ConfigurationModel(const ConfigurationModel&) = delete;
  ConfigurationModel& operator=(const ConfigurationModel&) = delete;

  const LieAlgebra& algebra() const { return *g_; }
  const MarkedConfiguration& config() const { return cfg_; }
  const TensorSpace& space() const { return *space_; }
  const SingularModule& module(int slot) const { return *mods_.at(slot); }
  bool infinity_is_slot() const { return inf_slot_; }
  int infinity_slot() const { return static_cast<int>(cfg_.points.size()); }
  // |lambda| over all points including infinity, in simple-root coordinates;
  // nullopt when it is not in Q_+.
  const std::optional<RootVec>& lambda_total() const { return total_; }
  const ConnectionData& connection() const { return *conn_; }
  std::string label(const TensorIndex& idx) const;

 private:
  const LieAlgebra* g_;
  MarkedConfiguration cfg_;
  bool inf_slot_ = false;
  std::vector<std::unique_ptr<SingularModule>> mods_;
  std::vector<ModuleSlice> slices_;
  std::unique_ptr<TensorSpace> space_;
  std::optional<RootVec> total_;
  std::unique_ptr<ConnectionData> conn_;
};

// Functional in H-values to simple-root coordinates; nullopt unless it is an
// integral point of Q_+.
std::optional<RootVec> to_positive_root_coords(const LieAlgebra& g, const QVec& h_values);

// The space of coinvariants as ambient / span(relations). Coordinates on the
// quotient are the ambient coordinates at the free (non-pivot) columns of the
// reduced relation basis.
class BlockSpace {
 public:
  BlockSpace(TensorSpace::Block ambient, RowSpace relations, std::vector<std::string> labels);

  const TensorSpace::Block& ambient() const { return ambient_; }
  const RowSpace& relations() const { return relations_; }
  std::size_t ambient_dim() const { return ambient_.dim(); }
  std::size_t relation_rank() const { return relations_.dim(); }
  std::size_t dim() const { return free_.size(); }
  const std::vector<std::size_t>& free_columns() const { return free_; }
  // Labels of the pure tensors whose classes form the quotient basis.
  std::vector<std::string> basis_labels() const;
  const std::vector<std::string>& ambient_labels() const { return labels_; }

  QVec project(const QVec& v) const;
  QVec section(const QVec& u) const;
  bool is_zero_class(const QVec& v) const { return relations_.contains(v); }

 private:
  TensorSpace::Block ambient_;
  RowSpace relations_;
  std::vector<std::size_t> free_;
  std::vector<std::string> labels_;
};

// Throws InvalidArgument for the plain theta-dual at infinity, CutoffTooSmall
// when the height cutoff cannot hold every relation.
BlockSpace compute_coinvariants(const ConfigurationModel& model);

// Tensor weight slice with sum nu_j = total over every tensor slot.
TensorSpace::Block tensor_weight_slice(const ConfigurationModel& model, const RootVec& total);

// Matrix on the quotient; NonInvariant if op does not preserve the relations.
QMatrix reduce_operator(const QMatrix& op, const BlockSpace& space);
OperatorFamily reduce_family(const OperatorFamily& family, const BlockSpace& space);
// Operator family on the ambient slice of a block space.
OperatorFamily ambient_family(const ConfigurationModel& model, const BlockSpace& space);

// Pole expansions of z_i^{-m}: coefficient of z_j^l at a finite point, and of
// z_infinity^{m+l} at infinity.
Q pole_expansion_finite(int m, int l, const Q& ti, const Q& tj);
Q pole_expansion_infinity(int m, int l, const Q& ti);

struct ResidueReport {
  QVec direct;      // L_{-1}^{(i)} w, with negative modes traded for the other slots
  QVec hamiltonian; // -H_i(t) w
  bool equal = false;
  bool equal_mod_relations = false;
};

// Applies L_{-1} at slot i of the pure tensor `witness` through the
// straightening engine, rewrites each X z_i^{-m} by the fundamental identity,
// and compares with -H_i(t) on the same tensor block.
ResidueReport residue_identity_check(const ConfigurationModel& model, int i, const TensorIndex& witness,
                                     const std::vector<Q>& t);

}  // namespace wildkz
