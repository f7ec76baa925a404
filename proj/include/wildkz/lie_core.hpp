// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wildkz/linalg.hpp"
#include "wildkz/rational.hpp"

namespace wildkz {

using RootVec = std::vector<int>;  // coordinates in the simple-root basis

enum class WeightCoords { SimpleRoot, Fundamental };

struct Weight {
  WeightCoords coords = WeightCoords::SimpleRoot;
  QVec values;
};

struct RootSystem {
  int rank = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i^vee, alpha_j>
  std::vector<RootVec> simple_roots;
  std::vector<RootVec> positive_roots;  // by height, then lexicographically decreasing
  QMatrix form;                         // (alpha_i | alpha_j), highest root has length 2

  int height(const RootVec& v) const;
  int root_index(const RootVec& v) const;  // -1 if not a positive root
  const RootVec& highest_root() const { return positive_roots.back(); }
  Q pair_roots(const RootVec& a, const RootVec& b) const;
  Weight rho() const;  // simple-root coordinates
};

// Closed set of positive roots of a finite-type Cartan matrix; throws
// NotFiniteType with a diagnostic otherwise.
RootSystem generate_positive_roots(const std::vector<std::vector<int>>& cartan);

// (mu | nu) under the minimal-form duality. Both weights must use the same
// coordinate declaration.
Q weight_form(const RootSystem& rs, const Weight& mu, const Weight& nu);

enum class BasisKind { F, H, E };

// Linear combination of basis elements as (index, coefficient) pairs.
using SparseElem = std::vector<std::pair<int, Q>>;

// A simple Lie algebra in the Cartan-Weyl basis F_{alpha_1..s}, H_{1..r},
// E_{alpha_1..s}. Immutable once built.
class LieAlgebra {
 public:
  const RootSystem& roots() const { return rs_; }
  int dim() const { return dim_; }
  int rank() const { return rs_.rank; }
  int num_positive() const { return static_cast<int>(rs_.positive_roots.size()); }
  std::string name() const { return name_; }

  BasisKind kind(int b) const;
  int root_of(int b) const;    // positive-root index for F/E elements
  int cartan_of(int b) const;  // Cartan index for H elements
  int f_index(int root) const { return root; }
  int h_index(int k) const { return num_positive() + k; }
  int e_index(int root) const { return num_positive() + rank() + root; }
  std::string label(int b) const;

  // h-weight of a basis element in simple-root coordinates.
  RootVec basis_weight(int b) const;
  // <alpha, H_k> for alpha in simple-root coordinates.
  Q root_on_cartan(const RootVec& alpha, int k) const;

  const SparseElem& bracket_basis(int a, int b) const { return table_[a][b]; }
  QVec bracket(const QVec& x, const QVec& y) const;

  const QMatrix& gram() const { return gram_; }
  const QMatrix& dual_map() const { return dual_; }  // X^k = sum_l dual(k,l) X_l
  // Omega = sum coeff X_a (x) X_b over the stored triples.
  const std::vector<std::tuple<int, int, Q>>& casimir_terms() const { return omega_; }
  Q dual_coxeter() const { return hdual_; }
  Weight rho() const { return rs_.rho(); }

  // Pairing of two Cartan functionals given by their values on H_1..H_r.
  Q cartan_form(const QVec& mu, const QVec& nu) const;
  // Element of h dual to a functional through the form: the sum over an
  // orthonormal Cartan basis of <mu, H_k> H_k, written in the H_1..H_r basis.
  QVec cartan_dual_element(const QVec& mu) const;

  // Image of a basis element under the transposition antimorphism.
  int transpose_of(int b) const;

  // Matrix in the defining representation (type A only).
  const QMatrix& defining_matrix(int b) const { return matrices_[b]; }

  friend LieAlgebra build_type_a(int rank);

 private:
  std::string name_;
  RootSystem rs_;
  int dim_ = 0;
  std::vector<std::vector<SparseElem>> table_;
  QMatrix gram_, dual_, cartan_gram_inv_;
  std::vector<std::tuple<int, int, Q>> omega_;
  Q hdual_;
  std::vector<QMatrix> matrices_;
};

// sl(rank+1) realised by elementary matrices with the trace form.
LieAlgebra build_type_a(int rank);

std::vector<std::vector<int>> cartan_matrix_type_a(int rank);

// Sparse [[basis_index, "p/q"], ...] form of an element. Parsing rejects
// indices outside [0, dim) with a Schema error.
nlohmann::json element_to_json(const SparseElem& x);
SparseElem element_from_json(const nlohmann::json& j, int dim);

}  // namespace wildkz
