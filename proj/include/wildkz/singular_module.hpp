// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wildkz/current_algebra.hpp"
#include "wildkz/lie_core.hpp"

namespace wildkz {

// chi(lambda, q, kappa). Functionals on h z^i are stored by their values on
// H_1..H_r (Dynkin labels for type A).
struct SingularCharacter {
  int p = 1;
  QVec lambda;
  std::vector<QVec> q;  // q[i-1] = a_i for i = 1..p-1
  Q kappa;

  const QVec& a(int i) const { return i == 0 ? lambda : q.at(i - 1); }
  void validate(const LieAlgebra& g) const;
};

// A PBW monomial is its sorted list of factors, ascending in (degree, basis).
// It stands for y_1 y_2 ... y_n w with y_1 the smallest factor.
using Mono = std::vector<Gen>;
using SparseVec = std::map<Mono, Q>;

void add_to(SparseVec& acc, const SparseVec& v, const Q& scale);

// Straightening engine for the affine singular module. The finite module is
// the span of monomials without negative-degree factors, and is stable under
// g[[z]]. Results are exact and unbounded; slices impose truncations.
class SingularModule {
 public:
  SingularModule(const LieAlgebra& g, SingularCharacter chi);

  const LieAlgebra& algebra() const { return *g_; }
  const SingularCharacter& character() const { return chi_; }
  int depth() const { return chi_.p; }

  // True for generators that appear as PBW factors.
  bool is_creation(const Gen& x) const;
  SparseVec act(const Gen& x, const Mono& m) const;
  SparseVec act(const Gen& x, const SparseVec& v) const;
  SparseVec act_word(const std::vector<Gen>& word, const SparseVec& v) const;  // rightmost first

  // nu with weight(m) = lambda - nu, in simple-root coordinates.
  RootVec depth_of(const Mono& m) const;
  static int negative_degree(const Mono& m);

 private:
  SparseVec base(const Gen& x) const;

  const LieAlgebra* g_;
  SingularCharacter chi_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Gen, Mono>, SparseVec> memo_;
};

std::string mono_label(const LieAlgebra& g, const Mono& m);

// A finite-dimensional slice with an indexed basis. The finite slice holds the
// monomials of root height at most d; the affine slice additionally allows a
// negative-degree part of total degree at most k.
class ModuleSlice {
 public:
  static ModuleSlice finite(const SingularModule& mod, int height);
  static ModuleSlice affine(const SingularModule& mod, int height, int neg_degree);

  const SingularModule& module() const { return *mod_; }
  int height() const { return height_; }
  int neg_degree() const { return neg_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Mono>& basis() const { return basis_; }
  int index_of(const Mono& m) const;  // -1 outside the slice
  int cyclic_index() const { return index_of(Mono{}); }
  bool contains(const Mono& m) const;
  // Basis indices grouped by nu (weight lambda - nu).
  const std::map<RootVec, std::vector<int>>& blocks() const { return blocks_; }
  const RootVec& depth_of_index(int i) const { return depths_[i]; }

  // Sparse image of a basis vector; nullopt if it leaves the slice.
  const std::optional<std::vector<std::pair<int, Q>>>& column(const Gen& x, int col) const;
  // Throws TruncationExceeded if the image leaves the slice.
  QVec act(const Gen& x, const QVec& v) const;
  QMatrix matrix(const Gen& x) const;
  QVec to_coords(const SparseVec& v) const;  // throws TruncationExceeded
  SparseVec from_coords(const QVec& v) const;

 private:
  ModuleSlice(const SingularModule& mod, int height, int neg) : mod_(&mod), height_(height), neg_(neg) {}
  void add_basis(const Mono& m);

  const SingularModule* mod_;
  int height_, neg_;
  std::vector<Mono> basis_;
  std::vector<RootVec> depths_;
  std::map<Mono, int> index_;
  std::map<RootVec, std::vector<int>> blocks_;
  std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  mutable std::map<Gen, std::vector<std::optional<std::vector<std::pair<int, Q>>>>> columns_;
};

// Brute-force count of PBW monomials of a given nu, independent of the slice
// machinery: depth-first search over nondecreasing generator sequences.
std::uint64_t brute_force_pbw_count(const LieAlgebra& g, int p, const RootVec& nu);

enum class Theta { Dual, Contragredient };

// Restricted theta-dual of a finite slice: X . psi = psi o theta(X).
// Coordinates are taken in the basis dual to the slice PBW basis.
class DualModuleSlice {
 public:
  DualModuleSlice(const ModuleSlice& base, Theta theta) : base_(&base), theta_(theta) {}
  const ModuleSlice& base() const { return *base_; }
  Theta theta() const { return theta_; }
  Gen theta_of(const Gen& x, Q& sign) const;
  QVec act(const Gen& x, const QVec& phi) const;  // throws TruncationExceeded
  QVec cyclic() const;                            // psi dual to w
  // Weight of psi_b in H-values.
  QVec weight_of(int b) const;

 private:
  const ModuleSlice* base_;
  Theta theta_;
};

// M_{jk} = coefficient of b in E_alpha z^j F_alpha z^k b, for a basis vector b
// of the finite slice.
QMatrix shapovalov_matrix(const ModuleSlice& slice, int basis_index, int root);
Q obstruction_determinant(const ModuleSlice& slice, int basis_index, int root);
// Pairing of sum_j b_j theta^{-1}(E_alpha) z^j psi with F_alpha z^{p-1} w.
Q candidate_pairing(const ModuleSlice& slice, int root, const QVec& b);
// Per-weight Gram matrices of the contragredient form S(u, v) = <Phi(u), v>.
std::map<RootVec, QMatrix> shapovalov_pairing(const ModuleSlice& slice);

// Sugawara L_n applied through the straightening engine.
SparseVec sugawara_apply(const SingularModule& mod, int n, const SparseVec& v);

struct EigenCheck {
  int n = 0;
  bool eigen = false;      // L_n w is a multiple of w
  Q computed;              // the multiple
  std::optional<Q> closed; // closed-form value where available
  bool pass = false;
};
// Closed forms for n >= p - 1; nullopt when none is known.
std::optional<Q> sugawara_closed_form(const LieAlgebra& g, const SingularCharacter& chi, int n);
EigenCheck sugawara_eigencheck(const SingularModule& mod, int n);
// [L_{-1}, X z^m] v = -m X z^{m-1} v; returns the residual vector.
SparseVec sugawara_commutator_residual(const SingularModule& mod, const Gen& x, const Mono& v);

Q level_shift(const LieAlgebra& g, const Q& kappa);  // kappa + h^vee, CriticalLevel if zero

}  // namespace wildkz
