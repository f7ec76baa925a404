// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "wildkz/current_algebra.hpp"
#include "wildkz/tensor_slice.hpp"

namespace wildkz {

struct RMatrixValue {
  Q t;
  CurrentTensor tensor;
};

// Replaces the binomial C(m+l, l) by C(m+l, l) + delta for one (m, l). Only
// used to build negative controls.
struct Corruption {
  int m = 0;
  int l = 0;
  Q delta;
};

// r_p(t) = -sum_{m,l<p} (-1)^m C(m+l,l) t^{-1-m-l} Omega_{ml}.
RMatrixValue r_matrix(const LieAlgebra& g, int p, const Q& t, const std::optional<Corruption>& corrupt = {});
// s_p(t) = sum C(m+l,l) t^l Omega_{m,m+l+1}, both degrees below p.
RMatrixValue s_matrix(const LieAlgebra& g, int p, const Q& t);

// r_p(t) + flip(r_p(-t)).
CurrentTensor skew_residual(const LieAlgebra& g, int p, const Q& t);

// [A^{(ab)}, B^{(cd)}] in g_p^{(x)n} for two arity-two tensors whose slot pairs
// share exactly one slot.
CurrentTensor embedded_commutator(const LieAlgebra& g, int p, int n, const CurrentTensor& a, std::pair<int, int> sa,
                                  const CurrentTensor& b, std::pair<int, int> sb);

CurrentTensor cybe_residual(const LieAlgebra& g, int p, const Q& t1, const Q& t2, const Q& t3,
                            const std::optional<Corruption>& corrupt = {});

// sum_k [Omega^{(ij)}_{ml}, X^{(k)}] written in normal form. For i != j the
// quadratic part is a tensor over slots (i, j); for i == j it is reduced to
// PBW-ordered words in U(g[z]) of slot i.
struct EquivarianceResidual {
  std::map<std::pair<Gen, Gen>, Q> quadratic;
  std::map<Gen, Q> linear;
  bool is_zero() const { return quadratic.empty() && linear.empty(); }
};
EquivarianceResidual g_equivariance_residual(const LieAlgebra& g, int i, int j, int m, int l, int x, int n);

// ---------------------------------------------------------------------------
// Hamiltonians as sums of (scalar function of t) x (constant operator).

// c (t_i - t_j)^e, c t_i^e, or the constant c.
struct Coef {
  enum class Kind { Const, Pair, Power };
  Kind kind = Kind::Const;
  int i = 0, j = 0, e = 0;
  Q c;

  Q eval(const std::vector<Q>& t) const;
  std::complex<double> eval(const std::vector<std::complex<double>>& t) const;
  // Partial derivative in t_k.
  std::optional<Coef> derivative(int k) const;
};

struct QuadOp {  // Omega^{(ab)}_{ml}, a != b; slot n is infinity when present
  int a, b, m, l;
  friend bool operator<(const QuadOp& x, const QuadOp& y) {
    return std::tie(x.a, x.b, x.m, x.l) < std::tie(y.a, y.b, y.m, y.l);
  }
  friend bool operator==(const QuadOp& x, const QuadOp& y) {
    return std::tie(x.a, x.b, x.m, x.l) == std::tie(y.a, y.b, y.m, y.l);
  }
};
struct CartanOp {  // sum_k h_k H_k acting at one slot
  int slot;
  QVec h;
  friend bool operator<(const CartanOp& x, const CartanOp& y) { return std::tie(x.slot, x.h) < std::tie(y.slot, y.h); }
  friend bool operator==(const CartanOp& x, const CartanOp& y) { return x.slot == y.slot && x.h == y.h; }
};
using Op = std::variant<QuadOp, CartanOp>;

struct HamiltonianTerm {
  Coef coef;
  int op = 0;          // index into ConnectionData::ops()
  std::string source;  // "finite", "infinity", "dynamical" or "dilation"
};

struct ConnectionSpec {
  std::vector<int> depths;        // r_j of the finite slots
  std::optional<int> infinity;    // r_infinity when infinity is a tensor slot
  std::optional<QVec> dynamical;  // mu, as values on H_1..H_r
  Q kappa;
  std::optional<Corruption> corrupt;
};

// Term lists of every Hamiltonian and dilation generator. Operators are
// deduplicated so that their matrices are computed once.
class ConnectionData {
 public:
  ConnectionData(const LieAlgebra& g, ConnectionSpec spec);

  const LieAlgebra& algebra() const { return *g_; }
  const ConnectionSpec& spec() const { return spec_; }
  int num_points() const { return static_cast<int>(spec_.depths.size()); }
  Q shift() const { return shift_; }
  const std::vector<Op>& ops() const { return ops_; }
  const std::vector<HamiltonianTerm>& hamiltonian(int i) const { return ham_.at(i); }
  // L_0^{(i)}; requires a tame infinity.
  const std::vector<HamiltonianTerm>& dilation(int i) const;

 private:
  int intern(const Op& op);

  const LieAlgebra* g_;
  ConnectionSpec spec_;
  Q shift_;
  std::vector<Op> ops_;
  std::vector<std::vector<HamiltonianTerm>> ham_, dil_;
};

// d_i H_j - d_j H_i collected in a canonical symbolic form; empty when the
// exterior derivative of the connection form vanishes.
std::map<std::string, Q> derivative_residual(const ConnectionData& data, int i, int j);

// Exact matrix of a single operator on one block of a tensor space.
QMatrix op_matrix(const LieAlgebra& g, const TensorSpace& space, const TensorSpace::Block& block, const Op& op);

struct ConnectionOperator {
  std::vector<Q> point;
  int slot = 0;
  QMatrix matrix;
  std::vector<std::string> provenance;
};

// Exact operator matrices of a ConnectionData on a fixed space (a tensor block
// or, after reduction, a coinvariant quotient).
class OperatorFamily {
 public:
  OperatorFamily(const ConnectionData& data, std::vector<QMatrix> matrices);
  static OperatorFamily on_block(const ConnectionData& data, const TensorSpace& space, const TensorSpace::Block& block);

  const ConnectionData& data() const { return *data_; }
  std::size_t dim() const { return dim_; }
  const std::vector<QMatrix>& matrices() const { return mats_; }

  ConnectionOperator hamiltonian(int i, const std::vector<Q>& t) const;
  ConnectionOperator dilation(int i, const std::vector<Q>& t) const;
  // [H_i(t), H_j(t)].
  QMatrix flatness_residual(int i, int j, const std::vector<Q>& t) const;

  // Float evaluation for transport.
  std::vector<std::complex<double>> hamiltonian_float(int i, const std::vector<std::complex<double>>& t) const;
  std::vector<std::complex<double>> dilation_float(int i, const std::vector<std::complex<double>>& t) const;

 private:
  ConnectionOperator evaluate(const std::vector<HamiltonianTerm>& terms, int i, const std::vector<Q>& t) const;
  std::vector<std::complex<double>> evaluate_float(const std::vector<HamiltonianTerm>& terms,
                                                   const std::vector<std::complex<double>>& t) const;

  const ConnectionData* data_;
  std::vector<QMatrix> mats_;
  std::vector<std::vector<std::complex<double>>> fmats_;
  std::size_t dim_ = 0;
};

void check_distinct(const std::vector<Q>& t);

}  // namespace wildkz
