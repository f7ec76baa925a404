// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "json.hpp"
#include "wildkz/kz_connection.hpp"

namespace wildkz {

using CPoint = std::vector<std::complex<double>>;

struct PathSegment {
  enum class Kind { Linear, Arc, Flow };
  Kind kind = Kind::Linear;
  CPoint target;          // Linear: end point
  CPoint center;          // Arc: t_j(s) = c_j + (t_j(0) - c_j) exp(i angle s)
  double angle = 0;
  double a = 0;           // Flow: t(s) = exp(2 a s) t(0) + s b
  std::complex<double> b;
};

struct PathSpec {
  CPoint start;
  std::vector<PathSegment> segments;
  double atol = 1e-12;
  double rtol = 1e-12;
  double floor_factor = 1e-3;  // distance floor as a fraction of the path diameter

  // Start point of every segment plus the final point.
  std::vector<CPoint> waypoints() const;
  CPoint end() const { return waypoints().back(); }
  PathSpec reversed() const;  // Flow segments are not reversible
  PathSpec then(const PathSpec& other) const;
  static PathSpec from_json(const nlohmann::json& j);
  static PathSpec loop_exchange(const CPoint& start, int i, int j, int half_turns = 2);
};

struct TransportStats {
  std::size_t steps = 0;
  std::size_t rhs_evaluations = 0;
  double min_distance = 0;
  double floor = 0;
  double error_bound = 0;  // accumulated local tolerance
};

struct TransportResult {
  Eigen::VectorXcd v;
  TransportStats stats;
};

struct MatrixTransportResult {
  Eigen::MatrixXcd m;
  TransportStats stats;
};

// Solves dv/ds = sum_i gamma_i'(s) H_i(gamma(s)) v with adaptive Dormand-Prince
// steps. Throws CoalescencePenalty when two points come closer than the floor
// and StepUnderflow when the stepper cannot make progress.
TransportResult integrate(const OperatorFamily& fam, const PathSpec& path, const Eigen::VectorXcd& v0);
MatrixTransportResult transport_matrix(const OperatorFamily& fam, const PathSpec& path);
inline MatrixTransportResult monodromy(const OperatorFamily& fam, const PathSpec& loop) { return transport_matrix(fam, loop); }

// Integral of tr(sum_i gamma_i' H_i) along the path.
std::complex<double> trace_integral(const OperatorFamily& fam, const PathSpec& path);

Eigen::MatrixXcd to_complex(const QMatrix& m);
Eigen::MatrixXcd evaluate_hamiltonian(const OperatorFamily& fam, int i, const CPoint& t);

// Transports v0 along t -> exp(2 a s) t + s b and compares with
// exp(a sum_i L_0^{(i)}(t)) v0. Returns the max-norm residual.
struct AffineReport {
  double residual = 0;
  Eigen::VectorXcd transported, predicted;
  TransportStats stats;
};
AffineReport affine_equivariance_check(const OperatorFamily& fam, const CPoint& t0, double a, std::complex<double> b,
                                       const Eigen::VectorXcd& v0, double atol = 1e-12, double rtol = 1e-12);

}  // namespace wildkz
