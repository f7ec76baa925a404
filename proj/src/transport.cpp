// SPDX-License-Identifier: MIT
#include "wildkz/transport.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "wildkz/errors.hpp"

namespace wildkz {

namespace odeint = boost::numeric::odeint;
using State = std::vector<std::complex<double>>;

namespace {

CPoint segment_point(const PathSegment& seg, const CPoint& from, double s) {
  CPoint out(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) {
    switch (seg.kind) {
      case PathSegment::Kind::Linear:
        out[k] = from[k] + s * (seg.target[k] - from[k]);
        break;
      case PathSegment::Kind::Arc:
        out[k] = seg.center[k] + (from[k] - seg.center[k]) * std::exp(std::complex<double>(0, seg.angle * s));
        break;
      case PathSegment::Kind::Flow:
        out[k] = std::exp(2 * seg.a * s) * from[k] + s * seg.b;
        break;
    }
  }
  return out;
}

CPoint segment_velocity(const PathSegment& seg, const CPoint& from, double s) {
  CPoint out(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) {
    switch (seg.kind) {
      case PathSegment::Kind::Linear:
        out[k] = seg.target[k] - from[k];
        break;
      case PathSegment::Kind::Arc: {
        const std::complex<double> i(0, seg.angle);
        out[k] = i * (from[k] - seg.center[k]) * std::exp(i * s);
        break;
      }
      case PathSegment::Kind::Flow:
        out[k] = 2 * seg.a * std::exp(2 * seg.a * s) * from[k] + seg.b;
        break;
    }
  }
  return out;
}

double min_pairwise(const CPoint& t) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) d = std::min(d, std::abs(t[a] - t[b]));
  return d;
}

double diameter(const std::vector<CPoint>& pts) {
  double d = 0;
  for (const auto& p : pts)
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b) d = std::max(d, std::abs(p[a] - p[b]));
  return d;
}

void check_path(const PathSpec& path, std::size_t n) {
  if (path.start.size() != n) fail(ErrorKind::InvalidArgument, "path start needs one time per marked point");
  if (!(path.atol > 0) || !(path.rtol > 0)) fail(ErrorKind::InvalidArgument, "tolerances must be positive");
  for (const auto& seg : path.segments) {
    if (seg.kind == PathSegment::Kind::Linear && seg.target.size() != n)
      fail(ErrorKind::InvalidArgument, "linear segment needs one target per marked point");
    if (seg.kind == PathSegment::Kind::Arc && seg.center.size() != n)
      fail(ErrorKind::InvalidArgument, "arc segment needs one center per marked point");
  }
}

// Integrates dX/ds = A(s) X for a dim x cols state stored row-major.
TransportStats run(const OperatorFamily& fam, const PathSpec& path, State& x, std::size_t cols) {
  const std::size_t dim = fam.dim();
  const int n = fam.data().num_points();
  check_path(path, static_cast<std::size_t>(n));
  TransportStats stats;
  const auto pts = path.waypoints();
  // Sample the interior of curved segments too, so the floor is not
  // underestimated on arcs.
  std::vector<CPoint> samples = pts;
  for (std::size_t k = 0; k < path.segments.size(); ++k)
    for (int q = 1; q < 8; ++q) samples.push_back(segment_point(path.segments[k], pts[k], q / 8.0));
  stats.floor = path.floor_factor * diameter(samples);
  stats.min_distance = min_pairwise(path.start);
  if (stats.min_distance <= stats.floor) fail(ErrorKind::CoalescencePenalty, "path starts below the distance floor");

  std::vector<std::complex<double>> a(dim * dim);
  for (std::size_t k = 0; k < path.segments.size(); ++k) {
    const PathSegment& seg = path.segments[k];
    const CPoint& from = pts[k];
    auto rhs = [&](const State& y, State& dy, double s) {
      ++stats.rhs_evaluations;
      const CPoint t = segment_point(seg, from, s);
      const double d = min_pairwise(t);
      stats.min_distance = std::min(stats.min_distance, d);
      if (d <= stats.floor) fail(ErrorKind::CoalescencePenalty, "path comes closer than the distance floor");
      const CPoint v = segment_velocity(seg, from, s);
      std::fill(a.begin(), a.end(), std::complex<double>(0));
      for (int i = 0; i < n; ++i) {
        if (v[i] == 0.0) continue;
        const auto h = fam.hamiltonian_float(i, t);
        for (std::size_t q = 0; q < a.size(); ++q) a[q] += v[i] * h[q];
      }
      std::fill(dy.begin(), dy.end(), std::complex<double>(0));
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
          const std::complex<double> arc = a[r * dim + c];
          if (arc == 0.0) continue;
          for (std::size_t j = 0; j < cols; ++j) dy[r * cols + j] += arc * y[c * cols + j];
        }
    };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(path.atol, path.rtol);
    double s = 0, dt = 1e-3;
    std::size_t attempts = 0, steps = 0;
    while (s < 1.0) {
      if (s + dt > 1.0) dt = 1.0 - s;
      if (odeint::controlled_step_result::success == stepper.try_step(rhs, x, s, dt)) ++steps;
      if (s < 1.0 && (dt < 1e-14 || ++attempts > 2000000))
        fail(ErrorKind::StepUnderflow, "adaptive step size underflow");
    }
    stats.steps += steps;
    stats.error_bound += static_cast<double>(steps) * path.atol;
  }
  return stats;
}

}  // namespace

std::vector<CPoint> PathSpec::waypoints() const {
  std::vector<CPoint> out{start};
  for (const auto& seg : segments) out.push_back(segment_point(seg, out.back(), 1.0));
  return out;
}

PathSpec PathSpec::reversed() const {
  PathSpec out = *this;
  const auto pts = waypoints();
  out.start = pts.back();
  out.segments.clear();
  for (std::size_t k = segments.size(); k-- > 0;) {
    PathSegment seg = segments[k];
    switch (seg.kind) {
      case PathSegment::Kind::Linear:
        seg.target = pts[k];
        break;
      case PathSegment::Kind::Arc:
        seg.angle = -seg.angle;
        break;
      case PathSegment::Kind::Flow:
        fail(ErrorKind::InvalidArgument, "flow segments cannot be reversed");
    }
    out.segments.push_back(seg);
  }
  return out;
}

PathSpec PathSpec::then(const PathSpec& other) const {
  PathSpec out = *this;
  out.segments.insert(out.segments.end(), other.segments.begin(), other.segments.end());
  return out;
}

PathSpec PathSpec::loop_exchange(const CPoint& start, int i, int j, int half_turns) {
  PathSpec p;
  p.start = start;
  PathSegment seg;
  seg.kind = PathSegment::Kind::Arc;
  seg.center = start;
  const std::complex<double> mid = (start[i] + start[j]) / 2.0;
  seg.center[i] = mid;
  seg.center[j] = mid;
  seg.angle = M_PI * half_turns;
  p.segments.push_back(seg);
  return p;
}

namespace {

std::complex<double> complex_value(const nlohmann::json& v) {
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_string()) return {parse_rational(v.get<std::string>()).get_d(), 0.0};
  fail(ErrorKind::Schema, "complex value must be [re, im], a number or a rational string");
}

CPoint point_value(const nlohmann::json& v) {
  if (!v.is_array()) fail(ErrorKind::Schema, "a point must be an array of complex times");
  CPoint out;
  for (const auto& x : v) out.push_back(complex_value(x));
  return out;
}

}  // namespace

PathSpec PathSpec::from_json(const nlohmann::json& j) {
  PathSpec p;
  try {
    p.start = point_value(j.at("start"));
    for (const auto& sj : j.value("segments", nlohmann::json::array())) {
      PathSegment seg;
      const std::string kind = sj.value("kind", std::string("linear"));
      if (kind == "linear") {
        seg.kind = PathSegment::Kind::Linear;
        seg.target = point_value(sj.at("to"));
      } else if (kind == "arc") {
        seg.kind = PathSegment::Kind::Arc;
        seg.center = point_value(sj.at("center"));
        seg.angle = sj.at("angle").get<double>();
      } else if (kind == "flow") {
        seg.kind = PathSegment::Kind::Flow;
        seg.a = sj.value("a", 0.0);
        seg.b = sj.contains("b") ? complex_value(sj.at("b")) : std::complex<double>(0);
      } else {
        fail(ErrorKind::Schema, "unknown segment kind '" + kind + "'");
      }
      p.segments.push_back(seg);
    }
    p.atol = j.value("atol", p.atol);
    p.rtol = j.value("rtol", p.rtol);
    p.floor_factor = j.value("floor", p.floor_factor);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Schema, std::string("malformed path: ") + e.what());
  }
  return p;
}

TransportResult integrate(const OperatorFamily& fam, const PathSpec& path, const Eigen::VectorXcd& v0) {
  if (static_cast<std::size_t>(v0.size()) != fam.dim()) fail(ErrorKind::InvalidArgument, "initial vector has the wrong size");
  State x(v0.data(), v0.data() + v0.size());
  TransportResult out;
  out.stats = run(fam, path, x, 1);
  out.v = Eigen::Map<Eigen::VectorXcd>(x.data(), static_cast<Eigen::Index>(x.size()));
  return out;
}

MatrixTransportResult transport_matrix(const OperatorFamily& fam, const PathSpec& path) {
  const std::size_t d = fam.dim();
  State x(d * d);
  for (std::size_t k = 0; k < d; ++k) x[k * d + k] = 1.0;
  MatrixTransportResult out;
  out.stats = run(fam, path, x, d);
  out.m.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) out.m(r, c) = x[r * d + c];
  return out;
}

std::complex<double> trace_integral(const OperatorFamily& fam, const PathSpec& path) {
  const int n = fam.data().num_points();
  check_path(path, static_cast<std::size_t>(n));
  const auto pts = path.waypoints();
  const std::size_t d = fam.dim();
  State x{0.0};
  for (std::size_t k = 0; k < path.segments.size(); ++k) {
    const PathSegment& seg = path.segments[k];
    const CPoint& from = pts[k];
    auto rhs = [&](const State&, State& dy, double s) {
      const CPoint t = segment_point(seg, from, s);
      const CPoint v = segment_velocity(seg, from, s);
      std::complex<double> tr = 0;
      for (int i = 0; i < n; ++i) {
        const auto h = fam.hamiltonian_float(i, t);
        for (std::size_t q = 0; q < d; ++q) tr += v[i] * h[q * d + q];
      }
      dy[0] = tr;
    };
    odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(path.atol, path.rtol), rhs, x,
                               0.0, 1.0, 1e-3);
  }
  return x[0];
}

Eigen::MatrixXcd to_complex(const QMatrix& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

Eigen::MatrixXcd evaluate_hamiltonian(const OperatorFamily& fam, int i, const CPoint& t) {
  const auto h = fam.hamiltonian_float(i, t);
  const auto d = static_cast<Eigen::Index>(fam.dim());
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) out(r, c) = h[r * d + c];
  return out;
}

AffineReport affine_equivariance_check(const OperatorFamily& fam, const CPoint& t0, double a, std::complex<double> b,
                                       const Eigen::VectorXcd& v0, double atol, double rtol) {
  const auto d = static_cast<Eigen::Index>(fam.dim());
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < fam.data().num_points(); ++i) {
    const auto l0 = fam.dilation_float(i, t0);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) gen(r, c) += l0[r * d + c];
  }
  AffineReport rep;
  rep.predicted = a == 0.0 ? Eigen::VectorXcd(v0) : Eigen::VectorXcd((gen * a).exp() * v0);
  if (a == 0.0 && b == 0.0) {
    rep.transported = v0;
  } else {
    PathSpec path;
    path.start = t0;
    path.atol = atol;
    path.rtol = rtol;
    PathSegment seg;
    seg.kind = PathSegment::Kind::Flow;
    seg.a = a;
    seg.b = b;
    path.segments.push_back(seg);
    const TransportResult tr = integrate(fam, path, v0);
    rep.transported = tr.v;
    rep.stats = tr.stats;
  }
  rep.residual = d == 0 ? 0.0 : (rep.transported - rep.predicted).cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace wildkz
