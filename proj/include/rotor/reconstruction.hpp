#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>

#include "curve.hpp"
#include "plane.hpp"
#include "space.hpp"
#include "vec.hpp"

namespace rotor {

using DirectionField2 = std::function<Vec2(double, Vec2)>;

template <class V>
struct Trajectory {
  std::vector<double> t;
  std::vector<V> points;
  double max_drift = 0;     // largest | |e| - 1 | seen before renormalization
  double max_residual = 0;  // 3D only: mismatch between recovered point and the three directions
};

struct DirectionSamples {
  std::vector<double> t;
  std::vector<Vec2> e;
  double max_drift = 0;
};

namespace detail {

using State = std::vector<double>;

inline int step_count(double t0, double t1, double step) {
  if (!(step > 0) || !(t1 > t0)) fail(ErrorKind::BadParameters, "need step > 0 and t1 > t0");
  double n = std::ceil((t1 - t0) / step - 1e-9);
  if (n > 1e8) fail(ErrorKind::BadParameters, "too many steps");
  return std::max(1, static_cast<int>(n));
}

// Fixed-step classical RK4 on [t0, t1] with n equal steps; after(i, t, x) runs after each step.
template <class Rhs, class After>
void rk4_march(Rhs&& rhs, State& x, double t0, double t1, int n, After&& after) {
  boost::numeric::odeint::runge_kutta4<State> stepper;
  auto sys = [&rhs](const State& s, State& ds, double t) { rhs(s, ds, t); };
  for (int i = 0; i < n; ++i) {
    double t = t0 + (t1 - t0) * i / n;
    double h = (t0 + (t1 - t0) * (i + 1) / n) - t;
    stepper.do_step(sys, x, t, h);
    after(i + 1, t + h, x);
  }
}

inline void check_tangent(const DirectionField2& f, double t, Vec2 e) {
  Vec2 d = f(t, e);
  if (std::abs(dot(d, e)) > 1e-8 * std::max(1.0, norm(d)))
    throw PointError(ErrorKind::NonTangentField, t, "field not tangent to the unit circle");
}

inline double renormalize(State& x, std::size_t at) {
  double n = std::hypot(x[at], x[at + 1]);
  x[at] /= n;
  x[at + 1] /= n;
  return std::abs(n - 1);
}

inline std::string at_step(int i, int n) { return "at step " + std::to_string(i) + " of " + std::to_string(n); }

inline void check_unit(Vec2 e, const char* what) {
  if (std::abs(norm(e) - 1) > 1e-12) fail(ErrorKind::BadParameters, std::string(what) + " must be a unit vector");
}

}  // namespace detail

inline DirectionSamples integrate_unit_direction(const DirectionField2& rhs_e, Vec2 e0, double t0, double t1,
                                                 double step) {
  detail::check_unit(e0, "e0");
  int n = detail::step_count(t0, t1, step);
  DirectionSamples out;
  out.t.push_back(t0);
  out.e.push_back(e0);
  detail::State x{e0.x, e0.y};
  detail::check_tangent(rhs_e, t0, e0);
  auto rhs = [&rhs_e](const detail::State& s, detail::State& ds, double t) {
    Vec2 d = rhs_e(t, {s[0], s[1]});
    ds = {d.x, d.y};
  };
  detail::rk4_march(rhs, x, t0, t1, n, [&](int, double t, detail::State& s) {
    out.max_drift = std::max(out.max_drift, detail::renormalize(s, 0));
    out.t.push_back(t);
    out.e.push_back({s[0], s[1]});
    detail::check_tangent(rhs_e, t, {s[0], s[1]});
  });
  return out;
}

// Distance data: either dD(t), or d2D(t) with the initial rate dD0.
struct DistanceData {
  std::function<double(double)> dD;
  std::function<double(double)> d2D;
  double dD0 = 0;
  bool second_order() const { return static_cast<bool>(d2D); }
};

struct PlaneReconstructionProblem {
  DistanceData distance;
  DirectionField2 rhs_e;
  double D0 = 1;
  Vec2 e0{1, 0};
  Vec2 center{};
  double t0 = 0, t1 = 1, step = 1e-3;
};

inline Trajectory<Vec2> reconstruct_plane(const PlaneReconstructionProblem& p) {
  detail::check_unit(p.e0, "e0");
  if (!(p.D0 > 0)) fail(ErrorKind::BadParameters, "D0 must be positive");
  if (!p.distance.dD && !p.distance.d2D) fail(ErrorKind::BadParameters, "missing distance data");
  const bool second = p.distance.second_order();
  const std::size_t ie = second ? 2 : 1;
  int n = detail::step_count(p.t0, p.t1, p.step);

  detail::State x = {p.D0};
  if (second) x.push_back(p.distance.dD0);
  x.push_back(p.e0.x);
  x.push_back(p.e0.y);

  Trajectory<Vec2> out;
  out.t.push_back(p.t0);
  out.points.push_back(p.center + p.D0 * p.e0);
  detail::check_tangent(p.rhs_e, p.t0, p.e0);

  auto rhs = [&](const detail::State& s, detail::State& ds, double t) {
    ds.assign(s.size(), 0.0);
    if (second) {
      ds[0] = s[1];
      ds[1] = p.distance.d2D(t);
    } else {
      ds[0] = p.distance.dD(t);
    }
    Vec2 d = p.rhs_e(t, {s[ie], s[ie + 1]});
    ds[ie] = d.x;
    ds[ie + 1] = d.y;
  };
  detail::rk4_march(rhs, x, p.t0, p.t1, n, [&](int i, double t, detail::State& s) {
    out.max_drift = std::max(out.max_drift, detail::renormalize(s, ie));
    if (!(s[0] > 0))
      throw PointError(ErrorKind::StepTooLarge, t, "distance left (0, inf) " + detail::at_step(i, n));
    Vec2 e{s[ie], s[ie + 1]};
    detail::check_tangent(p.rhs_e, t, e);
    out.t.push_back(t);
    out.points.push_back(p.center + s[0] * e);
  });
  return out;
}

// Directions of the projections on the xy (A), xz (B) and yz (C) coordinate planes.
struct SpaceReconstructionProblem {
  DistanceData distance;
  DirectionField2 rhs_A, rhs_B, rhs_C;
  double D0 = 1;
  Vec2 eA0{1, 0}, eB0{1, 0}, eC0{1, 0};
  double t0 = 0, t1 = 1, step = 1e-3;
  double collapse_tol = 1e-3;
  double residual_tol = 1e-6;
};

struct Triangulation {
  Vec3 u;
  double residual = 0;
};

// Unit vector along (x, y, z) from the directions of (x, y), (x, z), (y, z).
// The x:y ratio comes from eA and y:z from eC; eB is the consistency check.
inline Triangulation triangulate(Vec2 eA, Vec2 eB, Vec2 eC, const Vec3* previous) {
  Vec3 w{eA.x * eC.x, eA.y * eC.x, eA.y * eC.y};
  Vec3 u = w / norm(w);
  bool flip = previous ? dot(u, *previous) < 0 : eA.y < 0;
  if (flip) u = -u;
  auto mismatch = [](double p, double q, Vec2 e) {
    double n = std::hypot(p, q);
    return std::hypot(p / n - e.x, q / n - e.y);
  };
  double r = std::max({mismatch(u.x, u.y, eA), mismatch(u.x, u.z, eB), mismatch(u.y, u.z, eC)});
  return {u, r};
}

inline Trajectory<Vec3> reconstruct_space(const SpaceReconstructionProblem& p) {
  detail::check_unit(p.eA0, "eA0");
  detail::check_unit(p.eB0, "eB0");
  detail::check_unit(p.eC0, "eC0");
  if (!(p.D0 > 0)) fail(ErrorKind::BadParameters, "D0 must be positive");
  if (!p.distance.dD && !p.distance.d2D) fail(ErrorKind::BadParameters, "missing distance data");

  auto collapsed = [&](Vec2 a, Vec2 b, Vec2 c) {
    for (double v : {a.x, a.y, b.x, b.y, c.x, c.y})
      if (std::abs(v) < p.collapse_tol) return true;
    return false;
  };
  if (collapsed(p.eA0, p.eB0, p.eC0)) throw PointError(ErrorKind::ProjectionCollapse, p.t0, "at start");
  Triangulation tri = triangulate(p.eA0, p.eB0, p.eC0, nullptr);
  if (tri.residual > p.residual_tol)
    throw PointError(ErrorKind::InconsistentDirections, p.t0, "initial residual " + std::to_string(tri.residual));

  const bool second = p.distance.second_order();
  const std::size_t ie = second ? 2 : 1;
  int n = detail::step_count(p.t0, p.t1, p.step);
  detail::State x = {p.D0};
  if (second) x.push_back(p.distance.dD0);
  for (Vec2 e : {p.eA0, p.eB0, p.eC0}) {
    x.push_back(e.x);
    x.push_back(e.y);
  }
  const DirectionField2* fields[3] = {&p.rhs_A, &p.rhs_B, &p.rhs_C};

  Trajectory<Vec3> out;
  out.t.push_back(p.t0);
  out.points.push_back(p.D0 * tri.u);
  out.max_residual = tri.residual;
  Vec3 prev_u = tri.u;
  Vec2 prev[3] = {p.eA0, p.eB0, p.eC0};
  for (int k = 0; k < 3; ++k) detail::check_tangent(*fields[k], p.t0, prev[k]);

  auto rhs = [&](const detail::State& s, detail::State& ds, double t) {
    ds.assign(s.size(), 0.0);
    if (second) {
      ds[0] = s[1];
      ds[1] = p.distance.d2D(t);
    } else {
      ds[0] = p.distance.dD(t);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      std::size_t at = ie + 2 * k;
      Vec2 d = (*fields[k])(t, {s[at], s[at + 1]});
      ds[at] = d.x;
      ds[at + 1] = d.y;
    }
  };
  detail::rk4_march(rhs, x, p.t0, p.t1, n, [&](int i, double t, detail::State& s) {
    Vec2 e[3];
    for (std::size_t k = 0; k < 3; ++k) {
      out.max_drift = std::max(out.max_drift, detail::renormalize(s, ie + 2 * k));
      e[k] = {s[ie + 2 * k], s[ie + 2 * k + 1]};
      detail::check_tangent(*fields[k], t, e[k]);
      bool sign_change = (e[k].x < 0) != (prev[k].x < 0) || (e[k].y < 0) != (prev[k].y < 0);
      if (sign_change) throw PointError(ErrorKind::ProjectionCollapse, t, detail::at_step(i, n));
      prev[k] = e[k];
    }
    if (collapsed(e[0], e[1], e[2])) throw PointError(ErrorKind::ProjectionCollapse, t, detail::at_step(i, n));
    if (!(s[0] > 0))
      throw PointError(ErrorKind::StepTooLarge, t, "distance left (0, inf) " + detail::at_step(i, n));
    Triangulation tr = triangulate(e[0], e[1], e[2], &prev_u);
    if (tr.residual > p.residual_tol)
      throw PointError(ErrorKind::InconsistentDirections, t, "residual " + std::to_string(tr.residual));
    out.max_residual = std::max(out.max_residual, tr.residual);
    prev_u = tr.u;
    out.t.push_back(t);
    out.points.push_back(s[0] * tr.u);
  });
  return out;
}

// Motion data generated from a known curve: distance rate and signed rotation rate about center.

inline DirectionField2 rotation_field(std::function<double(double)> omega) {
  return [omega = std::move(omega)](double t, Vec2 e) { return omega(t) * perp(e); };
}

inline PlaneReconstructionProblem plane_problem_from_curve(const PlaneCurve& c, Vec2 center, double t0, double t1,
                                                           double step, bool second_order) {
  PlaneReconstructionProblem p;
  if (second_order) {
    p.distance.d2D = [c, center](double t) { return distance_kinematics(c, center, t).d2D; };
    p.distance.dD0 = distance_kinematics(c, center, t0).dD;
  } else {
    p.distance.dD = [c, center](double t) { return distance_kinematics(c, center, t).dD; };
  }
  p.rhs_e = rotation_field([c, center](double t) {
    Vec2 w = c(t) - center;
    return cross(w, c.derivative(t, 1)) / dot(w, w);
  });
  FrameSample2 f = frame_at(c, center, t0);
  p.D0 = f.xi;
  p.e0 = f.e1;
  p.center = center;
  p.t0 = t0;
  p.t1 = t1;
  p.step = step;
  return p;
}

inline SpaceReconstructionProblem space_problem_from_curve(const SpaceCurve& c, double t0, double t1, double step,
                                                           bool second_order) {
  SpaceReconstructionProblem p;
  if (second_order) {
    p.distance.d2D = [c](double t) { return space_distance_kinematics(c, t).d2D; };
    p.distance.dD0 = space_distance_kinematics(c, t0).dD;
  } else {
    p.distance.dD = [c](double t) { return space_distance_kinematics(c, t).dD; };
  }
  auto rate = [c](int a, int b) {
    return [c, a, b](double t) {
      Vec3 r = c(t), d = c.derivative(t, 1);
      double ra[3] = {r.x, r.y, r.z}, da[3] = {d.x, d.y, d.z};
      return (ra[a] * da[b] - da[a] * ra[b]) / (ra[a] * ra[a] + ra[b] * ra[b]);
    };
  };
  p.rhs_A = rotation_field(rate(0, 1));
  p.rhs_B = rotation_field(rate(0, 2));
  p.rhs_C = rotation_field(rate(1, 2));
  Vec3 r0 = c(t0);
  p.D0 = norm(r0);
  auto dir = [](double a, double b) {
    double n = std::hypot(a, b);
    if (!(n > kEpsNorm)) fail(ErrorKind::ProjectionCollapse, "projection vanishes at start");
    return Vec2{a / n, b / n};
  };
  p.eA0 = dir(r0.x, r0.y);
  p.eB0 = dir(r0.x, r0.z);
  p.eC0 = dir(r0.y, r0.z);
  p.t0 = t0;
  p.t1 = t1;
  p.step = step;
  return p;
}

template <class V, class F>
double max_error(const Trajectory<V>& tr, F&& exact) {
  double m = 0;
  for (std::size_t i = 0; i < tr.t.size(); ++i) m = std::max(m, norm(tr.points[i] - exact(tr.t[i])));
  return m;
}

}  // namespace rotor
