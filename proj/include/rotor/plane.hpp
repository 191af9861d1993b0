#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "curve.hpp"
#include "numerics.hpp"
#include "vec.hpp"

namespace rotor {

struct FrameSample2 {
  Vec2 e1, e2;
  double xi = 0;
  double eta = 0;
};

struct PlaneKinematics {
  double D = 0, dD = 0, d2D = 0;
  Vec2 rot_velocity;
  double rot_speed = 0;
};

struct LocalLimits2 {
  double phi = 0, phi_prime = 0;
  Vec2 psi;
  double psi_speed = 0;
};

inline FrameSample2 frame_at(const PlaneCurve& c, Vec2 center, double t) {
  Vec2 d = c(t) - center;
  double xi = norm(d);
  if (!(xi > kEpsNorm)) throw PointError(ErrorKind::CenterOnCurve, t);
  Vec2 e1 = d / xi;
  return {e1, perp(e1), xi, 0.0};
}

// Distance and rotation of w(t) = r(t) - center, given w, w', w''.
inline PlaneKinematics vector_kinematics(Vec2 w, Vec2 w1, Vec2 w2) {
  PlaneKinematics k;
  k.D = norm(w);
  double s = dot(w, w1);
  k.dD = s / k.D;
  k.d2D = -s * s / (k.D * k.D * k.D) + (dot(w1, w1) + dot(w, w2)) / k.D;
  double c = cross(w, w1);
  k.rot_velocity = (c / (k.D * k.D * k.D)) * perp(w);
  k.rot_speed = std::abs(c) / (k.D * k.D);
  return k;
}

inline PlaneKinematics distance_kinematics(const PlaneCurve& c, Vec2 center, double t) {
  Vec2 w = c(t) - center;
  if (!(norm(w) > kEpsNorm)) throw PointError(ErrorKind::CenterOnCurve, t);
  return vector_kinematics(w, c.derivative(t, 1), c.derivative(t, 2));
}

// Chord frame at P = r(t) tracking Q = r(t + dt), dt > 0: rates with respect to dt.
inline PlaneKinematics chord_kinematics(const PlaneCurve& c, double t, double dt) {
  if (!(dt > 0)) throw PointError(ErrorKind::DegenerateChord, t, "dt must be positive");
  Vec2 p0 = c(t), p1 = c(t + dt);
  Vec2 f = p1 - p0;
  double D = norm(f);
  if (!(D > 0)) throw PointError(ErrorKind::DegenerateChord, t);
  Vec2 v = c.derivative(t + dt, 1);
  PlaneKinematics k;
  k.D = D;
  k.dD = dot(f, v) / D;
  double cr = cross(f, v);
  // Below the rounding floor of f the chord is parallel to v (a line gives exactly 0).
  if (std::abs(cr) <= 8 * std::numeric_limits<double>::epsilon() * (norm(p0) + norm(p1)) * norm(v)) cr = 0;
  k.rot_velocity = (cr / (D * D * D)) * perp(f);
  k.rot_speed = std::abs(cr) / (D * D);
  Vec2 a = c.derivative(t + dt, 2);
  k.d2D = -k.dD * k.dD / D + (dot(v, v) + dot(f, a)) / D;
  return k;
}

inline LocalLimits2 local_limits(const PlaneCurve& c, double t) {
  Vec2 r1 = c.derivative(t, 1), r2 = c.derivative(t, 2);
  double s2 = dot(r1, r1);
  double phi = std::sqrt(s2);
  if (!(phi > kEpsNorm)) throw PointError(ErrorKind::SingularPoint, t);
  LocalLimits2 l;
  l.phi = phi;
  l.phi_prime = dot(r1, r2) / phi;
  double w = cross(r1, r2);
  l.psi = (w / (2 * s2 * phi)) * perp(r1);
  l.psi_speed = std::abs(w) / (2 * s2);
  return l;
}

// Extrapolates a quantity q(dt) sampled on a geometric ladder to dt -> 0+.
template <class F>
double ladder_limit(F&& q, const std::vector<double>& dts) {
  std::vector<double> vals;
  vals.reserve(dts.size());
  for (double dt : dts) vals.push_back(q(dt));
  return richardson_extrapolate(dts, vals);
}

struct CongruenceReport {
  bool congruent = false;
  double max_deviation = 0;
  double argmax_t = 0;
};

inline bool within_tolerance(double x, double y, double abs_tol = 1e-9, double rel_tol = 1e-9) {
  return std::abs(x - y) <= abs_tol + rel_tol * std::max(std::abs(x), std::abs(y));
}

// Compares phi and |psi| pointwise on a shared parameter grid.
inline CongruenceReport plane_congruent(const PlaneCurve& a, const PlaneCurve& b, const std::vector<double>& grid,
                                        double abs_tol = 1e-9, double rel_tol = 1e-9) {
  CongruenceReport rep;
  rep.congruent = true;
  for (double t : grid) {
    LocalLimits2 la = local_limits(a, t), lb = local_limits(b, t);
    for (auto [x, y] : {std::pair{la.phi, lb.phi}, std::pair{la.psi_speed, lb.psi_speed}}) {
      double dev = std::abs(x - y);
      if (dev > rep.max_deviation) rep.max_deviation = dev, rep.argmax_t = t;
      if (!within_tolerance(x, y, abs_tol, rel_tol)) rep.congruent = false;
    }
  }
  return rep;
}

}  // namespace rotor
