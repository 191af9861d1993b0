#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "curve.hpp"
#include "numerics.hpp"
#include "plane.hpp"
#include "vec.hpp"

namespace rotor {

// Speeds: A on the xy-plane, B on the xz-plane, C on the yz-plane projection.
struct SpaceKinematics {
  double D = 0, dD = 0, d2D = 0;
  double rot_speed = 0;
  double speed_A = 0, speed_B = 0, speed_C = 0;
};

// Rotation rate of the projected direction (p, q) with derivative (p', q'), signed.
inline double projected_rate(double p, double q, double dp, double dq, ErrorKind kind, double t) {
  double rr = p * p + q * q;
  if (!(std::sqrt(rr) > kEpsNorm)) throw PointError(kind, t, "projection vanishes");
  return (p * dq - dp * q) / rr;
}

inline SpaceKinematics vector_kinematics(Vec3 w, Vec3 w1, Vec3 w2, double t,
                                         ErrorKind projection_kind = ErrorKind::AxisProjectionDegenerate) {
  SpaceKinematics k;
  k.D = norm(w);
  double s = dot(w, w1);
  k.dD = s / k.D;
  k.d2D = -s * s / (k.D * k.D * k.D) + (dot(w1, w1) + dot(w, w2)) / k.D;
  k.rot_speed = norm(cross(w, w1)) / (k.D * k.D);
  k.speed_A = std::abs(projected_rate(w.x, w.y, w1.x, w1.y, projection_kind, t));
  k.speed_B = std::abs(projected_rate(w.x, w.z, w1.x, w1.z, projection_kind, t));
  k.speed_C = std::abs(projected_rate(w.y, w.z, w1.y, w1.z, projection_kind, t));
  return k;
}

inline SpaceKinematics space_distance_kinematics(const SpaceCurve& c, double t, Vec3 center = {}) {
  Vec3 w = c(t) - center;
  if (!(norm(w) > kEpsNorm)) throw PointError(ErrorKind::CenterOnCurve, t);
  return vector_kinematics(w, c.derivative(t, 1), c.derivative(t, 2), t);
}

// Kinematics of S - P, with P on curve a and S on curve b.
inline SpaceKinematics pair_kinematics(const SpaceCurve& a, const SpaceCurve& b, double t) {
  Vec3 w = b(t) - a(t);
  if (!(norm(w) > kEpsNorm)) throw PointError(ErrorKind::CurvesIntersect, t);
  return vector_kinematics(w, b.derivative(t, 1) - a.derivative(t, 1), b.derivative(t, 2) - a.derivative(t, 2),
                           t, ErrorKind::DegenerateProjection);
}

struct DerivativeFrame {
  Vec3 r1, r2, r3;
  double triple = 0;
};

inline DerivativeFrame derivative_frame(const SpaceCurve& c, double t) {
  DerivativeFrame f{c.derivative(t, 1), c.derivative(t, 2), c.derivative(t, 3), 0};
  f.triple = triple_product(f.r1, f.r2, f.r3);
  double scale = norm(f.r1) * norm(f.r2) * norm(f.r3);
  if (!(std::abs(f.triple) > kEpsNorm * scale) || scale == 0)
    throw PointError(ErrorKind::DegenerateFrame, t, "r' ^ r'' . r''' vanishes");
  return f;
}

struct BasisCoefficients {
  double g1 = 0, g2 = 0, g3 = 0;
};

inline BasisCoefficients coefficients_in(const DerivativeFrame& f, Vec3 v) {
  auto x = solve3(f.r1, f.r2, f.r3, v);
  return {x[0], x[1], x[2]};
}

// r(t + dt) - r(t) = g1 r'(t) + g2 r''(t) + g3 r'''(t)
inline BasisCoefficients basis_coefficients(const SpaceCurve& c, double t, double dt) {
  DerivativeFrame f = derivative_frame(c, t);
  if (dt == 0) return {};
  return coefficients_in(f, c(t + dt) - c(t));
}

// Rotational speeds of the chord's components in the planes (r',r''), (r',r'''), (r'',r'''),
// each obtained by dropping the third basis coordinate.
inline std::array<double, 3> derivative_plane_speeds(const SpaceCurve& c, double t, double dt) {
  if (!(dt > 0)) throw PointError(ErrorKind::DegenerateChord, t, "dt must be positive");
  DerivativeFrame f = derivative_frame(c, t);
  BasisCoefficients g = coefficients_in(f, c(t + dt) - c(t));
  BasisCoefficients dg = coefficients_in(f, c.derivative(t + dt, 1));
  double p11 = dot(f.r1, f.r1), p12 = dot(f.r1, f.r2), p13 = dot(f.r1, f.r3);
  double p22 = dot(f.r2, f.r2), p23 = dot(f.r2, f.r3), p33 = dot(f.r3, f.r3);
  auto check = [&](double a, double b, Vec3 u, Vec3 v) {
    if (!(norm(a * u + b * v) > 0)) throw PointError(ErrorKind::DegenerateProjection, t);
  };
  check(g.g1, g.g2, f.r1, f.r2);
  check(g.g1, g.g3, f.r1, f.r3);
  check(g.g2, g.g3, f.r2, f.r3);
  return {unit_direction_speed_gram(g.g1, g.g2, dg.g1, dg.g2, p11, p12, p22),
          unit_direction_speed_gram(g.g1, g.g3, dg.g1, dg.g3, p11, p13, p33),
          unit_direction_speed_gram(g.g2, g.g3, dg.g2, dg.g3, p22, p23, p33)};
}

struct DerivativePlaneLimits {
  double phi = 0;
  Vec3 psi12, psi13, psi23;
  int epsilon = 1;
};

inline DerivativePlaneLimits derivative_plane_limits(const SpaceCurve& c, double t) {
  Vec3 r1 = c.derivative(t, 1), r2 = c.derivative(t, 2), r3 = c.derivative(t, 3);
  double n1 = norm(r1), n2 = norm(r2);
  if (!(n1 > kEpsNorm) || !(n2 > kEpsNorm)) throw PointError(ErrorKind::SingularPoint, t);
  double tr = triple_product(r1, r2, r3);
  if (!(std::abs(tr) > kEpsNorm * n1 * n2 * norm(r3))) throw PointError(ErrorKind::DegenerateFrame, t);
  DerivativePlaneLimits l;
  l.phi = n1;
  l.psi12 = (-dot(r1, r2) * r1 + (n1 * n1) * r2) / (2 * n1 * n1 * n1);
  l.psi13 = {0, 0, 0};
  l.psi23 = (-dot(r2, r3) * r2 + (n2 * n2) * r3) / (3 * n2 * n2 * n2);
  l.epsilon = tr > 0 ? 1 : -1;
  return l;
}

struct InvariantTuple {
  double phi = 0, s12 = 0, s13 = 0, s23 = 0;
  int epsilon = 1;
};

inline InvariantTuple invariants(const SpaceCurve& c, double t) {
  DerivativePlaneLimits l = derivative_plane_limits(c, t);
  return {l.phi, norm(l.psi12), 0.0, norm(l.psi23), l.epsilon};
}

// Dot products of r', r'', r''' and curvature/torsion rebuilt from the invariant functions alone,
// next to the same quantities evaluated directly.
struct InvariantChain {
  // |r'|^2, r'.r'', |r''|^2, r''.r''', |r'''|^2, r'.r''', |r'^r''|^2, (r'^r''.r''')^2
  std::array<double, 8> from_invariants{}, direct{}, scale{};
  double kappa_chain = 0, kappa_direct = 0, tau_chain = 0, tau_direct = 0;

  double max_rel_deviation() const {
    double m = 0;
    for (std::size_t i = 0; i < 8; ++i) m = std::max(m, std::abs(from_invariants[i] - direct[i]) / scale[i]);
    m = std::max(m, std::abs(kappa_chain - kappa_direct) / std::abs(kappa_direct));
    m = std::max(m, std::abs(tau_chain - tau_direct) / std::abs(tau_direct));
    return m;
  }
};

inline InvariantChain invariant_chain(const SpaceCurve& c, double t) {
  auto phi = [&c](double s) { return invariants(c, s).phi; };
  auto s12 = [&c](double s) { return invariants(c, s).s12; };
  InvariantTuple v = invariants(c, t);
  double p = v.phi, p1 = ridders_derivative(phi, t, 0.05), p2 = ridders_second_derivative(phi, t, 0.05);
  double k = v.s12, k1 = ridders_derivative(s12, t, 0.05);
  double a = p * p;
  double b = p * p1;
  double cc = 4 * p * p * k * k + p1 * p1;
  double e = 4 * p * p1 * k * k + 4 * p * p * k * k1 + p1 * p2;
  double f = 9 * cc * v.s23 * v.s23 + e * e / cc;
  double g = p1 * p1 + p * p2 - cc;
  double area2 = a * cc - b * b;
  double triple2 = area2 * f - g * g * cc + 2 * g * e * b - e * e * a;

  Vec3 r1 = c.derivative(t, 1), r2 = c.derivative(t, 2), r3 = c.derivative(t, 3);
  double n1 = norm(r1), n2 = norm(r2), n3 = norm(r3);
  double tr = triple_product(r1, r2, r3);
  InvariantChain ch;
  ch.from_invariants = {a, b, cc, e, f, g, area2, triple2};
  ch.direct = {dot(r1, r1), dot(r1, r2), dot(r2, r2), dot(r2, r3),
               dot(r3, r3), dot(r1, r3), norm2(cross(r1, r2)), tr * tr};
  ch.scale = {n1 * n1, n1 * n2, n2 * n2, n2 * n3, n3 * n3, n1 * n3, n1 * n1 * n2 * n2,
              n1 * n1 * n2 * n2 * n3 * n3};
  ch.kappa_chain = std::sqrt(area2) / (a * std::sqrt(a));
  ch.tau_chain = v.epsilon * std::sqrt(std::max(0.0, triple2)) / area2;
  ch.kappa_direct = norm(cross(r1, r2)) / (n1 * n1 * n1);
  ch.tau_direct = tr / norm2(cross(r1, r2));
  return ch;
}

struct SpaceCongruenceReport {
  bool congruent = false;
  bool epsilon_match = true;
  double max_deviation = 0;
  double argmax_t = 0;
  double chain_max_rel_deviation = 0;
};

inline SpaceCongruenceReport space_congruent(const SpaceCurve& a, const SpaceCurve& b,
                                             const std::vector<double>& grid, double abs_tol = 1e-9,
                                             double rel_tol = 1e-9, double chain_tol = 1e-8) {
  SpaceCongruenceReport rep;
  bool values_match = true;
  for (double t : grid) {
    InvariantTuple ia = invariants(a, t), ib = invariants(b, t);
    if (ia.epsilon != ib.epsilon) rep.epsilon_match = false;
    for (auto [x, y] : {std::pair{ia.phi, ib.phi}, std::pair{ia.s12, ib.s12}, std::pair{ia.s13, ib.s13},
                        std::pair{ia.s23, ib.s23}}) {
      double dev = std::abs(x - y);
      if (dev > rep.max_deviation) rep.max_deviation = dev, rep.argmax_t = t;
      if (!within_tolerance(x, y, abs_tol, rel_tol)) values_match = false;
    }
    rep.chain_max_rel_deviation = std::max(
        {rep.chain_max_rel_deviation, invariant_chain(a, t).max_rel_deviation(),
         invariant_chain(b, t).max_rel_deviation()});
  }
  rep.congruent = values_match && rep.epsilon_match && rep.chain_max_rel_deviation <= chain_tol;
  return rep;
}

}  // namespace rotor
