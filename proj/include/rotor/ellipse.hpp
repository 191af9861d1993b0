#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "curve.hpp"
#include "numerics.hpp"
#include "plane.hpp"
#include "reconstruction.hpp"

namespace rotor {

struct EllipseParams {
  double a = 2, b = 1, c = std::sqrt(3.0);

  // allow_circle admits a == b, used to probe the circle limit
  static EllipseParams make(double a, double b, bool allow_circle = false) {
    bool ok = b > 0 && (allow_circle ? a >= b : a > b);
    if (!ok) fail(ErrorKind::BadParameters, "ellipse needs a > b > 0");
    return {a, b, std::sqrt((a - b) * (a + b))};
  }

  Vec2 focus() const { return {c, 0}; }
  Vec2 point(double th) const { return {a * std::cos(th), b * std::sin(th)}; }
};

inline PlaneKinematics origin_frame_profile(const EllipseParams& p, double th) {
  double s = std::sin(th), co = std::cos(th);
  double q = p.a * p.a * co * co + p.b * p.b * s * s;
  double D = std::sqrt(q);
  PlaneKinematics k;
  k.D = D;
  k.dD = -p.c * p.c * s * co / D;
  k.d2D = p.c * p.c * (-p.a * p.a * co * co * co * co + p.b * p.b * s * s * s * s) / (q * D);
  k.rot_speed = p.a * p.b / q;
  k.rot_velocity = (p.a * p.b / (q * D)) * Vec2{-p.b * s, p.a * co};
  return k;
}

struct FocusSample {
  PlaneKinematics kin;
  double xi1 = 0, d1 = 0, d2 = 0, d3 = 0;
};

inline FocusSample focus_frame_profile(const EllipseParams& p, double th) {
  const double a = p.a, b = p.b, c = p.c;
  double s = std::sin(th), co = std::cos(th);
  double x = a * co - c;
  double q = x * x + b * b * s * s;
  double xi = std::sqrt(q);
  double N = a * c * s - c * c * s * co;
  double M = a * c * co - c * c * std::cos(2 * th);
  double K = 2 * c * c * std::sin(2 * th) - a * c * s;
  FocusSample f;
  f.xi1 = xi;
  f.d1 = N / xi;
  f.d2 = -N * N / (q * xi) + M / xi;
  f.d3 = 3 * N * N * N / (q * q * xi) - 3 * N * M / (q * xi) + K / xi;
  f.kin.D = xi;
  f.kin.dD = f.d1;
  f.kin.d2D = f.d2;
  double w = b * (a - c * co);
  f.kin.rot_speed = w / q;
  f.kin.rot_velocity = (w / (q * xi)) * Vec2{-b * s, x};
  return f;
}

struct SignViolation {
  double theta;
  int derivative;  // 1, 2 or 3
};

struct Table51Report {
  std::vector<SignViolation> violations;  // sorted by theta
  double max_endpoint_error = 0;
  bool ok() const { return violations.empty() && max_endpoint_error <= 1e-12; }
};

// Endpoint values at 0, pi/2, pi, 3pi/2, 2pi and sign patterns of d1, d2, d3 on the open sub-intervals.
inline Table51Report verify_table51(const EllipseParams& p, int grid_size = 10000) {
  const double pi = std::numbers::pi;
  if (grid_size < 1000) fail(ErrorKind::BadParameters, "grid_size must be at least 1000");
  Table51Report rep;
  const double a = p.a, c = p.c;
  struct Row {
    double th, xi, d1, d2;
  };
  const Row rows[] = {{0, a - c, 0, c}, {pi / 2, a, c, 0}, {pi, a + c, 0, -c}, {3 * pi / 2, a, -c, 0},
                      {2 * pi, a - c, 0, c}};
  for (const Row& r : rows) {
    FocusSample f = focus_frame_profile(p, r.th);
    rep.max_endpoint_error =
        std::max({rep.max_endpoint_error, std::abs(f.xi1 - r.xi), std::abs(f.d1 - r.d1), std::abs(f.d2 - r.d2)});
  }
  for (int i = 1; i < grid_size; ++i) {
    double th = 2 * pi * i / grid_size;
    if (std::abs(th - pi / 2) < 1e-15 || std::abs(th - pi) < 1e-15 || std::abs(th - 3 * pi / 2) < 1e-15) continue;
    FocusSample f = focus_frame_profile(p, th);
    bool upper = th < pi;
    bool outer = th < pi / 2 || th > 3 * pi / 2;
    if (!(upper ? f.d1 > 0 : f.d1 < 0)) rep.violations.push_back({th, 1});
    if (!(outer ? f.d2 > 0 : f.d2 < 0)) rep.violations.push_back({th, 2});
    if (!(upper ? f.d3 < 0 : f.d3 > 0)) rep.violations.push_back({th, 3});
  }
  return rep;
}

enum class EllipseFrame { Origin, Focus };

inline double average_rotational_speed(const EllipseParams& p, EllipseFrame frame, double lo, double hi,
                                       double tol = 1e-10) {
  const double pi = std::numbers::pi;
  if (!(lo >= -1e-15 && hi <= 2 * pi + 1e-12 && hi > lo)) fail(ErrorKind::BadParameters, "interval outside [0, 2pi]");
  auto speed = [&](double th) {
    return frame == EllipseFrame::Origin ? origin_frame_profile(p, th).rot_speed
                                         : focus_frame_profile(p, th).kin.rot_speed;
  };
  return adaptive_simpson(speed, lo, hi, tol) / (hi - lo);
}

// Zeros of d2D/dtheta^2 about the origin on [0, 2pi]; exactly four are expected.
inline std::vector<double> accel_zero_locations(const EllipseParams& p) {
  auto roots = bracketed_roots([&](double th) { return origin_frame_profile(p, th).d2D; }, 0,
                               2 * std::numbers::pi);
  if (roots.size() != 4) fail(ErrorKind::RootCountMismatch, std::to_string(roots.size()) + " roots");
  return roots;
}

inline std::vector<double> focus_accel_zero_locations(const EllipseParams& p) {
  auto roots = bracketed_roots([&](double th) { return focus_frame_profile(p, th).d2; }, 0, 2 * std::numbers::pi);
  if (roots.size() != 2) fail(ErrorKind::RootCountMismatch, std::to_string(roots.size()) + " roots");
  return roots;
}

inline std::vector<double> accel_zero_closed_form(const EllipseParams& p) {
  const double pi = std::numbers::pi;
  double z = std::atan(std::sqrt(p.a / p.b));
  return {z, pi - z, pi + z, 2 * pi - z};
}

// Origin data: distance rate and rotation rate about O, from the closed forms.
inline PlaneReconstructionProblem ellipse_origin_problem(const EllipseParams& p, double step, bool second_order = false) {
  PlaneReconstructionProblem pr;
  if (second_order) {
    pr.distance.d2D = [p](double th) { return origin_frame_profile(p, th).d2D; };
    pr.distance.dD0 = 0;
  } else {
    pr.distance.dD = [p](double th) { return origin_frame_profile(p, th).dD; };
  }
  pr.rhs_e = rotation_field([p](double th) { return origin_frame_profile(p, th).rot_speed; });
  pr.D0 = p.a;
  pr.e0 = {1, 0};
  pr.t0 = 0;
  pr.t1 = 2 * std::numbers::pi;
  pr.step = step;
  return pr;
}

// Focus data: the frame sits at A1 = (c, 0).
inline PlaneReconstructionProblem ellipse_focus_problem(const EllipseParams& p, double step, bool second_order = false) {
  PlaneReconstructionProblem pr;
  if (second_order) {
    pr.distance.d2D = [p](double th) { return focus_frame_profile(p, th).d2; };
    pr.distance.dD0 = 0;
  } else {
    pr.distance.dD = [p](double th) { return focus_frame_profile(p, th).d1; };
  }
  pr.rhs_e = rotation_field([p](double th) { return focus_frame_profile(p, th).kin.rot_speed; });
  pr.D0 = p.a - p.c;
  pr.e0 = {1, 0};
  pr.center = p.focus();
  pr.t0 = 0;
  pr.t1 = 2 * std::numbers::pi;
  pr.step = step;
  return pr;
}

}  // namespace rotor
