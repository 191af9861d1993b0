#pragma once

// Acceptance criteria AC1..AC12. Each check carries its own finite-difference
// oracle and never reads the derivative functions it is checking.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "curve.hpp"
#include "ellipse.hpp"
#include "plane.hpp"
#include "reconstruction.hpp"
#include "space.hpp"
#include "surface.hpp"
#include "table.hpp"

namespace rotor::acceptance {

struct Options {
  double psi_fault = 0;  // added to every closed-form psi before the AC3 comparison
};

struct Result {
  std::string id;
  bool pass = false;
  double measured = 0;
  double bound = 0;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::vector<std::string> tags;
  std::function<Result(const Options&)> run;
};

inline std::string format_line(const Result& r) {
  return std::string(r.pass ? "PASS " : "FAIL ") + r.id + " " + format_real(r.measured) + " " +
         format_real(r.bound);
}

namespace oracle {

template <class F>
auto fd1(F&& f, double t, double h) {
  return (1.0 / (12 * h)) * ((f(t - 2 * h) - f(t + 2 * h)) + 8.0 * (f(t + h) - f(t - h)));
}

template <class F>
auto fd2(F&& f, double t, double h) {
  return (1.0 / (12 * h * h)) * (16.0 * (f(t + h) + f(t - h)) - (f(t + 2 * h) + f(t - 2 * h)) - 30.0 * f(t));
}

// Third derivative: central stencil at h and 2h combined to fourth order.
template <class F>
auto fd3(F&& f, double t, double h) {
  auto d = [&](double s) {
    return (1.0 / (2 * s * s * s)) * ((f(t + 2 * s) - f(t - 2 * s)) - 2.0 * (f(t + s) - f(t - s)));
  };
  return (1.0 / 3) * (4.0 * d(h) - d(2 * h));
}

template <class V>
V unit(V v) {
  return v / norm(v);
}

struct Worst {
  double value = 0;
  void add(double got, double want, double floor) {
    double e = std::abs(got - want) / std::max(std::abs(want), floor);
    if (!(e <= value)) value = std::isnan(e) ? INFINITY : e;
  }
  void add_abs(double e) { value = std::max(value, e); }
};

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }
  double sign() { return (*this)(0, 1) < 0.5 ? -1.0 : 1.0; }
};

// u = u0 + al t + mu sin t, v = v0 + be sin(ga t + de)
inline ChartCurve wavy_chart_curve(double u0, double al, double mu, double v0, double be, double ga, double de,
                                   double t0, double t1) {
  std::array<ChartCurve::Fn, 4> u = {
      [=](double t) { return u0 + al * t + mu * std::sin(t); }, [=](double t) { return al + mu * std::cos(t); },
      [=](double t) { return -mu * std::sin(t); }, [=](double t) { return -mu * std::cos(t); }};
  std::array<ChartCurve::Fn, 4> v = {[=](double t) { return v0 + be * std::sin(ga * t + de); },
                                     [=](double t) { return be * ga * std::cos(ga * t + de); },
                                     [=](double t) { return -be * ga * ga * std::sin(ga * t + de); },
                                     [=](double t) { return -be * ga * ga * ga * std::cos(ga * t + de); }};
  return ChartCurve(u, v, t0, t1);
}

struct SurfaceCase {
  Surface surface;
  ChartCurve curve;
  double t;
};

// Sphere or torus placed away from the coordinate planes, with a random chart curve.
inline SurfaceCase random_surface_case(Rng& rng, bool torus) {
  if (torus) {
    double R = rng(2, 3), a = rng(0.4, 1);
    double off = R + a + rng(0.5, 1.5);
    Surface s = make_torus(R, a, {rng.sign() * off, rng.sign() * off, rng.sign() * rng(a + 0.5, a + 2)});
    ChartCurve c = wavy_chart_curve(rng(-3, 3), rng(0.3, 1.2) * rng.sign(), rng(-0.3, 0.3), rng(-2, 2),
                                    rng(0.2, 1), rng(0.5, 2), rng(0, 6), -1, 1);
    return {s, c, rng(-0.9, 0.9)};
  }
  double rho = rng(0.5, 2);
  double off = rho + rng(0.5, 1.5);
  Surface s = make_sphere(rho, {rng.sign() * off, rng.sign() * off, rng.sign() * off});
  ChartCurve c = wavy_chart_curve(rng(-3, 3), rng(0.3, 1.2) * rng.sign(), rng(-0.3, 0.3), rng(-0.3, 0.3),
                                  rng(0.2, 0.8), rng(0.5, 2), rng(0, 6), -1, 1);
  return {s, c, rng(-0.9, 0.9)};
}

inline Vec3 surface_point(const SurfaceCase& k, double t) {
  auto q = k.curve.at(t, 0);
  return k.surface(q[0], q[1]);
}

struct PlaneCase {
  PlaneCurve curve;
  Vec2 center;
  double t;
};

inline PlaneCase random_plane_case(Rng& rng, int family, bool at_origin) {
  Vec2 center = at_origin ? Vec2{0, 0} : Vec2{rng(-1, 1), rng(-1, 1)};
  for (;;) {
    PlaneCurve c = [&]() -> PlaneCurve {
      switch (family) {
        case 0: return make_line(rng(-2, 2), rng(-2, 2), rng(-2, 2), rng(0.3, 2), -3, 3);
        case 1: return make_circle(rng(0.5, 2), rng(-1, 1), rng(-1, 1));
        case 2: {
          double b = rng(0.5, 1.5);
          return make_ellipse(b * rng(1.1, 3), b);
        }
        case 3:
          return make_plane_curve("parabola", {{"p", rng(0.3, 2) * rng.sign()}, {"x0", rng(-1, 1)}, {"y0", rng(-1, 1)}});
        case 4:
          return make_plane_curve("cubic", {{"k", rng(0.3, 2) * rng.sign()}, {"x0", rng(-1, 1)}, {"y0", rng(-1, 1)}});
        default: {
          Params p;
          for (int k = 0; k <= 3; ++k) {
            p["x" + std::to_string(k)] = rng(-1, 1);
            p["y" + std::to_string(k)] = rng(-1, 1);
          }
          return make_plane_curve("polynomial", p);
        }
      }
    }();
    double span = c.t1() - c.t0();
    double t = rng(c.t0() + 0.05 * span, c.t1() - 0.05 * span);
    if (norm(c(t) - center) > 0.3) return {c, center, t};
  }
}

inline std::pair<SpaceCurve, double> random_space_case(Rng& rng, int family) {
  switch (family) {
    case 0: {
      double r = rng(0.5, 1.5), p = rng(0.2, 1) * rng.sign();
      SpaceCurve c = make_helix(r, p, rng.sign() * rng(r + 0.5, r + 2), rng.sign() * rng(r + 0.5, r + 2),
                                rng.sign() * rng(2 * std::abs(p) + 0.5, 2 * std::abs(p) + 2), -2, 2);
      return {c, rng(-1.8, 1.8)};
    }
    case 1: {
      SpaceCurve c = make_space_curve(
          "twisted_cubic", {{"x0", rng(1.5, 3)}, {"y0", rng(0.5, 2)}, {"z0", rng(2, 3)}, {"t0", -1.1}, {"t1", 1.1}});
      return {c, rng(-1, 1)};
    }
    default: {
      Params p;
      for (const char* ax : {"x", "y", "z"}) {
        p[std::string(ax) + "0"] = rng.sign() * rng(1.5, 3);
        for (int k = 1; k <= 3; ++k) p[ax + std::to_string(k)] = rng(-0.4, 0.4);
      }
      return {make_space_curve("polynomial", p), rng(-0.95, 0.95)};
    }
  }
}

inline std::pair<SpaceCurve, SpaceCurve> random_pair(Rng& rng) {
  SpaceCurve a = make_helix(rng(0.3, 1), rng(-0.5, 0.5), 0, 0, 0, -1, 1);
  Params p;
  for (const char* ax : {"x", "y", "z"}) {
    p[std::string(ax) + "0"] = rng.sign() * rng(2.5, 4);
    for (int k = 1; k <= 3; ++k) p[ax + std::to_string(k)] = rng(-0.3, 0.3);
  }
  return {a, make_space_curve("polynomial", p)};
}

struct Mat3 {
  double m[3][3];
  Vec3 operator*(Vec3 v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
};

inline Mat3 random_rotation(Rng& rng) {
  double q[4];
  double n = 0;
  for (double& x : q) x = rng(-1, 1), n += x * x;
  n = std::sqrt(n);
  for (double& x : q) x /= n;
  double w = q[0], x = q[1], y = q[2], z = q[3];
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
           {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
           {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

inline SpaceCurve moved(const SpaceCurve& c, const Mat3& R, Vec3 shift) {
  auto at = [c, R](int order) { return [c, R, order](double t) { return R * c.derivative(t, order); }; };
  return SpaceCurve(c.t0(), c.t1(), [c, R, shift](double t) { return R * c(t) + shift; }, {at(1), at(2), at(3)});
}

inline PlaneCurve moved(const PlaneCurve& c, double angle, Vec2 shift) {
  double co = std::cos(angle), s = std::sin(angle);
  auto rot = [co, s](Vec2 v) { return Vec2{co * v.x - s * v.y, s * v.x + co * v.y}; };
  auto at = [c, rot](int order) { return [c, rot, order](double t) { return rot(c.derivative(t, order)); }; };
  return PlaneCurve(c.t0(), c.t1(), [c, rot, shift](double t) { return rot(c(t)) + shift; },
                    {at(1), at(2), at(3)});
}

}  // namespace oracle

// AC1: distance rates against central differences of the distance itself.
inline Result ac1_distance_rates(const Options&) {
  using namespace oracle;
  Rng rng(101);
  Worst w;
  const int draws = 1000;
  for (int fam = 0; fam < 6; ++fam)
    for (bool origin : {true, false})
      for (int i = 0; i < draws; ++i) {
        PlaneCase k = random_plane_case(rng, fam, origin);
        PlaneKinematics got = distance_kinematics(k.curve, k.center, k.t);
        auto D = [&](double s) { return norm(k.curve(s) - k.center); };
        Vec2 wv = k.curve(k.t) - k.center, w1 = fd1([&](double s) { return k.curve(s); }, k.t, 1e-3);
        Vec2 w2 = fd2([&](double s) { return k.curve(s); }, k.t, 2.5e-3);
        w.add(got.dD, fd1(D, k.t, 1e-3), norm(w1));
        w.add(got.d2D, fd2(D, k.t, 2.5e-3), dot(w1, w1) / norm(wv) + norm(w2));
      }
  auto check3 = [&](auto pos, const SpaceKinematics& got, double t) {
    auto D = [&](double s) { return norm(pos(s)); };
    Vec3 wv = pos(t), w1 = fd1(pos, t, 1e-3), w2 = fd2(pos, t, 2.5e-3);
    w.add(got.dD, fd1(D, t, 1e-3), norm(w1));
    w.add(got.d2D, fd2(D, t, 2.5e-3), dot(w1, w1) / norm(wv) + norm(w2));
  };
  for (int fam = 0; fam < 3; ++fam)
    for (int i = 0; i < draws; ++i) {
      auto [c, t] = random_space_case(rng, fam);
      check3([&c](double s) { return c(s); }, space_distance_kinematics(c, t), t);
    }
  for (int i = 0; i < draws; ++i) {
    auto [a, b] = random_pair(rng);
    double t = rng(-0.9, 0.9);
    check3([&](double s) { return b(s) - a(s); }, pair_kinematics(a, b, t), t);
  }
  for (int i = 0; i < draws; ++i) {
    SurfaceCase k = random_surface_case(rng, i % 2 == 1);
    check3([&k](double s) { return surface_point(k, s); }, surface_distance_kinematics(k.surface, k.curve, k.t), k.t);
  }
  return {"AC1", w.value < 1e-6, w.value, 1e-6, ""};
}

// AC2: rotational speeds against the derivative of the projected unit direction.
inline Result ac2_rotational_speeds(const Options&) {
  using namespace oracle;
  Rng rng(202);
  Worst w;
  const int draws = 1000;
  const double h = 1e-3;
  for (int fam = 0; fam < 6; ++fam)
    for (bool origin : {true, false})
      for (int i = 0; i < draws; ++i) {
        PlaneCase k = random_plane_case(rng, fam, origin);
        auto e = [&](double s) { return unit(k.curve(s) - k.center); };
        Vec2 wv = k.curve(k.t) - k.center, w1 = fd1([&](double s) { return k.curve(s); }, k.t, h);
        w.add(distance_kinematics(k.curve, k.center, k.t).rot_speed, norm(fd1(e, k.t, h)), norm(w1) / norm(wv));
      }
  auto check3 = [&](auto pos, const SpaceKinematics& got, double t) {
    Vec3 wv = pos(t), w1 = fd1(pos, t, h);
    w.add(got.rot_speed, norm(fd1([&](double s) { return unit(pos(s)); }, t, h)), norm(w1) / norm(wv));
    auto planar = [&](int i, int j, double speed) {
      auto proj = [i, j](Vec3 v) {
        double c[3] = {v.x, v.y, v.z};
        return Vec2{c[i], c[j]};
      };
      Vec2 p = proj(wv), p1 = proj(w1);
      w.add(speed, norm(fd1([&](double s) { return unit(proj(pos(s))); }, t, h)), norm(p1) / norm(p));
    };
    planar(0, 1, got.speed_A);
    planar(0, 2, got.speed_B);
    planar(1, 2, got.speed_C);
  };
  for (int fam = 0; fam < 3; ++fam)
    for (int i = 0; i < draws; ++i) {
      auto [c, t] = random_space_case(rng, fam);
      check3([&c](double s) { return c(s); }, space_distance_kinematics(c, t), t);
    }
  for (int i = 0; i < draws; ++i) {
    auto [a, b] = random_pair(rng);
    double t = rng(-0.9, 0.9);
    check3([&](double s) { return b(s) - a(s); }, pair_kinematics(a, b, t), t);
  }
  for (int i = 0; i < draws; ++i) {
    SurfaceCase k = random_surface_case(rng, i % 2 == 1);
    check3([&k](double s) { return surface_point(k, s); }, surface_distance_kinematics(k.surface, k.curve, k.t), k.t);
  }
  return {"AC2", w.value < 1e-6, w.value, 1e-6, ""};
}

// AC3: closed-form local limits against Richardson-extrapolated finite-dt ladders.
inline Result ac3_local_limits(const Options& opt) {
  using namespace oracle;
  const double f = opt.psi_fault;
  Worst w;
  auto cmp = [&](double closed, double ladder) { w.add(closed, ladder, 1.0); };
  const auto plane_dts = geometric_ladder(0.02, 0.5, 5);
  std::vector<std::pair<PlaneCurve, std::vector<double>>> plane = {
      {make_ellipse(2, 1), {0.3, 1.1, 2.5, 4.0, 5.5}},
      {make_plane_curve("parabola", {{"p", 0.7}}), {-2, -0.4, 0.5, 1.7}},
      {make_plane_curve("cubic", {{"k", -1.3}}), {-1.5, -0.2, 0.6, 1.4}},
      {make_plane_curve("polynomial", {{"x1", 1}, {"x2", 0.3}, {"y2", 0.5}, {"y3", -0.4}}), {-0.7, 0.1, 0.8}}};
  for (const auto& [c, ts] : plane)
    for (double t : ts) {
      LocalLimits2 l = local_limits(c, t);
      auto chord = [&](auto get) { return ladder_limit([&](double dt) { return get(chord_kinematics(c, t, dt)); }, plane_dts); };
      cmp(l.phi, chord([](const PlaneKinematics& k) { return k.dD; }));
      cmp(l.phi_prime, chord([](const PlaneKinematics& k) { return k.d2D; }));
      cmp(l.psi_speed + f, chord([](const PlaneKinematics& k) { return k.rot_speed; }));
      cmp(l.psi.x + f, chord([](const PlaneKinematics& k) { return k.rot_velocity.x; }));
      cmp(l.psi.y + f, chord([](const PlaneKinematics& k) { return k.rot_velocity.y; }));
    }

  const auto space_dts = geometric_ladder(0.04, 0.5, 5);
  double psi13 = 0;
  std::vector<std::pair<SpaceCurve, std::vector<double>>> space = {
      {make_space_curve("twisted_cubic", {}), {-1.2, -0.3, 0.4, 1.1}},
      {make_helix(1, 0.5), {-2, 0, 1.3}},
      {make_space_curve("polynomial", {{"x1", 1}, {"y2", 0.5}, {"z3", 0.3}, {"x3", 0.2}, {"y1", -0.4}}),
       {-0.6, 0.2, 0.7}}};
  for (const auto& [c, ts] : space)
    for (double t : ts) {
      DerivativePlaneLimits l = derivative_plane_limits(c, t);
      cmp(l.phi, ladder_limit(
                     [&](double dt) {
                       Vec3 d = c(t + dt) - c(t);
                       return dot(d, c.derivative(t + dt, 1)) / norm(d);
                     },
                     space_dts));
      auto speeds = [&](int i) {
        return ladder_limit([&](double dt) { return derivative_plane_speeds(c, t, dt)[i]; }, space_dts);
      };
      cmp(norm(l.psi12) + f, speeds(0));
      cmp(norm(l.psi23) + f, speeds(2));
      psi13 = std::max(psi13, std::abs(speeds(1)));
    }

  const auto surf_dts = geometric_ladder(0.04, 0.5, 5);
  std::vector<std::pair<Surface, ChartCurve>> surf = {
      {make_sphere(1.5), wavy_chart_curve(0.2, 0.8, 0.2, 0.1, 0.5, 1.3, 0.4, -1, 1)},
      {make_torus(3, 1), wavy_chart_curve(-0.5, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, -1, 1)},
      {make_torus(2.5, 0.7), wavy_chart_curve(1.0, -0.6, 0.25, 0.4, 0.3, 1.7, 0.0, -1, 1)}};
  for (const auto& [s, c] : surf)
    for (double t : {-0.6, -0.1, 0.35, 0.7}) {
      SurfaceRotLimits l = surface_plane_rot_limits(s, c, t);
      auto speeds = [&](int i) {
        return ladder_limit([&](double dt) { return surface_plane_speeds(s, c, t, dt)[i]; }, surf_dts);
      };
      cmp(l.psiA + f, speeds(0));
      if (l.psiB) cmp(*l.psiB + f, speeds(1));
      if (l.psiC) cmp(*l.psiC + f, speeds(2));
    }
  bool ok = w.value < 1e-4 && psi13 < 1e-3;
  return {"AC3", ok, w.value, 1e-4, "psi13 ladder " + format_real(psi13) + " (bound 1e-3)"};
}

// AC4: the straight line has zero local second derivative and zero local rotational speed.
inline Result ac4_line(const Options&) {
  double m = 0;
  for (auto [x0, y0, a, b] : {std::array{0.0, 0.0, 1.0, 0.0}, std::array{1.0, 2.0, 3.0, 4.0},
                              std::array{-0.7, 0.2, -1.3, 0.45}})
    for (double t : uniform_grid(-9, 9, 37)) {
      LocalLimits2 l = local_limits(make_plane_curve("line", {{"x0", x0}, {"y0", y0}, {"a", a}, {"b", b}}), t);
      m = std::max({m, std::abs(l.phi_prime), std::abs(l.psi_speed), norm(l.psi)});
    }
  return {"AC4", m == 0, m, 0, ""};
}

// AC5: r', r'', r''' of a surface curve against differences of t -> r(u(t), v(t)).
inline Result ac5_surface_expansion(const Options&) {
  using namespace oracle;
  Rng rng(505);
  Worst w;
  auto check = [&](const SurfaceCase& k) {
    auto pos = [&k](double s) { return surface_point(k, s); };
    CurveJet3 j = chart_curve_derivatives(k.surface, k.curve, k.t);
    Vec3 r3 = fd3(pos, k.t, 5e-3);
    w.add(norm(j.r3 - r3), 0, norm(r3));
    Vec3 r2 = fd2(pos, k.t, 1e-2);
    w.add(norm(j.r2 - r2), 0, norm(r2));
  };
  for (int i = 0; i < 200; ++i) {
    SurfaceCase k = random_surface_case(rng, i % 2 == 1);
    k.surface = k.surface.without_third();
    check(k);
    check(random_surface_case(rng, i % 2 == 1));
  }
  check({make_torus(3, 1), wavy_chart_curve(0, 1, 0, 0, 1, 1, 0, -1, 1), 0.7});
  return {"AC5", w.value < 1e-4, w.value, 1e-4, ""};
}

// AC6: endpoint values and sign patterns of xi1 and its derivatives for a = 2, b = 1.
inline Result ac6_table51(const Options&) {
  EllipseParams p = EllipseParams::make(2, 1);
  Table51Report rep = verify_table51(p, 10000);
  double measured = rep.max_endpoint_error + static_cast<double>(rep.violations.size());
  return {"AC6", rep.ok(), measured, 1e-12, std::to_string(rep.violations.size()) + " sign violations"};
}

// AC7: quadrant averages about O and half-period averages about the focus equal 1.
inline Result ac7_average_speeds(const Options&) {
  const double pi = std::numbers::pi;
  double m = 0;
  for (double ratio : {2.0, 1.1, 10.0}) {
    EllipseParams p = EllipseParams::make(ratio, 1);
    for (int q = 0; q < 4; ++q)
      m = std::max(m, std::abs(average_rotational_speed(p, EllipseFrame::Origin, q * pi / 2, (q + 1) * pi / 2) - 1));
    m = std::max(m, std::abs(average_rotational_speed(p, EllipseFrame::Focus, 0, pi) - 1));
    m = std::max(m, std::abs(average_rotational_speed(p, EllipseFrame::Focus, pi, 2 * pi) - 1));
  }
  return {"AC7", m < 1e-8, m, 1e-8, ""};
}

// AC8: zeros of the distance acceleration about O and about the focus.
inline Result ac8_zero_locations(const Options&) {
  const double pi = std::numbers::pi;
  double m = 0;
  for (double ratio : {2.0, 1.1, 10.0}) {
    EllipseParams p = EllipseParams::make(ratio, 1);
    auto roots = accel_zero_locations(p);
    auto closed = accel_zero_closed_form(p);
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(roots[i] - closed[i]));
    auto focus = focus_accel_zero_locations(p);
    m = std::max({m, std::abs(focus[0] - pi / 2), std::abs(focus[1] - 3 * pi / 2)});
  }
  return {"AC8", m < 1e-10, m, 1e-10, ""};
}

// AC9: round trips on the ellipse about O and on a helix placed off the coordinate planes.
inline Result ac9_reconstruction(const Options&) {
  const double pi = std::numbers::pi;
  EllipseParams e = EllipseParams::make(2, 1);
  SpaceCurve helix = make_helix(1, 1, 2, 2, 1, 0, pi);
  auto plane_err = [&](double step, bool second) {
    return max_error(reconstruct_plane(ellipse_origin_problem(e, step, second)),
                     [&](double th) { return e.point(th); });
  };
  auto space_err = [&](double step, bool second) {
    return max_error(reconstruct_space(space_problem_from_curve(helix, 0, pi, step, second)),
                     [&](double t) { return helix(t); });
  };
  double worst = 0, min_order = INFINITY;
  for (bool second : {false, true}) {
    worst = std::max({worst, plane_err(2 * pi * 1e-4, second), space_err(pi * 1e-4, second)});
    for (auto [err, range] : {std::pair{std::function<double(double, bool)>(plane_err), 2 * pi},
                              std::pair{std::function<double(double, bool)>(space_err), pi}}) {
      double e1 = err(range / 25, second), e2 = err(range / 50, second), e3 = err(range / 100, second);
      min_order = std::min({min_order, std::log2(e1 / e2), std::log2(e2 / e3)});
    }
  }
  return {"AC9", worst < 1e-5 && min_order >= 3.5, worst, 1e-5,
          "minimum observed order " + format_real(min_order) + " (bound 3.5)"};
}

// AC10: invariants agree under rigid motions and separate perturbed or mirrored curves.
inline Result ac10_congruence(const Options&) {
  using namespace oracle;
  const double pi = std::numbers::pi;
  Rng rng(1010);
  double dev = 0;
  bool ok = true;
  std::string why;
  PlaneCurve ell = make_ellipse(2, 1);
  auto pgrid = uniform_grid(0.1, 2 * pi - 0.1, 20);
  SpaceCurve tc = make_space_curve("twisted_cubic", {});
  auto sgrid = uniform_grid(-1.5, 1.5, 20);
  for (int i = 0; i < 20; ++i) {
    auto pr = plane_congruent(ell, moved(ell, rng(0, 2 * pi), {rng(-5, 5), rng(-5, 5)}), pgrid);
    auto sr = space_congruent(tc, moved(tc, random_rotation(rng), {rng(-5, 5), rng(-5, 5), rng(-5, 5)}), sgrid);
    dev = std::max({dev, pr.max_deviation, sr.max_deviation});
    if (!pr.congruent || !sr.congruent) ok = false, why = "rigid copy rejected";
  }
  auto reject = [&](bool congruent, const char* what) {
    if (congruent) ok = false, why = std::string(what) + " accepted";
  };
  reject(plane_congruent(ell, make_ellipse(2, 1.05), pgrid).congruent, "perturbed ellipse");
  reject(plane_congruent(make_plane_curve("parabola", {{"p", 1}}), make_plane_curve("parabola", {{"p", 1.1}}),
                         uniform_grid(-2, 2, 20))
             .congruent,
         "perturbed parabola");
  reject(space_congruent(tc, make_space_polynomial({0, 1}, {0, 0, 1}, {0, 0, 0, 1.05}, -2, 2), sgrid).congruent,
         "perturbed twisted cubic");
  reject(space_congruent(make_helix(1, 1), make_helix(1, 1.05), uniform_grid(-3, 3, 20)).congruent,
         "perturbed helix");
  Mat3 mirror{{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  reject(space_congruent(tc, moved(tc, mirror, {}), sgrid).congruent, "mirrored twisted cubic");
  reject(space_congruent(make_helix(1, 1), moved(make_helix(1, 1), mirror, {1, 2, 3}), uniform_grid(-3, 3, 20))
             .congruent,
         "mirrored helix");
  return {"AC10", ok && dev < 1e-9, dev, 1e-9, why};
}

// AC11: phi^2 equals the first fundamental form evaluated on the chart velocity.
inline Result ac11_first_fundamental_form(const Options&) {
  using namespace oracle;
  Rng rng(1111);
  Worst w;
  for (int i = 0; i < 400; ++i) {
    SurfaceCase k = random_surface_case(rng, i % 2 == 1);
    auto q = k.curve.at(k.t, 0), d = k.curve.at(k.t, 1);
    SurfaceGeometry G = surface_geometry(k.surface, q[0], q[1]);
    double phi = surface_local_first_derivative(k.surface, k.curve, k.t);
    double fff = first_fundamental_form(G, d, d);
    w.add(phi * phi, fff, 0);
  }
  return {"AC11", w.value <= 1e-12, w.value, 1e-12, ""};
}

// AC12 (in-process part): the same table twice gives the same bytes.
inline Result ac12_determinism(const Options&) {
  auto csv = [] {
    return to_csv(kinematics_table(make_catalog_curve("ellipse", {{"a", 2}, {"b", 1}}), {}, 257));
  };
  std::string a = csv(), b = csv();
  bool clean = a.find('\r') == std::string::npos && !a.empty() && a.back() == '\n';
  double measured = a == b && clean ? 0 : 1;
  return {"AC12", measured == 0, measured, 0, ""};
}

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"AC1", {"fd", "rates"}, ac1_distance_rates},
      {"AC2", {"fd", "speeds"}, ac2_rotational_speeds},
      {"AC3", {"limits", "psi"}, ac3_local_limits},
      {"AC4", {"line", "plane"}, ac4_line},
      {"AC5", {"surface"}, ac5_surface_expansion},
      {"AC6", {"ellipse"}, ac6_table51},
      {"AC7", {"ellipse"}, ac7_average_speeds},
      {"AC8", {"ellipse"}, ac8_zero_locations},
      {"AC9", {"ellipse", "reconstruction"}, ac9_reconstruction},
      {"AC10", {"congruence"}, ac10_congruence},
      {"AC11", {"surface"}, ac11_first_fundamental_form},
      {"AC12", {"cli"}, ac12_determinism},
  };
  return all;
}

inline bool selected(const Criterion& c, const std::string& filter) {
  if (filter.empty() || filter == c.id) return true;
  return std::find(c.tags.begin(), c.tags.end(), filter) != c.tags.end();
}

// A criterion that throws is reported as FAIL with the error text.
inline Result run_one(const Criterion& c, const Options& opt) {
  try {
    return c.run(opt);
  } catch (const std::exception& e) {
    return {c.id, false, INFINITY, 0, e.what()};
  }
}

}  // namespace rotor::acceptance
