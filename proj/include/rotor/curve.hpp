#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "error.hpp"
#include "numerics.hpp"
#include "vec.hpp"

namespace rotor {

enum class DerivativeMode { Analytic, FiniteDifference };

// Parametric curve t -> V on [t0, t1]. Immutable once built; callables must be reentrant.
template <class V>
class Curve {
 public:
  using Fn = std::function<V(double)>;

  Curve(double t0, double t1, Fn position, std::array<Fn, 3> derivs = {})
      : t0_(t0), t1_(t1), pos_(std::move(position)), d_(std::move(derivs)) {
    if (!(t1_ > t0_)) fail(ErrorKind::BadParameters, "empty domain");
  }

  double t0() const { return t0_; }
  double t1() const { return t1_; }

  DerivativeMode mode(int order) const {
    return (order >= 1 && order <= 3 && d_[order - 1]) ? DerivativeMode::Analytic
                                                        : DerivativeMode::FiniteDifference;
  }

  bool in_domain(double t) const {
    double slack = 1e-12 * std::max({1.0, std::abs(t0_), std::abs(t1_)});
    return t >= t0_ - slack && t <= t1_ + slack;
  }

  V operator()(double t) const {
    check(t);
    return pos_(t);
  }

  V derivative(double t, int order) const { return derivative(t, order, default_fd_step(order)); }

  V derivative(double t, int order, double h) const {
    if (order < 0 || order > 3) fail(ErrorKind::OrderUnsupported, std::to_string(order));
    check(t);
    if (order == 0) return pos_(t);
    if (d_[order - 1]) return d_[order - 1](t);
    return finite_difference(t, order, h);
  }

  const Fn& position_fn() const { return pos_; }
  const std::array<Fn, 3>& derivative_fns() const { return d_; }

 private:
  void check(double t) const {
    if (!in_domain(t)) throw PointError(ErrorKind::OutOfDomain, t);
  }

  // Second-order accurate stencils; one-sided near the ends of the domain.
  V finite_difference(double t, int order, double h) const {
    const auto& f = pos_;
    int reach = order == 3 ? 2 : 1;
    bool left_ok = t - reach * h >= t0_, right_ok = t + reach * h <= t1_;
    if (left_ok && right_ok) {
      switch (order) {
        case 1: return (f(t + h) - f(t - h)) / (2 * h);
        case 2: return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        default: return (f(t + 2 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2 * h)) / (2 * h * h * h);
      }
    }
    double s = right_ok ? h : -h;
    auto g = [&](int k) { return f(t + k * s); };
    switch (order) {
      case 1: return (-3.0 * g(0) + 4.0 * g(1) - g(2)) / (2 * s);
      case 2: return (2.0 * g(0) - 5.0 * g(1) + 4.0 * g(2) - g(3)) / (s * s);
      default:
        return (-5.0 * g(0) + 18.0 * g(1) - 24.0 * g(2) + 14.0 * g(3) - 3.0 * g(4)) / (2 * s * s * s);
    }
  }

  double t0_, t1_;
  Fn pos_;
  std::array<Fn, 3> d_;
};

using PlaneCurve = Curve<Vec2>;
using SpaceCurve = Curve<Vec3>;
using AnyCurve = std::variant<PlaneCurve, SpaceCurve>;

// Scalar reparametrization t = g(h) with derivatives g', g'', g'''.
struct Reparam {
  std::function<double(double)> g, g1, g2, g3;
};

template <class V>
Curve<V> reparametrize(const Curve<V>& c, const Reparam& r, double h0, double h1) {
  int sign = 0;
  for (int i = 0; i < 64; ++i) {
    double h = h0 + (h1 - h0) * i / 63.0;
    double d = r.g1(h);
    int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) fail(ErrorKind::NonMonotonic, "g' at h=" + std::to_string(h));
    sign = s;
  }
  auto pos = [c, r](double h) { return c(r.g(h)); };
  auto d1 = [c, r](double h) { return r.g1(h) * c.derivative(r.g(h), 1); };
  auto d2 = [c, r](double h) {
    double t = r.g(h), a = r.g1(h), b = r.g2(h);
    return (a * a) * c.derivative(t, 2) + b * c.derivative(t, 1);
  };
  auto d3 = [c, r](double h) {
    double t = r.g(h), a = r.g1(h), b = r.g2(h), e = r.g3(h);
    return (a * a * a) * c.derivative(t, 3) + (3 * a * b) * c.derivative(t, 2) + e * c.derivative(t, 1);
  };
  return Curve<V>(h0, h1, pos, {d1, d2, d3});
}

using Params = std::map<std::string, double>;

namespace detail {

inline double take(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

inline void only_keys(const Params& p, const std::set<std::string>& allowed, const std::string& name) {
  for (const auto& [k, v] : p) {
    if (!allowed.count(k)) fail(ErrorKind::BadParameters, name + " has no parameter '" + k + "'");
    if (!std::isfinite(v)) fail(ErrorKind::BadParameters, name + "." + k + " not finite");
  }
}

// Horner evaluation of sum c_k t^k and its derivatives.
inline double poly(const std::vector<double>& c, double t, int order) {
  double s = 0;
  for (int k = static_cast<int>(c.size()) - 1; k >= order; --k) {
    double f = 1;
    for (int j = 0; j < order; ++j) f *= (k - j);
    s = s * t + f * c[k];
  }
  return s;
}

inline std::vector<double> coeffs(const Params& p, char axis) {
  std::vector<double> c;
  for (int k = 0; k <= 9; ++k) c.push_back(take(p, std::string(1, axis) + std::to_string(k), 0.0));
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

}  // namespace detail

inline PlaneCurve make_line(double x0, double y0, double a, double b, double t0 = -10, double t1 = 10) {
  return PlaneCurve(t0, t1, [=](double t) { return Vec2{x0 + a * t, y0 + b * t}; },
                    {[=](double) { return Vec2{a, b}; }, [](double) { return Vec2{0, 0}; },
                     [](double) { return Vec2{0, 0}; }});
}

inline PlaneCurve make_circle(double radius, double cx = 0, double cy = 0) {
  const double r = radius;
  return PlaneCurve(
      0, 2 * std::numbers::pi, [=](double t) { return Vec2{cx + r * std::cos(t), cy + r * std::sin(t)}; },
      {[=](double t) { return Vec2{-r * std::sin(t), r * std::cos(t)}; },
       [=](double t) { return Vec2{-r * std::cos(t), -r * std::sin(t)}; },
       [=](double t) { return Vec2{r * std::sin(t), -r * std::cos(t)}; }});
}

// r(t) = (a cos t, b sin t); allow_circle admits a == b.
inline PlaneCurve make_ellipse(double a, double b, bool allow_circle = false) {
  bool ok = b > 0 && (allow_circle ? a >= b : a > b);
  if (!ok) fail(ErrorKind::BadParameters, "ellipse needs a > b > 0");
  return PlaneCurve(
      0, 2 * std::numbers::pi, [=](double t) { return Vec2{a * std::cos(t), b * std::sin(t)}; },
      {[=](double t) { return Vec2{-a * std::sin(t), b * std::cos(t)}; },
       [=](double t) { return Vec2{-a * std::cos(t), -b * std::sin(t)}; },
       [=](double t) { return Vec2{a * std::sin(t), -b * std::cos(t)}; }});
}

inline PlaneCurve make_plane_polynomial(std::vector<double> cx, std::vector<double> cy, double t0,
                                        double t1) {
  auto at = [cx, cy](int order) {
    return [cx, cy, order](double t) { return Vec2{detail::poly(cx, t, order), detail::poly(cy, t, order)}; };
  };
  return PlaneCurve(t0, t1, at(0), {at(1), at(2), at(3)});
}

inline SpaceCurve make_space_polynomial(std::vector<double> cx, std::vector<double> cy,
                                        std::vector<double> cz, double t0, double t1) {
  auto at = [cx, cy, cz](int order) {
    return [cx, cy, cz, order](double t) {
      return Vec3{detail::poly(cx, t, order), detail::poly(cy, t, order), detail::poly(cz, t, order)};
    };
  };
  return SpaceCurve(t0, t1, at(0), {at(1), at(2), at(3)});
}

// (x0 + R cos t, y0 + R sin t, z0 + pitch t)
inline SpaceCurve make_helix(double radius, double pitch, double x0 = 0, double y0 = 0, double z0 = 0,
                             double t0 = -10, double t1 = 10) {
  const double r = radius, p = pitch;
  return SpaceCurve(
      t0, t1, [=](double t) { return Vec3{x0 + r * std::cos(t), y0 + r * std::sin(t), z0 + p * t}; },
      {[=](double t) { return Vec3{-r * std::sin(t), r * std::cos(t), p}; },
       [=](double t) { return Vec3{-r * std::cos(t), -r * std::sin(t), 0}; },
       [=](double t) { return Vec3{r * std::sin(t), -r * std::cos(t), 0}; }});
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"line",  "circle", "ellipse",       "parabola",
                                                 "cubic", "helix",  "twisted_cubic", "polynomial"};
  return names;
}

// Catalog lookup. Unlisted parameters take defaults; unknown keys are rejected.
inline AnyCurve make_catalog_curve(const std::string& name, const Params& p) {
  using detail::only_keys;
  using detail::take;
  if (name == "line") {
    only_keys(p, {"x0", "y0", "a", "b", "t0", "t1"}, name);
    double a = take(p, "a", 1), b = take(p, "b", 0);
    if (a == 0 && b == 0) fail(ErrorKind::BadParameters, "line direction is zero");
    return make_line(take(p, "x0", 0), take(p, "y0", 0), a, b, take(p, "t0", -10), take(p, "t1", 10));
  }
  if (name == "circle") {
    only_keys(p, {"radius", "cx", "cy"}, name);
    double r = take(p, "radius", 1);
    if (!(r > 0)) fail(ErrorKind::BadParameters, "circle radius must be positive");
    return make_circle(r, take(p, "cx", 0), take(p, "cy", 0));
  }
  if (name == "ellipse") {
    only_keys(p, {"a", "b"}, name);
    return make_ellipse(take(p, "a", 2), take(p, "b", 1));
  }
  if (name == "parabola") {
    only_keys(p, {"p", "x0", "y0", "t0", "t1"}, name);
    double k = take(p, "p", 1);
    if (k == 0) fail(ErrorKind::BadParameters, "parabola needs p != 0");
    return make_plane_polynomial({take(p, "x0", 0), 1}, {take(p, "y0", 0), 0, k}, take(p, "t0", -3),
                                 take(p, "t1", 3));
  }
  if (name == "cubic") {
    only_keys(p, {"k", "x0", "y0", "t0", "t1"}, name);
    double k = take(p, "k", 1);
    if (k == 0) fail(ErrorKind::BadParameters, "cubic needs k != 0");
    return make_plane_polynomial({take(p, "x0", 0), 1}, {take(p, "y0", 0), 0, 0, k}, take(p, "t0", -2),
                                 take(p, "t1", 2));
  }
  if (name == "helix") {
    only_keys(p, {"radius", "pitch", "x0", "y0", "z0", "t0", "t1"}, name);
    double r = take(p, "radius", 1), pitch = take(p, "pitch", 1);
    if (!(r > 0)) fail(ErrorKind::BadParameters, "helix radius must be positive");
    return make_helix(r, pitch, take(p, "x0", 0), take(p, "y0", 0), take(p, "z0", 0), take(p, "t0", -10),
                      take(p, "t1", 10));
  }
  if (name == "twisted_cubic") {
    only_keys(p, {"x0", "y0", "z0", "t0", "t1"}, name);
    return make_space_polynomial({take(p, "x0", 0), 1}, {take(p, "y0", 0), 0, 1}, {take(p, "z0", 0), 0, 0, 1},
                                 take(p, "t0", -2), take(p, "t1", 2));
  }
  if (name == "polynomial") {
    std::set<std::string> allowed = {"t0", "t1"};
    for (char ax : {'x', 'y', 'z'})
      for (int k = 0; k <= 9; ++k) allowed.insert(std::string(1, ax) + std::to_string(k));
    only_keys(p, allowed, name);
    double t0 = take(p, "t0", -1), t1 = take(p, "t1", 1);
    auto cz = detail::coeffs(p, 'z');
    bool space = false;
    for (const auto& [k, v] : p) space = space || k[0] == 'z';
    if (space) return make_space_polynomial(detail::coeffs(p, 'x'), detail::coeffs(p, 'y'), cz, t0, t1);
    return make_plane_polynomial(detail::coeffs(p, 'x'), detail::coeffs(p, 'y'), t0, t1);
  }
  fail(ErrorKind::UnknownCurve, name);
}

inline PlaneCurve make_plane_curve(const std::string& name, const Params& p) {
  auto c = make_catalog_curve(name, p);
  if (auto* pc = std::get_if<PlaneCurve>(&c)) return *pc;
  fail(ErrorKind::BadParameters, name + " is a space curve");
}

inline SpaceCurve make_space_curve(const std::string& name, const Params& p) {
  auto c = make_catalog_curve(name, p);
  if (auto* sc = std::get_if<SpaceCurve>(&c)) return *sc;
  fail(ErrorKind::BadParameters, name + " is a plane curve");
}

// A plane curve viewed in z = 0.
inline SpaceCurve lift(const PlaneCurve& c) {
  auto up = [](Vec2 v) { return Vec3{v.x, v.y, 0}; };
  auto at = [c, up](int order) { return [c, up, order](double t) { return up(c.derivative(t, order)); }; };
  return SpaceCurve(c.t0(), c.t1(), at(0), {at(1), at(2), at(3)});
}

}  // namespace rotor
