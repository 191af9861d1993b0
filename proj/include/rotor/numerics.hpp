#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "error.hpp"
#include "vec.hpp"

namespace rotor {

// Default finite-difference step for derivative order 1..3. ROTOR_FD_STEP overrides all orders.
inline double default_fd_step(int order) {
  if (const char* env = std::getenv("ROTOR_FD_STEP")) {
    char* end = nullptr;
    double h = std::strtod(env, &end);
    if (end != env && std::isfinite(h) && h > 0) return h;
  }
  return order >= 3 ? 1e-4 : 1e-5;
}

// Polynomial extrapolation to h = 0 (Neville's scheme) of samples f(h_i).
inline double richardson_extrapolate(const std::vector<double>& h, const std::vector<double>& f) {
  std::vector<double> p = f;
  const std::size_t n = h.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (h[i] * p[i + 1] - h[i + m] * p[i]) / (h[i] - h[i + m]);
  return p.empty() ? 0.0 : p[0];
}

inline std::vector<double> geometric_ladder(double h0, double ratio, int count) {
  std::vector<double> h;
  for (int i = 0; i < count; ++i) h.push_back(h0 * std::pow(ratio, i));
  return h;
}

namespace detail {
// Ridders' tableau over a central stencil whose error expands in even powers of h.
template <class Stencil>
double ridders_tableau(Stencil&& d, double h0, double* error) {
  constexpr int kTab = 10;
  constexpr double kCon = 1.4, kCon2 = kCon * kCon, kSafe = 2.0;
  double a[kTab][kTab];
  double h = h0, err = 1e300;
  a[0][0] = d(h);
  double ans = a[0][0];
  for (int i = 1; i < kTab; ++i) {
    h /= kCon;
    a[0][i] = d(h);
    double fac = kCon2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1);
      fac *= kCon2;
      double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        ans = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * err) break;
  }
  if (error) *error = err;
  return ans;
}
}  // namespace detail

// Ridders' extrapolated central difference; h0 is the initial step, shrunk by 1.4 per stage.
template <class F>
double ridders_derivative(F&& f, double x, double h0 = 0.1, double* error = nullptr) {
  return detail::ridders_tableau([&](double h) { return (f(x + h) - f(x - h)) / (2 * h); }, h0, error);
}

template <class F>
double ridders_second_derivative(F&& f, double x, double h0 = 0.1, double* error = nullptr) {
  double f0 = f(x);
  return detail::ridders_tableau([&](double h) { return (f(x + h) - 2 * f0 + f(x - h)) / (h * h); }, h0, error);
}

namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace detail

// Adaptive Simpson quadrature with absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int max_depth = 50) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Roots of f on [a, b]: sign changes on a uniform grid, each refined by bisection.
inline std::vector<double> bracketed_roots(const std::function<double(double)>& f, double a, double b,
                                           int intervals = 4096, double xtol = 1e-14) {
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  if (f0 == 0) roots.push_back(a);
  for (int i = 1; i <= intervals; ++i) {
    double x1 = a + (b - a) * i / intervals;
    double f1 = f(x1);
    if (f1 == 0) {
      roots.push_back(x1);
    } else if (f0 != 0 && (f0 < 0) != (f1 < 0)) {
      auto tol = [xtol](double l, double r) { return std::abs(r - l) <= xtol; };
      auto [lo, hi] = boost::math::tools::bisect(f, x0, x1, tol);
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// Solve [c0 c1 c2] x = rhs with partial pivoting.
inline std::array<double, 3> solve3(Vec3 c0, Vec3 c1, Vec3 c2, Vec3 rhs) {
  Eigen::Matrix3d m;
  m << c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z;
  Eigen::Vector3d b(rhs.x, rhs.y, rhs.z);
  Eigen::Vector3d x = m.partialPivLu().solve(b);
  return {x(0), x(1), x(2)};
}

// |d/ds unit(w(s))| given w and w' = dw/ds.
inline double unit_direction_speed(Vec2 w, Vec2 dw) { return std::abs(cross(w, dw)) / dot(w, w); }
inline double unit_direction_speed(Vec3 w, Vec3 dw) { return norm(cross(w, dw)) / dot(w, w); }

// Same quantity for w = a1 p + a2 q with fixed p, q, from the Gram entries pp, pq, qq.
inline double unit_direction_speed_gram(double a1, double a2, double da1, double da2, double pp,
                                        double pq, double qq) {
  double ww = a1 * a1 * pp + 2 * a1 * a2 * pq + a2 * a2 * qq;
  double area = std::sqrt(std::max(0.0, pp * qq - pq * pq));
  return std::abs(a1 * da2 - a2 * da1) * area / ww;
}

inline std::vector<double> uniform_grid(double a, double b, int n) {
  std::vector<double> g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) g.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return g;
}

}  // namespace rotor
