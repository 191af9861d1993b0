#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "curve.hpp"
#include "expr.hpp"
#include "numerics.hpp"
#include "space.hpp"
#include "vec.hpp"

namespace rotor {

// Chart value and partials. Index 0 is u, index 1 is v.
struct SurfaceJet {
  Vec3 r;
  std::array<Vec3, 2> d1;
  std::array<std::array<Vec3, 2>, 2> d2;
  std::array<std::array<std::array<Vec3, 2>, 2>, 2> d3;
};

class Surface {
 public:
  using JetFn = std::function<SurfaceJet(double, double)>;

  Surface(std::string name, JetFn jet, bool has_third, double u0, double u1, double v0, double v1)
      : name_(std::move(name)), jet_(std::move(jet)), has_third_(has_third), u0_(u0), u1_(u1), v0_(v0), v1_(v1) {}

  const std::string& name() const { return name_; }
  bool has_third() const { return has_third_; }
  bool in_domain(double u, double v) const { return u >= u0_ && u <= u1_ && v >= v0_ && v <= v1_; }
  SurfaceJet jet(double u, double v) const { return jet_(u, v); }
  Vec3 operator()(double u, double v) const { return jet_(u, v).r; }

  // Same chart with the third partials hidden, so derived partials fall back to differences.
  Surface without_third() const { return Surface(name_, jet_, false, u0_, u1_, v0_, v1_); }

 private:
  std::string name_;
  JetFn jet_;
  bool has_third_;
  double u0_, u1_, v0_, v1_;
};

namespace detail {

// Fills symmetric partials from the distinct ones.
inline SurfaceJet make_jet(Vec3 r, Vec3 ru, Vec3 rv, Vec3 ruu, Vec3 ruv, Vec3 rvv, Vec3 ruuu, Vec3 ruuv, Vec3 ruvv,
                           Vec3 rvvv) {
  SurfaceJet j;
  j.r = r;
  j.d1 = {ru, rv};
  j.d2 = {{{ruu, ruv}, {ruv, rvv}}};
  j.d3[0][0][0] = ruuu;
  j.d3[0][0][1] = j.d3[0][1][0] = j.d3[1][0][0] = ruuv;
  j.d3[0][1][1] = j.d3[1][0][1] = j.d3[1][1][0] = ruvv;
  j.d3[1][1][1] = rvvv;
  return j;
}

}  // namespace detail

// (cos v cos u, cos v sin u, sin v) scaled by radius, about center
inline Surface make_sphere(double radius, Vec3 center = {}) {
  const double R = radius;
  auto jet = [R, center](double u, double v) {
    double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    return detail::make_jet(center + R * Vec3{cv * cu, cv * su, sv}, R * Vec3{-cv * su, cv * cu, 0},
                            R * Vec3{-sv * cu, -sv * su, cv}, R * Vec3{-cv * cu, -cv * su, 0},
                            R * Vec3{sv * su, -sv * cu, 0}, R * Vec3{-cv * cu, -cv * su, -sv},
                            R * Vec3{cv * su, -cv * cu, 0}, R * Vec3{sv * cu, sv * su, 0},
                            R * Vec3{cv * su, -cv * cu, 0}, R * Vec3{sv * cu, sv * su, -cv});
  };
  const double pi = std::numbers::pi;
  return Surface("sphere", jet, true, -4 * pi, 4 * pi, -pi / 2, pi / 2);
}

// ((R + a cos v) cos u, (R + a cos v) sin u, a sin v)
inline Surface make_torus(double R, double a, Vec3 center = {}) {
  auto jet = [R, a, center](double u, double v) {
    double cu = std::cos(u), su = std::sin(u), cv = std::cos(v), sv = std::sin(v);
    double p = R + a * cv, pv = -a * sv, pvv = -a * cv, pvvv = a * sv;
    return detail::make_jet(center + Vec3{p * cu, p * su, a * sv}, {-p * su, p * cu, 0}, {pv * cu, pv * su, a * cv},
                            {-p * cu, -p * su, 0}, {-pv * su, pv * cu, 0}, {pvv * cu, pvv * su, -a * sv},
                            {p * su, -p * cu, 0}, {-pv * cu, -pv * su, 0}, {-pvv * su, pvv * cu, 0},
                            {pvvv * cu, pvvv * su, -a * cv});
  };
  const double pi = std::numbers::pi;
  return Surface("torus", jet, true, -4 * pi, 4 * pi, -4 * pi, 4 * pi);
}

// (u, v, z0)
inline Surface make_flat_plane(double z0 = 0) {
  auto jet = [z0](double u, double v) {
    Vec3 o{};
    return detail::make_jet({u, v, z0}, {1, 0, 0}, {0, 1, 0}, o, o, o, o, o, o, o);
  };
  return Surface("plane", jet, true, -1e6, 1e6, -1e6, 1e6);
}

// (R cos u, R sin u, v)
inline Surface make_cylinder(double R) {
  auto jet = [R](double u, double v) {
    double cu = std::cos(u), su = std::sin(u);
    Vec3 o{};
    return detail::make_jet({R * cu, R * su, v}, {-R * su, R * cu, 0}, {0, 0, 1}, {-R * cu, -R * su, 0}, o, o,
                            {R * su, -R * cu, 0}, o, o, o);
  };
  return Surface("cylinder", jet, true, -1e6, 1e6, -1e6, 1e6);
}

struct GraphCoefficients {
  double c0 = 0, a20 = 0, a11 = 0, a02 = 0, a30 = 0, a03 = 0;
};

// (u, v, f(u, v)), f = c0 + a20 u^2 + a11 u v + a02 v^2 + a30 u^3 + a03 v^3
inline Surface make_graph(GraphCoefficients k) {
  auto jet = [k](double u, double v) {
    double f = k.c0 + k.a20 * u * u + k.a11 * u * v + k.a02 * v * v + k.a30 * u * u * u + k.a03 * v * v * v;
    double fu = 2 * k.a20 * u + k.a11 * v + 3 * k.a30 * u * u;
    double fv = k.a11 * u + 2 * k.a02 * v + 3 * k.a03 * v * v;
    double fuu = 2 * k.a20 + 6 * k.a30 * u, fuv = k.a11, fvv = 2 * k.a02 + 6 * k.a03 * v;
    return detail::make_jet({u, v, f}, {1, 0, fu}, {0, 1, fv}, {0, 0, fuu}, {0, 0, fuv}, {0, 0, fvv},
                            {0, 0, 6 * k.a30}, {0, 0, 0}, {0, 0, 0}, {0, 0, 6 * k.a03});
  };
  return Surface("graph", jet, true, -1e6, 1e6, -1e6, 1e6);
}

inline Surface make_catalog_surface(const std::string& kind, const Params& p) {
  using detail::only_keys;
  using detail::take;
  if (kind == "sphere") {
    only_keys(p, {"radius", "cx", "cy", "cz"}, kind);
    double r = take(p, "radius", 1);
    if (!(r > 0)) fail(ErrorKind::BadParameters, "sphere radius must be positive");
    return make_sphere(r, {take(p, "cx", 0), take(p, "cy", 0), take(p, "cz", 0)});
  }
  if (kind == "torus") {
    only_keys(p, {"R", "a", "cx", "cy", "cz"}, kind);
    double R = take(p, "R", 2), a = take(p, "a", 1);
    if (!(a > 0) || !(R > a)) fail(ErrorKind::BadParameters, "torus needs R > a > 0");
    return make_torus(R, a, {take(p, "cx", 0), take(p, "cy", 0), take(p, "cz", 0)});
  }
  if (kind == "plane") {
    only_keys(p, {"z0"}, kind);
    return make_flat_plane(take(p, "z0", 0));
  }
  if (kind == "cylinder") {
    only_keys(p, {"radius"}, kind);
    double r = take(p, "radius", 1);
    if (!(r > 0)) fail(ErrorKind::BadParameters, "cylinder radius must be positive");
    return make_cylinder(r);
  }
  if (kind == "graph") {
    only_keys(p, {"c0", "a20", "a11", "a02", "a30", "a03"}, kind);
    return make_graph({take(p, "c0", 0), take(p, "a20", 0), take(p, "a11", 0), take(p, "a02", 0),
                       take(p, "a30", 0), take(p, "a03", 0)});
  }
  fail(ErrorKind::UnknownCurve, "surface " + kind);
}

using Mat2 = std::array<std::array<double, 2>, 2>;

// Gamma[k][i][j] is the Christoffel symbol of the second kind; dGamma[l][k][i][j] its l-th partial;
// dL[k][i][j] the k-th partial of L_ij.
struct SurfaceGeometry {
  SurfaceJet jet;
  Mat2 g{}, g_inv{}, L{};
  std::array<Mat2, 2> Gamma{};
  std::array<std::array<Mat2, 2>, 2> dGamma{};
  std::array<Mat2, 2> dL{};
  Vec3 n;
};

inline void fill_first_and_second(SurfaceGeometry& G, double u, double v) {
  const SurfaceJet& j = G.jet;
  Vec3 nn = cross(j.d1[0], j.d1[1]);
  double area = norm(nn);
  if (!(area > kEpsNorm)) fail(ErrorKind::IrregularNet, "r_u ^ r_v vanishes at (" + std::to_string(u) + ", " +
                                                            std::to_string(v) + ")");
  G.n = nn / area;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      G.g[a][b] = dot(j.d1[a], j.d1[b]);
      G.L[a][b] = dot(j.d2[a][b], G.n);
    }
  double det = G.g[0][0] * G.g[1][1] - G.g[0][1] * G.g[1][0];
  G.g_inv = {{{G.g[1][1] / det, -G.g[0][1] / det}, {-G.g[1][0] / det, G.g[0][0] / det}}};
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double s = 0;
        for (int m = 0; m < 2; ++m) s += G.g_inv[k][m] * dot(j.d2[a][b], j.d1[m]);
        G.Gamma[k][a][b] = s;
      }
}

inline SurfaceGeometry surface_geometry(const Surface& S, double u, double v, double fd_step = 1e-4) {
  SurfaceGeometry G;
  G.jet = S.jet(u, v);
  fill_first_and_second(G, u, v);
  const SurfaceJet& j = G.jet;
  if (S.has_third()) {
    // d_l g_ab, d_l g^km, d_l (r_ab . r_m), Weingarten n_l = -L_lm g^mj r_j
    for (int l = 0; l < 2; ++l) {
      Mat2 dg{}, dginv{};
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) dg[a][b] = dot(j.d2[a][l], j.d1[b]) + dot(j.d1[a], j.d2[b][l]);
      for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m) {
          double s = 0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += G.g_inv[k][a] * dg[a][b] * G.g_inv[b][m];
          dginv[k][m] = -s;
        }
      Vec3 nl{};
      for (int m = 0; m < 2; ++m)
        for (int q = 0; q < 2; ++q) nl -= (G.L[l][m] * G.g_inv[m][q]) * j.d1[q];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          for (int k = 0; k < 2; ++k) {
            double s = 0;
            for (int m = 0; m < 2; ++m) {
              double first = dot(j.d2[a][b], j.d1[m]);
              double dfirst = dot(j.d3[a][b][l], j.d1[m]) + dot(j.d2[a][b], j.d2[m][l]);
              s += dginv[k][m] * first + G.g_inv[k][m] * dfirst;
            }
            G.dGamma[l][k][a][b] = s;
          }
          G.dL[l][a][b] = dot(j.d3[a][b][l], G.n) + dot(j.d2[a][b], nl);
        }
    }
  } else {
    const double h = fd_step;
    for (int l = 0; l < 2; ++l) {
      double du = l == 0 ? h : 0, dv = l == 1 ? h : 0;
      SurfaceGeometry P, M;
      P.jet = S.jet(u + du, v + dv);
      M.jet = S.jet(u - du, v - dv);
      fill_first_and_second(P, u + du, v + dv);
      fill_first_and_second(M, u - du, v - dv);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          for (int k = 0; k < 2; ++k) G.dGamma[l][k][a][b] = (P.Gamma[k][a][b] - M.Gamma[k][a][b]) / (2 * h);
          G.dL[l][a][b] = (P.L[a][b] - M.L[a][b]) / (2 * h);
        }
    }
  }
  return G;
}

// u(t), v(t) with derivatives to order 3; index [coordinate][order].
class ChartCurve {
 public:
  using Fn = std::function<double(double)>;

  ChartCurve(std::array<Fn, 4> u, std::array<Fn, 4> v, double t0, double t1)
      : u_(std::move(u)), v_(std::move(v)), t0_(t0), t1_(t1) {}

  double t0() const { return t0_; }
  double t1() const { return t1_; }

  // (u, v) derivative of the given order at t
  std::array<double, 2> at(double t, int order) const {
    if (t < t0_ - 1e-12 * std::max(1.0, std::abs(t0_)) || t > t1_ + 1e-12 * std::max(1.0, std::abs(t1_)))
      throw PointError(ErrorKind::OutOfDomain, t);
    return {u_[order](t), v_[order](t)};
  }

 private:
  std::array<Fn, 4> u_, v_;
  double t0_, t1_;
};

inline ChartCurve make_expr_chart_curve(const std::string& u, const std::string& v, double t0, double t1) {
  auto ju = std::make_shared<const expr::Jet>(expr::parse(u));
  auto jv = std::make_shared<const expr::Jet>(expr::parse(v));
  std::array<ChartCurve::Fn, 4> fu, fv;
  for (int k = 0; k < 4; ++k) {
    fu[k] = [ju, k](double t) { return expr::evaluate(ju->order(k), t); };
    fv[k] = [jv, k](double t) { return expr::evaluate(jv->order(k), t); };
  }
  return ChartCurve(fu, fv, t0, t1);
}

struct CurveJet3 {
  Vec3 r, r1, r2, r3;
};

// r', r'' and r''' of t -> r(u(t), v(t)) written in the natural frame {r_1, r_2, n}.
inline CurveJet3 chart_curve_derivatives(const Surface& S, const ChartCurve& c, double t) {
  auto u0 = c.at(t, 0), u1 = c.at(t, 1), u2 = c.at(t, 2), u3 = c.at(t, 3);
  SurfaceGeometry G = surface_geometry(S, u0[0], u0[1]);
  const auto& rk = G.jet.d1;
  CurveJet3 out;
  out.r = G.jet.r;
  out.r1 = u1[0] * rk[0] + u1[1] * rk[1];

  // r'' = (Gamma^k_ij u'^i u'^j + u''^k) r_k + L_ij u'^i u'^j n
  std::array<double, 2> A{};
  double B = 0;
  for (int k = 0; k < 2; ++k) {
    A[k] = u2[k];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) A[k] += G.Gamma[k][i][j] * u1[i] * u1[j];
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) B += G.L[i][j] * u1[i] * u1[j];
  out.r2 = A[0] * rk[0] + A[1] * rk[1] + B * G.n;

  // r''' tangential part
  std::array<double, 2> T{};
  double N = 0;
  for (int k = 0; k < 2; ++k) {
    double s = u3[k];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
          s += G.dGamma[l][k][i][j] * u1[i] * u1[j] * u1[l];
          for (int m = 0; m < 2; ++m) {
            s += G.Gamma[m][i][j] * G.Gamma[k][m][l] * u1[i] * u1[j] * u1[l];
            s -= G.L[i][j] * G.L[l][m] * G.g_inv[m][k] * u1[i] * u1[j] * u1[l];
          }
        }
        s += 2 * G.Gamma[k][i][j] * u2[i] * u1[j];
        s += G.Gamma[k][i][j] * u1[i] * u2[j];
      }
    T[k] = s;
  }
  // r''' normal part
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      for (int l = 0; l < 2; ++l) {
        N += G.dL[l][i][j] * u1[i] * u1[j] * u1[l];
        for (int k = 0; k < 2; ++k) N += G.Gamma[k][i][j] * G.L[k][l] * u1[i] * u1[j] * u1[l];
      }
      N += 2 * G.L[i][j] * u2[i] * u1[j];
      N += G.L[i][j] * u1[i] * u2[j];
    }
  out.r3 = T[0] * rk[0] + T[1] * rk[1] + N * G.n;
  return out;
}

// t -> r(u(t), v(t)) as a space curve.
inline SpaceCurve compose(const Surface& S, const ChartCurve& c) {
  auto at = [S, c](int k) {
    return [S, c, k](double t) {
      CurveJet3 j = chart_curve_derivatives(S, c, t);
      return k == 0 ? j.r : k == 1 ? j.r1 : k == 2 ? j.r2 : j.r3;
    };
  };
  auto pos = [S, c](double t) {
    auto q = c.at(t, 0);
    return S(q[0], q[1]);
  };
  return SpaceCurve(c.t0(), c.t1(), pos, {at(1), at(2), at(3)});
}

inline SpaceKinematics surface_distance_kinematics(const Surface& S, const ChartCurve& c, double t) {
  CurveJet3 j = chart_curve_derivatives(S, c, t);
  if (!(norm(j.r) > kEpsNorm)) throw PointError(ErrorKind::CenterOnCurve, t);
  return vector_kinematics(j.r, j.r1, j.r2, t, ErrorKind::DegenerateProjection);
}

inline double first_fundamental_form(const SurfaceGeometry& G, std::array<double, 2> a, std::array<double, 2> b) {
  double s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += G.g[i][j] * a[i] * b[j];
  return s;
}

inline double surface_local_first_derivative(const Surface& S, const ChartCurve& c, double t) {
  auto q = c.at(t, 0), d = c.at(t, 1);
  SurfaceJet j = S.jet(q[0], q[1]);
  if (!(norm(cross(j.d1[0], j.d1[1])) > kEpsNorm)) throw PointError(ErrorKind::IrregularNet, t);
  return norm(d[0] * j.d1[0] + d[1] * j.d1[1]);
}

struct ChiCoefficients {
  double chi1 = 0, chi2 = 0, chi3 = 0;
};

inline ChiCoefficients chi_in(const SurfaceGeometry& G, Vec3 v) {
  auto x = solve3(G.jet.d1[0], G.jet.d1[1], G.n, v);
  return {x[0], x[1], x[2]};
}

// r(t + dt) - r(t) = chi1 r_1 + chi2 r_2 + chi3 n at t
inline ChiCoefficients chi_coefficients(const Surface& S, const ChartCurve& c, double t, double dt) {
  if (!(dt > 0)) throw PointError(ErrorKind::DegenerateChord, t, "dt must be positive");
  auto q = c.at(t, 0), q2 = c.at(t + dt, 0);
  SurfaceGeometry G = surface_geometry(S, q[0], q[1]);
  return chi_in(G, S(q2[0], q2[1]) - G.jet.r);
}

// Finite-dt rotational speeds of the chord components in the tangent plane (A), the
// (r_1, n) plane (B) and the (r_2, n) plane (C).
inline std::array<double, 3> surface_plane_speeds(const Surface& S, const ChartCurve& c, double t, double dt) {
  if (!(dt > 0)) throw PointError(ErrorKind::DegenerateChord, t, "dt must be positive");
  auto q = c.at(t, 0), q2 = c.at(t + dt, 0), d2 = c.at(t + dt, 1);
  SurfaceGeometry G = surface_geometry(S, q[0], q[1]);
  SurfaceJet j2 = S.jet(q2[0], q2[1]);
  ChiCoefficients x = chi_in(G, j2.r - G.jet.r);
  ChiCoefficients dx = chi_in(G, d2[0] * j2.d1[0] + d2[1] * j2.d1[1]);
  if ((x.chi1 == 0 && x.chi2 == 0) || (x.chi1 == 0 && x.chi3 == 0) || (x.chi2 == 0 && x.chi3 == 0))
    throw PointError(ErrorKind::DegenerateProjection, t);
  return {unit_direction_speed_gram(x.chi1, x.chi2, dx.chi1, dx.chi2, G.g[0][0], G.g[0][1], G.g[1][1]),
          unit_direction_speed_gram(x.chi1, x.chi3, dx.chi1, dx.chi3, G.g[0][0], 0.0, 1.0),
          unit_direction_speed_gram(x.chi2, x.chi3, dx.chi2, dx.chi3, G.g[1][1], 0.0, 1.0)};
}

// psiB needs du/dt != 0 and psiC needs dv/dt != 0; otherwise they are empty.
struct SurfaceRotLimits {
  double psiA = 0;
  std::optional<double> psiB, psiC;
};

inline SurfaceRotLimits surface_plane_rot_limits(const Surface& S, const ChartCurve& c, double t) {
  auto q = c.at(t, 0), d1 = c.at(t, 1), d2 = c.at(t, 2);
  SurfaceGeometry G = surface_geometry(S, q[0], q[1]);
  double tt = first_fundamental_form(G, d1, d1);
  if (!(std::sqrt(tt) > kEpsNorm)) throw PointError(ErrorKind::SingularPoint, t);
  std::array<double, 2> a{};
  for (int l = 0; l < 2; ++l) {
    a[l] = d2[l];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a[l] += G.Gamma[l][i][j] * d1[i] * d1[j];
  }
  double at = first_fundamental_form(G, a, d1);
  std::array<double, 2> V{a[0] * tt - d1[0] * at, a[1] * tt - d1[1] * at};
  double normal = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) normal += G.L[i][j] * d1[i] * d1[j];
  SurfaceRotLimits out;
  out.psiA = 0.5 * std::sqrt(std::max(0.0, first_fundamental_form(G, V, V))) / (tt * std::sqrt(tt));
  double p1 = std::abs(d1[0]) * std::sqrt(G.g[0][0]), p2 = std::abs(d1[1]) * std::sqrt(G.g[1][1]);
  if (p1 > kEpsNorm) out.psiB = 0.5 * std::abs(normal) / p1;
  if (p2 > kEpsNorm) out.psiC = 0.5 * std::abs(normal) / p2;
  return out;
}

}  // namespace rotor
