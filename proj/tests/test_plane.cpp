#include <gtest/gtest.h>

#include <numbers>

#include <rotor/curve.hpp>
#include <rotor/expr.hpp>
#include <rotor/numerics.hpp>
#include <rotor/plane.hpp>

#include "oracle.hpp"

using namespace rotor;
using std::numbers::pi;

namespace {

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::BadParameters;
}

Vec2 unit(Vec2 v) { return (1 / oracle::len(v)) * v; }

// Ellipses, off-center circles and cubics, all avoiding the origin.
PlaneCurve random_curve(oracle::Rng& rng, int family) {
  switch (family % 3) {
    case 0: {
      double b = rng(0.3, 2);
      return make_ellipse(b * rng(1.05, 3), b);
    }
    case 1: {
      double r = rng(0.3, 1.5);
      return make_circle(r, rng(r + 0.5, r + 3), rng(-1, 1));
    }
    default:
      return make_plane_polynomial({rng(0.5, 2), rng(0.2, 1), rng(-0.5, 0.5)},
                                   {rng(-1, 1), rng(-1, 1), rng(-0.5, 0.5), rng(-0.3, 0.3)}, 0, 1);
  }
}

}  // namespace

TEST(Frame, EllipseAboutFocus) {
  const double c = std::sqrt(3.0);
  FrameSample2 f = frame_at(make_ellipse(2, 1), {c, 0}, 0);
  EXPECT_NEAR(f.xi, 2 - c, 1e-15);
  EXPECT_EQ(f.e1, (Vec2{1, 0}));
  EXPECT_EQ(f.e2, (Vec2{0, 1}));
  EXPECT_EQ(f.eta, 0);
}

TEST(Frame, OrthonormalAndRightHanded) {
  oracle::Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    PlaneCurve c = random_curve(rng, i);
    Vec2 center = rng.vec2(-0.2, 0.2);
    double t = rng(c.t0(), c.t1());
    FrameSample2 f = frame_at(c, center, t);
    EXPECT_NEAR(norm(f.e1), 1, 1e-14);
    EXPECT_NEAR(dot(f.e1, f.e2), 0, 1e-15);
    EXPECT_NEAR(cross(f.e1, f.e2), 1, 1e-14);
    EXPECT_LT(norm(center + f.xi * f.e1 - c(t)), 1e-13 * (1 + norm(c(t))));
  }
}

TEST(Distance, CircleAboutCenter) {
  PlaneCurve c = make_circle(2, 1, -1);
  for (double t : {0.0, 1.0, 4.0}) {
    PlaneKinematics k = distance_kinematics(c, {1, -1}, t);
    EXPECT_NEAR(k.D, 2, 1e-15);
    EXPECT_NEAR(k.dD, 0, 1e-15);
    EXPECT_NEAR(k.d2D, 0, 1e-14);
    EXPECT_NEAR(k.rot_speed, 1, 1e-15);
  }
}

TEST(Distance, EllipseAtVertex) {
  PlaneKinematics k = distance_kinematics(make_ellipse(2, 1), {}, 0);
  EXPECT_EQ(k.D, 2);
  EXPECT_EQ(k.dD, 0);
  EXPECT_DOUBLE_EQ(k.d2D, -1.5);
  EXPECT_DOUBLE_EQ(k.rot_speed, 0.5);
}

TEST(Distance, EllipseAboutFocusAtVertex) {
  const double c = std::sqrt(3.0);
  PlaneKinematics k = distance_kinematics(make_ellipse(2, 1), {c, 0}, 0);
  EXPECT_NEAR(k.dD, 0, 1e-15);
  EXPECT_NEAR(k.d2D, c, 1e-13);
}

TEST(Distance, RatesMatchStencilsAndVelocityIsPerpendicular) {
  oracle::Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    PlaneCurve c = random_curve(rng, i);
    Vec2 center = rng.vec2(-0.2, 0.2);
    double span = c.t1() - c.t0();
    double t = rng(c.t0() + 0.05 * span, c.t1() - 0.05 * span);
    PlaneKinematics k = distance_kinematics(c, center, t);
    auto D = [&](double s) { return oracle::len(c(s) - center); };
    auto e1 = [&](double s) { return unit(c(s) - center); };
    double scale = std::max(1.0, std::abs(oracle::d1(D, t)));
    EXPECT_NEAR(k.dD, oracle::d1(D, t), 1e-8 * scale);
    EXPECT_NEAR(k.d2D, oracle::d2(D, t), 1e-5 * std::max(1.0, std::abs(oracle::d2(D, t))));
    EXPECT_NEAR(k.rot_speed, oracle::len(oracle::d1(e1, t)), 1e-8 * std::max(1.0, k.rot_speed));
    EXPECT_NEAR(k.rot_speed, norm(k.rot_velocity), 1e-13 * std::max(1.0, k.rot_speed));
    EXPECT_NEAR(dot(k.rot_velocity, unit(c(t) - center)), 0, 1e-13 * std::max(1.0, k.rot_speed));
  }
}

TEST(Distance, CenterOnCurve) {
  try {
    distance_kinematics(make_circle(1), {1, 0}, 0);
    FAIL() << "expected CenterOnCurve";
  } catch (const PointError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CenterOnCurve);
    EXPECT_EQ(e.t(), 0);
  }
  EXPECT_EQ(kind_of([] { frame_at(make_circle(1), {0, 1}, pi / 2); }), ErrorKind::CenterOnCurve);
}

TEST(Chord, LineDoesNotRotate) {
  PlaneCurve l = make_line(1, 2, 3, -1);
  for (double dt : {1e-3, 0.1, 2.0}) EXPECT_EQ(chord_kinematics(l, 0.5, dt).rot_speed, 0);
}

TEST(Chord, UnitCircleRotatesAtHalfRate) {
  PlaneKinematics k = chord_kinematics(make_circle(1), 0.3, 1e-3);
  EXPECT_NEAR(k.rot_speed, 0.5, 1e-3);
}

TEST(Chord, EllipseMatchesStencilOfUnitChord) {
  PlaneCurve e = make_ellipse(3, 1.2);
  for (double t : {0.2, 1.1, 2.5, 4.0})
    for (double dt : {1e-2, 0.3, 1.5}) {
      PlaneKinematics k = chord_kinematics(e, t, dt);
      auto D = [&](double s) { return oracle::len(e(s) - e(t)); };
      auto u = [&](double s) { return unit(e(s) - e(t)); };
      double s = t + dt;
      EXPECT_NEAR(k.D, D(s), 1e-14);
      EXPECT_LT(oracle::rel(k.dD, oracle::d1(D, s, 1e-4 * dt), 1), 1e-7) << t << " " << dt;
      EXPECT_LT(oracle::rel(k.d2D, oracle::d2(D, s, 1e-3 * dt), 1), 1e-4) << t << " " << dt;
      EXPECT_LT(oracle::rel(k.rot_speed, oracle::len(oracle::d1(u, s, 1e-4 * dt)), 1), 1e-7) << t << " " << dt;
    }
}

TEST(Chord, NonPositiveStepRejected) {
  EXPECT_EQ(kind_of([] { chord_kinematics(make_circle(1), 0, 0); }), ErrorKind::DegenerateChord);
}

TEST(LocalLimits, LineHasNoRotation) {
  LocalLimits2 l = local_limits(make_line(0, 0, 3, 4), 1);
  EXPECT_EQ(l.phi, 5);
  EXPECT_EQ(l.phi_prime, 0);
  EXPECT_EQ(l.psi_speed, 0);
}

TEST(LocalLimits, EllipseVertex) {
  LocalLimits2 l = local_limits(make_ellipse(2, 1), 0);
  EXPECT_EQ(l.phi, 1);
  EXPECT_EQ(l.psi_speed, 1);
}

TEST(LocalLimits, PsiIsHalfCurvatureTimesSpeed) {
  oracle::Rng rng(43);
  for (int i = 0; i < 1000; ++i) {
    PlaneCurve c = random_curve(rng, i);
    double t = rng(c.t0() + 0.02, c.t1() - 0.02);
    Vec2 r1 = oracle::d1(c.position_fn(), t), r2 = oracle::d2(c.position_fn(), t);
    double phi = oracle::len(r1);
    LocalLimits2 l = local_limits(c, t);
    EXPECT_LT(oracle::rel(l.phi, phi), 1e-9);
    EXPECT_NEAR(l.psi_speed, 0.5 * std::abs(oracle::plane_curvature(r1, r2)) * phi, 1e-6 * std::max(1.0, l.psi_speed));
    EXPECT_NEAR(l.psi_speed, norm(l.psi), 1e-13 * std::max(1.0, l.psi_speed));
    EXPECT_NEAR(l.phi_prime, oracle::d1([&](double s) { return oracle::len(c.derivative(s, 1)); }, t),
                1e-7 * std::max(1.0, std::abs(l.phi_prime)));
  }
}

TEST(LocalLimits, ChordRotationTendsToPsi) {
  PlaneCurve e = make_ellipse(2.5, 1);
  for (double t : {0.3, 1.7, 3.9}) {
    double lim = ladder_limit([&](double dt) { return chord_kinematics(e, t, dt).rot_speed; },
                              geometric_ladder(0.02, 0.5, 5));
    EXPECT_NEAR(lim, local_limits(e, t).psi_speed, 1e-7) << t;
  }
}

TEST(LocalLimits, SingularPoint) {
  PlaneCurve cusp = expr::make_expr_curve("t^3", "t^2", -1, 1);
  try {
    local_limits(cusp, 0);
    FAIL() << "expected SingularPoint";
  } catch (const PointError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularPoint);
  }
}

TEST(Congruence, RigidCopyMatchesAndOtherEllipseDoesNot) {
  PlaneCurve e = make_ellipse(2, 1);
  PlaneCurve moved = expr::make_expr_curve("1 + 2*cos(t)*cos(0.7) - sin(t)*sin(0.7)",
                                           "-3 + 2*cos(t)*sin(0.7) + sin(t)*cos(0.7)", 0, 2 * pi);
  auto grid = uniform_grid(0, 2 * pi, 200);
  CongruenceReport same = plane_congruent(e, moved, grid);
  EXPECT_TRUE(same.congruent);
  EXPECT_LT(same.max_deviation, 1e-12);
  CongruenceReport other = plane_congruent(e, make_ellipse(2, 1.1), grid);
  EXPECT_FALSE(other.congruent);
  EXPECT_GT(other.max_deviation, 0.05);
}

TEST(Congruence, MirrorImageIsCongruentInThePlane) {
  PlaneCurve c = make_plane_polynomial({0, 1}, {0, 0, 1, 0.5}, -1, 1);
  PlaneCurve m = make_plane_polynomial({0, 1}, {0, 0, -1, -0.5}, -1, 1);
  EXPECT_TRUE(plane_congruent(c, m, uniform_grid(-1, 1, 101)).congruent);
}
