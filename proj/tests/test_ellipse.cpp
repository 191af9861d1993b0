#include <gtest/gtest.h>

#include <numbers>

#include <rotor/curve.hpp>
#include <rotor/ellipse.hpp>
#include <rotor/numerics.hpp>
#include <rotor/plane.hpp>
#include <rotor/reconstruction.hpp>

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

}  // namespace

TEST(Params, Validation) {
  EllipseParams p = EllipseParams::make(5, 3);
  EXPECT_DOUBLE_EQ(p.c, 4);
  EXPECT_NEAR(p.c * p.c + p.b * p.b, p.a * p.a, 1e-12);
  EXPECT_EQ(kind_of([] { EllipseParams::make(1, 1); }), ErrorKind::BadParameters);
  EXPECT_EQ(kind_of([] { EllipseParams::make(1, 2); }), ErrorKind::BadParameters);
  EXPECT_EQ(kind_of([] { EllipseParams::make(1, -1, true); }), ErrorKind::BadParameters);
}

TEST(Origin, VertexAndZeroOfAcceleration) {
  EllipseParams p = EllipseParams::make(2, 1);
  PlaneKinematics k = origin_frame_profile(p, 0);
  EXPECT_EQ(k.D, 2);
  EXPECT_EQ(k.dD, 0);
  EXPECT_NEAR(origin_frame_profile(p, std::atan(std::sqrt(2.0))).d2D, 0, 1e-12);
}

TEST(Origin, CircleLimitSpinsUniformly) {
  EllipseParams p = EllipseParams::make(1.3, 1.3, true);
  for (double th : uniform_grid(0, 2 * pi, 17)) {
    PlaneKinematics k = origin_frame_profile(p, th);
    EXPECT_DOUBLE_EQ(k.rot_speed, 1);
    EXPECT_EQ(k.dD, 0);
  }
}

TEST(Focus, TableColumns) {
  EllipseParams p = EllipseParams::make(2, 1);
  const double a = p.a, c = p.c;
  struct Col {
    double th, xi, d1, d2;
  };
  for (Col col : {Col{0, a - c, 0, c}, Col{pi / 2, a, c, 0}, Col{pi, a + c, 0, -c}}) {
    FocusSample f = focus_frame_profile(p, col.th);
    EXPECT_NEAR(f.xi1, col.xi, 1e-15) << col.th;
    EXPECT_NEAR(f.d1, col.d1, 1e-15) << col.th;
    EXPECT_NEAR(f.d2, col.d2, 1e-15) << col.th;
  }
}

TEST(Focus, SignTableHolds) {
  for (auto [a, b] : {std::pair{2.0, 1.0}, std::pair{1.01, 1.0}, std::pair{10.0, 1.0}}) {
    Table51Report r = verify_table51(EllipseParams::make(a, b));
    EXPECT_TRUE(r.ok()) << a << " " << b << ": " << r.violations.size() << " violations, endpoint error "
                        << r.max_endpoint_error;
  }
  EXPECT_EQ(kind_of([] { verify_table51(EllipseParams::make(2, 1), 999); }), ErrorKind::BadParameters);
}

TEST(Focus, DerivativesAgainstStencils) {
  oracle::Rng rng(81);
  for (int i = 0; i < 1000; ++i) {
    double b = rng(0.3, 2);
    EllipseParams p = EllipseParams::make(b * rng(1.05, 5), b);
    double th = rng(0.05, 2 * pi - 0.05);
    auto xi = [&](double s) { return focus_frame_profile(p, s).xi1; };
    auto d1 = [&](double s) { return focus_frame_profile(p, s).d1; };
    auto d2 = [&](double s) { return focus_frame_profile(p, s).d2; };
    FocusSample f = focus_frame_profile(p, th);
    double scale = p.a;
    EXPECT_NEAR(f.d1, oracle::d1(xi, th, 1e-4), 1e-6 * scale);
    EXPECT_NEAR(f.d2, oracle::d1(d1, th, 1e-4), 1e-6 * scale);
    EXPECT_NEAR(f.d3, oracle::d1(d2, th, 1e-4), 1e-5 * scale) << p.a << " " << p.b << " " << th;
  }
}

TEST(Generic, ClosedFormsAgreeWithPlaneKinematics) {
  oracle::Rng rng(82);
  for (int i = 0; i < 1000; ++i) {
    double b = rng(0.3, 2);
    EllipseParams p = EllipseParams::make(b * rng(1.05, 5), b);
    PlaneCurve e = make_ellipse(p.a, p.b);
    double th = rng(0, 2 * pi);
    PlaneKinematics o = origin_frame_profile(p, th), og = distance_kinematics(e, {}, th);
    PlaneKinematics f = focus_frame_profile(p, th).kin, fg = distance_kinematics(e, p.focus(), th);
    for (auto [x, y] : {std::pair{o, og}, std::pair{f, fg}}) {
      double s = std::max(1.0, p.a * p.a / (p.b * p.b));
      EXPECT_NEAR(x.D, y.D, 1e-12 * s);
      EXPECT_NEAR(x.dD, y.dD, 1e-12 * s);
      EXPECT_NEAR(x.d2D, y.d2D, 1e-12 * s * s);
      EXPECT_NEAR(x.rot_speed, y.rot_speed, 1e-12 * s * s);
      EXPECT_LT(norm(x.rot_velocity - y.rot_velocity), 1e-12 * s * s);
    }
  }
}

TEST(Generic, LocalValuesMatchLimits) {
  EllipseParams p = EllipseParams::make(2, 1);
  PlaneCurve e = make_ellipse(2, 1);
  for (double th : uniform_grid(0, 2 * pi, 41)) {
    double s = std::sin(th), c = std::cos(th);
    double q = p.a * p.a * s * s + p.b * p.b * c * c;
    LocalLimits2 l = local_limits(e, th);
    EXPECT_NEAR(l.phi_prime, p.c * p.c * s * c / std::sqrt(q), 1e-12);
    EXPECT_NEAR(l.psi_speed, p.a * p.b / (2 * q), 1e-12);
  }
}

TEST(Averages, QuadrantAndHalfTurn) {
  EllipseParams p = EllipseParams::make(2, 1);
  EXPECT_NEAR(average_rotational_speed(p, EllipseFrame::Origin, 0, pi / 2), 1, 1e-8);
  EXPECT_NEAR(average_rotational_speed(p, EllipseFrame::Origin, pi, 3 * pi / 2), 1, 1e-8);
  EXPECT_NEAR(average_rotational_speed(p, EllipseFrame::Focus, 0, pi), 1, 1e-8);
  EXPECT_NEAR(average_rotational_speed(p, EllipseFrame::Origin, 0, 2 * pi), 1, 1e-8);
  EXPECT_NEAR(average_rotational_speed(p, EllipseFrame::Focus, 0, 2 * pi), 1, 1e-8);
  // The focal ray sweeps from the major axis to the co-vertex (0, b).
  double swept = pi - std::atan(p.b / p.c);
  EXPECT_NEAR(average_rotational_speed(p, EllipseFrame::Focus, 0, pi / 2), swept / (pi / 2), 1e-8);
  EXPECT_EQ(kind_of([&] { average_rotational_speed(p, EllipseFrame::Origin, -1, 1); }), ErrorKind::BadParameters);
}

TEST(Averages, DistanceAccelerationIntegratesToZero) {
  EllipseParams p = EllipseParams::make(3, 1.7);
  double total = adaptive_simpson([&](double th) { return origin_frame_profile(p, th).d2D; }, 0, 2 * pi, 1e-12);
  EXPECT_NEAR(total, 0, 1e-9);
  double focus = adaptive_simpson([&](double th) { return focus_frame_profile(p, th).d2; }, 0, 2 * pi, 1e-12);
  EXPECT_NEAR(focus, 0, 1e-9);
}

TEST(Zeros, OriginFrameMatchesClosedForm) {
  for (auto [a, b] : {std::pair{2.0, 1.0}, std::pair{5.0, 0.5}, std::pair{1.001, 1.0}}) {
    EllipseParams p = EllipseParams::make(a, b);
    auto got = accel_zero_locations(p);
    auto want = accel_zero_closed_form(p);
    ASSERT_EQ(got.size(), 4u);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], 1e-10) << a << " " << b;
  }
  auto near = accel_zero_locations(EllipseParams::make(1.001, 1));
  EXPECT_NEAR(near[0], pi / 4, 1e-3);
  EXPECT_NEAR(near[3], 7 * pi / 4, 1e-3);
}

TEST(Zeros, FocusFrame) {
  auto roots = focus_accel_zero_locations(EllipseParams::make(2, 1));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], pi / 2, 1e-10);
  EXPECT_NEAR(roots[1], 3 * pi / 2, 1e-10);
}

TEST(Reconstruction, OriginAndFocusPresets) {
  EllipseParams p = EllipseParams::make(2, 1);
  auto exact = [&](double th) { return p.point(th); };
  for (bool second : {false, true}) {
    EXPECT_LT(max_error(reconstruct_plane(ellipse_origin_problem(p, 2 * pi / 1e4, second)), exact), 1e-6);
    EXPECT_LT(max_error(reconstruct_plane(ellipse_focus_problem(p, 2 * pi / 1e4, second)), exact), 1e-6);
  }
}
