#include <gtest/gtest.h>

#include <numbers>

#include <rotor/curve.hpp>
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

Vec2 dir2(double a, double b) { return Vec2{a, b} / std::hypot(a, b); }

double ellipse_error(double step, bool second = false) {
  PlaneCurve e = make_ellipse(2, 1);
  auto pr = plane_problem_from_curve(e, {}, 0, 2 * pi, step, second);
  return max_error(reconstruct_plane(pr), [&](double t) { return e(t); });
}

}  // namespace

TEST(UnitDirection, ConstantRateQuarterTurn) {
  DirectionSamples s = integrate_unit_direction(rotation_field([](double) { return 1.0; }), {1, 0}, 0, pi / 2, 1e-3);
  EXPECT_LT(norm(s.e.back() - Vec2{0, 1}), 1e-12);
  EXPECT_EQ(s.t.front(), 0);
  EXPECT_DOUBLE_EQ(s.t.back(), pi / 2);
  EXPECT_EQ(s.t.size(), s.e.size());
}

TEST(UnitDirection, LinearRateGivesQuadraticAngle) {
  DirectionSamples s = integrate_unit_direction(rotation_field([](double t) { return t; }), {0, 1}, 0, 2, 1e-3);
  for (std::size_t i = 0; i < s.t.size(); i += 97) {
    double a = pi / 2 + s.t[i] * s.t[i] / 2;
    EXPECT_LT(norm(s.e[i] - Vec2{std::cos(a), std::sin(a)}), 1e-12);
  }
  EXPECT_LT(s.max_drift, 1e-12);
}

TEST(UnitDirection, RejectsBadInput) {
  auto spin = rotation_field([](double) { return 1.0; });
  EXPECT_EQ(kind_of([&] { integrate_unit_direction(spin, {2, 0}, 0, 1, 1e-2); }), ErrorKind::BadParameters);
  EXPECT_EQ(kind_of([&] { integrate_unit_direction(spin, {1, 0}, 0, 1, 0); }), ErrorKind::BadParameters);
  DirectionField2 outward = [](double, Vec2 e) { return e; };
  EXPECT_EQ(kind_of([&] { integrate_unit_direction(outward, {1, 0}, 0, 1, 1e-2); }), ErrorKind::NonTangentField);
}

TEST(Plane, EllipseRoundTrip) {
  EXPECT_LT(ellipse_error(2 * pi / 1e4), 1e-6);
  EXPECT_LT(ellipse_error(2 * pi / 1e4, true), 1e-6);
}

TEST(Plane, ConvergesAtFourthOrder) {
  double e1 = ellipse_error(2 * pi / 25), e2 = ellipse_error(2 * pi / 50), e3 = ellipse_error(2 * pi / 100);
  EXPECT_GE(std::log2(e1 / e2), 3.5);
  EXPECT_GE(std::log2(e2 / e3), 3.5);
}

TEST(Plane, CircleAboutCenterCloses) {
  PlaneCurve c = make_circle(1.5, 0.5, -0.25);
  auto pr = plane_problem_from_curve(c, {0.5, -0.25}, 0, 2 * pi, 2 * pi / 1e4, false);
  Trajectory<Vec2> tr = reconstruct_plane(pr);
  EXPECT_LT(norm(tr.points.back() - tr.points.front()), 1e-11);
  for (Vec2 p : tr.points) EXPECT_NEAR(norm(p - Vec2{0.5, -0.25}), 1.5, 1e-12);
  EXPECT_LT(tr.max_drift, 1e-12);
}

TEST(Plane, StationaryDataStaysPut) {
  PlaneReconstructionProblem pr;
  pr.distance.dD = [](double) { return 0.0; };
  pr.rhs_e = rotation_field([](double) { return 0.0; });
  pr.D0 = 2;
  pr.e0 = dir2(3, 4);
  pr.center = {1, 1};
  pr.step = 0.01;
  for (Vec2 p : reconstruct_plane(pr).points) EXPECT_EQ(p, pr.center + 2.0 * pr.e0);
}

TEST(Plane, InitialDistanceShiftMovesAlongDirection) {
  PlaneCurve e = make_ellipse(3, 1);
  auto pr = plane_problem_from_curve(e, {0.2, 0.1}, 0, 2 * pi, 2 * pi / 2000, false);
  auto shifted = pr;
  const double delta = 1e-3;
  shifted.D0 += delta;
  Trajectory<Vec2> a = reconstruct_plane(pr), b = reconstruct_plane(shifted);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    Vec2 dirn = (a.points[i] - pr.center) / norm(a.points[i] - pr.center);
    EXPECT_LT(norm(b.points[i] - a.points[i] - delta * dirn), 1e-12);
  }
}

TEST(Plane, DistanceThroughZeroIsReported) {
  PlaneReconstructionProblem pr;
  pr.distance.dD = [](double) { return -7.0; };
  pr.rhs_e = rotation_field([](double) { return 1.0; });
  pr.step = 0.05;
  try {
    reconstruct_plane(pr);
    FAIL() << "expected StepTooLarge";
  } catch (const PointError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StepTooLarge);
    EXPECT_NEAR(e.t(), 0.15, 1e-12);
    EXPECT_NE(e.detail().find("at step 3 of 20"), std::string::npos) << e.detail();
  }
}

TEST(Plane, RejectsBadProblems) {
  PlaneReconstructionProblem pr;
  pr.rhs_e = rotation_field([](double) { return 1.0; });
  EXPECT_EQ(kind_of([&] { reconstruct_plane(pr); }), ErrorKind::BadParameters);
  pr.distance.dD = [](double) { return 0.0; };
  pr.e0 = {1, 1};
  EXPECT_EQ(kind_of([&] { reconstruct_plane(pr); }), ErrorKind::BadParameters);
  pr.e0 = {1, 0};
  pr.D0 = 0;
  EXPECT_EQ(kind_of([&] { reconstruct_plane(pr); }), ErrorKind::BadParameters);
}

TEST(Space, TriangulationRecoversDirection) {
  oracle::Rng rng(71);
  for (int i = 0; i < 1000; ++i) {
    Vec3 w = rng.vec3(0.1, 3);
    if (rng(0, 1) < 0.5) w.x = -w.x;
    if (rng(0, 1) < 0.5) w.z = -w.z;
    Vec3 want = w / oracle::len(w);
    Triangulation tr = triangulate(dir2(w.x, w.y), dir2(w.x, w.z), dir2(w.y, w.z), &want);
    EXPECT_LT(norm(tr.u - want), 1e-14);
    EXPECT_LT(tr.residual, 1e-14);
  }
}

TEST(Space, ShiftedHelix) {
  SpaceCurve h = make_helix(1, 1, 2, 2, 1);
  auto pr = space_problem_from_curve(h, 0, pi, pi / 1e4, false);
  Trajectory<Vec3> tr = reconstruct_space(pr);
  EXPECT_LT(max_error(tr, [&](double t) { return h(t); }), 1e-5);
  EXPECT_LT(tr.max_residual, 1e-6);
  EXPECT_LT(tr.max_drift, 1e-12);
  auto pr2 = space_problem_from_curve(h, 0, pi, pi / 1e4, true);
  EXPECT_LT(max_error(reconstruct_space(pr2), [&](double t) { return h(t); }), 1e-5);
}

TEST(Space, CoordinatePlaneCrossingCollapses) {
  SpaceCurve h = make_helix(1, 1, 0, 0, 1);
  auto pr = space_problem_from_curve(h, 0.5, 4, 1e-3, false);
  try {
    reconstruct_space(pr);
    FAIL() << "expected ProjectionCollapse";
  } catch (const PointError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ProjectionCollapse);
    // x = cos t reaches the collapse tolerance just before pi/2.
    EXPECT_LE(e.t(), pi / 2);
    EXPECT_GT(e.t(), pi / 2 - 2e-3);
  }
  EXPECT_EQ(kind_of([&] { reconstruct_space(space_problem_from_curve(h, 0, 1, 1e-3, false)); }),
            ErrorKind::ProjectionCollapse);
}

TEST(Space, InconsistentStartRejected) {
  auto pr = space_problem_from_curve(make_helix(1, 1, 2, 2, 1), 0, 1, 1e-2, false);
  pr.eB0 = dir2(1, -1);
  EXPECT_EQ(kind_of([&] { reconstruct_space(pr); }), ErrorKind::InconsistentDirections);
}

TEST(Plane, FirstAndSecondOrderDataAgree) {
  PlaneCurve e = make_ellipse(2.5, 1);
  Vec2 center{0.3, -0.2};
  auto exact = [&](double t) { return e(t); };
  Trajectory<Vec2> a = reconstruct_plane(plane_problem_from_curve(e, center, 0, 2 * pi, 2 * pi / 2000, false));
  Trajectory<Vec2> b = reconstruct_plane(plane_problem_from_curve(e, center, 0, 2 * pi, 2 * pi / 2000, true));
  double ea = max_error(a, exact), eb = max_error(b, exact), gap = 0;
  for (std::size_t i = 0; i < a.points.size(); ++i) gap = std::max(gap, norm(a.points[i] - b.points[i]));
  EXPECT_LE(gap, 10 * std::max(ea, eb));
}
