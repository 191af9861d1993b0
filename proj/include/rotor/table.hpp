#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <type_traits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "curve.hpp"
#include "ellipse.hpp"
#include "plane.hpp"
#include "reconstruction.hpp"
#include "space.hpp"
#include "surface.hpp"

namespace rotor {

using Cell = std::optional<double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// 17 significant digits, '.' separator, independent of locale.
inline std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (row[i]) out += format_real(*row[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::string to_json(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) obj[t.header[i]] = *row[i];
      else obj[t.header[i]] = nullptr;
    }
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

struct FrameSpec {
  enum Kind { Origin, Point, Focus, Local } kind = Origin;
  Vec3 point{};
};

// One row per sample of t on the curve's domain.
inline Table kinematics_table(const AnyCurve& curve, const FrameSpec& frame, int samples,
                              std::optional<EllipseParams> ellipse = std::nullopt) {
  if (samples < 2) fail(ErrorKind::BadParameters, "samples must be at least 2");
  Table tab;
  bool local = frame.kind == FrameSpec::Local;
  if (const auto* pc = std::get_if<PlaneCurve>(&curve)) {
    Vec2 center{};
    if (frame.kind == FrameSpec::Point) center = {frame.point.x, frame.point.y};
    if (frame.kind == FrameSpec::Focus) {
      if (!ellipse) fail(ErrorKind::BadParameters, "focus frame needs the ellipse");
      center = ellipse->focus();
    }
    tab.header = {"t", "D", "dD", "d2D", "rot_speed"};
    if (local) tab.header.insert(tab.header.end(), {"phi", "psi_speed"});
    for (double t : uniform_grid(pc->t0(), pc->t1(), samples)) {
      PlaneKinematics k = distance_kinematics(*pc, center, t);
      std::vector<Cell> row = {t, k.D, k.dD, k.d2D, k.rot_speed};
      if (local) {
        LocalLimits2 l = local_limits(*pc, t);
        row.insert(row.end(), {l.phi, l.psi_speed});
      }
      tab.rows.push_back(row);
    }
    return tab;
  }
  const auto& sc = std::get<SpaceCurve>(curve);
  if (frame.kind == FrameSpec::Focus) fail(ErrorKind::BadParameters, "focus frame needs the ellipse");
  Vec3 center = frame.kind == FrameSpec::Point ? frame.point : Vec3{};
  tab.header = {"t", "D", "dD", "d2D", "rot_speed", "speed_A", "speed_B", "speed_C"};
  if (local) tab.header.insert(tab.header.end(), {"phi", "psi_speed"});
  for (double t : uniform_grid(sc.t0(), sc.t1(), samples)) {
    SpaceKinematics k = space_distance_kinematics(sc, t, center);
    std::vector<Cell> row = {t, k.D, k.dD, k.d2D, k.rot_speed, k.speed_A, k.speed_B, k.speed_C};
    if (local) {
      DerivativePlaneLimits l = derivative_plane_limits(sc, t);
      row.insert(row.end(), {l.phi, norm(l.psi12)});
    }
    tab.rows.push_back(row);
  }
  return tab;
}

inline Table surface_table(const Surface& s, const ChartCurve& c, int samples) {
  if (samples < 2) fail(ErrorKind::BadParameters, "samples must be at least 2");
  Table tab;
  tab.header = {"t", "D", "dD", "d2D", "rot_speed", "speed_A", "speed_B", "speed_C", "phi", "psi_A", "psi_B", "psi_C"};
  for (double t : uniform_grid(c.t0(), c.t1(), samples)) {
    SpaceKinematics k = surface_distance_kinematics(s, c, t);
    SurfaceRotLimits l = surface_plane_rot_limits(s, c, t);
    tab.rows.push_back({t, k.D, k.dD, k.d2D, k.rot_speed, k.speed_A, k.speed_B, k.speed_C,
                        surface_local_first_derivative(s, c, t), l.psiA, l.psiB, l.psiC});
  }
  return tab;
}

inline Table ellipse_table(const EllipseParams& p, int samples) {
  if (samples < 2) fail(ErrorKind::BadParameters, "samples must be at least 2");
  Table tab;
  tab.header = {"theta", "xi1", "d1", "d2", "d3", "rot_speed_origin", "rot_speed_focus"};
  for (double th : uniform_grid(0, 2 * std::numbers::pi, samples)) {
    FocusSample f = focus_frame_profile(p, th);
    tab.rows.push_back({th, f.xi1, f.d1, f.d2, f.d3, origin_frame_profile(p, th).rot_speed, f.kin.rot_speed});
  }
  return tab;
}

template <class V>
Table trajectory_table(const Trajectory<V>& tr) {
  Table tab;
  if constexpr (std::is_same_v<V, Vec2>) tab.header = {"t", "x", "y"};
  else tab.header = {"t", "x", "y", "z"};
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    const V& p = tr.points[i];
    if constexpr (std::is_same_v<V, Vec2>) tab.rows.push_back({tr.t[i], p.x, p.y});
    else tab.rows.push_back({tr.t[i], p.x, p.y, p.z});
  }
  return tab;
}

}  // namespace rotor
