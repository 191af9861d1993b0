#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace rotor {

inline constexpr double kEpsNorm = 1e-12;

struct Vec2 {
  double x = 0, y = 0;
};

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }
inline constexpr bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline constexpr Vec3 operator*(Vec3 a, double s) { return {s * a.x, s * a.y, s * a.z}; }
inline constexpr Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a.x += b.x; a.y += b.y; a.z += b.z; return a; }
inline Vec3& operator-=(Vec3& a, Vec3 b) { a.x -= b.x; a.y -= b.y; a.z -= b.z; return a; }
inline constexpr bool operator==(Vec3 a, Vec3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

inline constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline constexpr double norm2(Vec2 a) { return dot(a, a); }
inline constexpr double norm2(Vec3 a) { return dot(a, a); }

// z-component of the planar cross product
inline constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// rotate by +90 degrees: (x, y) -> (-y, x)
inline constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline bool is_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }
inline bool is_finite(Vec3 a) { return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z); }

template <class V>
V unit_vector(V v, double eps_norm = kEpsNorm) {
  double n = norm(v);
  if (!(n > eps_norm)) fail(ErrorKind::DegenerateVector, "norm " + std::to_string(n));
  return v / n;
}

inline constexpr double triple_product(Vec3 a, Vec3 b, Vec3 c) { return dot(cross(a, b), c); }

// Orthogonal projection of v onto span{a, b}.
inline Vec3 project_onto_span(Vec3 v, Vec3 a, Vec3 b, double eps_norm = kEpsNorm) {
  double na = norm(a), nb = norm(b);
  if (!(norm(cross(a, b)) > eps_norm * std::max(1.0, na * nb))) fail(ErrorKind::DegenerateSpan);
  // Gram-Schmidt: q1 = a/|a|, q2 = unit(b - (b.q1) q1)
  Vec3 q1 = a / na;
  Vec3 w = b - dot(b, q1) * q1;
  Vec3 q2 = w / norm(w);
  return dot(v, q1) * q1 + dot(v, q2) * q2;
}

}  // namespace rotor
