#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wirelay/brent.hpp"

namespace wirelay {

// ---------------------------------------------------------------------------
// Basic 3D types
// ---------------------------------------------------------------------------

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
  Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_squared(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm_squared(v)); }

inline Vec3 lerp(const Vec3& a, const Vec3& b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

struct Segment {
  Vec3 start, end;

  Vec3 delta() const { return end - start; }
  double length() const { return norm(delta()); }
  Vec3 point_at(double u) const { return lerp(start, end, u); }
};

// Closest approach between two segments. s/t parameterize the first and
// second segment respectively, both in [0, 1].
struct ProximityResult {
  double s = 0.0;
  double t = 0.0;
  double distance = 0.0;
};

// Two segments at the endpoints of a linearly interpolated motion
// (k = 0 is the begin configuration, k = 1 the end configuration).
struct MotionPair {
  Segment a_begin, a_end;
  Segment b_begin, b_end;
};

struct CrossingReport {
  bool crossed = false;
  double k_min = 0.0;  // motion parameter of the smallest distance seen
  double d_min = 0.0;  // smallest distance seen
};

// ---------------------------------------------------------------------------
// Minimum distance between two closed segments
// ---------------------------------------------------------------------------

namespace detail {

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// squared-length floor below which a segment is treated as a point
constexpr double kPointSegmentSq = 1e-24;

}  // namespace detail

// Exact global minimum distance between closed segments a and b.
// The interior critical point s = (be - cd)/(ac - b^2), t = (ae - bd)/(ac - b^2)
// is clamped one parameter at a time, re-minimizing the other after each
// clamp. Near-parallel pairs fall back to the four endpoint projections,
// whose minimum is the constrained optimum when the normal system is rank 1.
inline ProximityResult segment_min_distance(const Segment& seg_a, const Segment& seg_b) {
  const Vec3 u = seg_a.delta();
  const Vec3 v = seg_b.delta();
  const Vec3 w = seg_a.start - seg_b.start;

  const double a = dot(u, u);
  const double c = dot(v, v);
  const double d = dot(u, w);
  const double e = dot(v, w);

  auto finish = [&](double s, double t) {
    ProximityResult r;
    r.s = s;
    r.t = t;
    r.distance = norm(w + u * s - v * t);
    return r;
  };

  const bool a_point = a <= detail::kPointSegmentSq;
  const bool c_point = c <= detail::kPointSegmentSq;
  if (a_point && c_point) return finish(0.0, 0.0);
  if (a_point) return finish(0.0, detail::clamp01(e / c));
  if (c_point) return finish(detail::clamp01(-d / a), 0.0);

  const double b = dot(u, v);
  const double denom = a * c - b * b;

  if (denom <= 1e-12 * a * c) {
    // near-parallel: minimum over the four boundary projections
    ProximityResult best = finish(0.0, detail::clamp01(e / c));
    auto consider = [&](double s, double t) {
      ProximityResult r = finish(s, t);
      if (r.distance < best.distance) best = r;
    };
    consider(1.0, detail::clamp01((e + b) / c));
    consider(detail::clamp01(-d / a), 0.0);
    consider(detail::clamp01((b - d) / a), 1.0);
    return best;
  }

  double s = detail::clamp01((b * e - c * d) / denom);
  double t = (b * s + e) / c;
  if (t < 0.0) {
    t = 0.0;
    s = detail::clamp01(-d / a);
  } else if (t > 1.0) {
    t = 1.0;
    s = detail::clamp01((b - d) / a);
  }
  return finish(s, t);
}

// ---------------------------------------------------------------------------
// Distance along a linearly interpolated motion
// ---------------------------------------------------------------------------

inline ProximityResult distance_at(const MotionPair& pair, double k) {
  if (!(k >= 0.0 && k <= 1.0))
    throw std::invalid_argument("distance_at: motion parameter k outside [0,1]");
  const Segment a{lerp(pair.a_begin.start, pair.a_end.start, k),
                  lerp(pair.a_begin.end, pair.a_end.end, k)};
  const Segment b{lerp(pair.b_begin.start, pair.b_end.start, k),
                  lerp(pair.b_begin.end, pair.b_end.end, k)};
  return segment_min_distance(a, b);
}

// Detects whether the two moving segments approach within epsilon anywhere
// along the motion. A 9-point pre-scan (endpoints included) picks the
// bracket; bounded Brent refinement runs inside it with the paper-sized
// iteration budget. The search stops at the first sub-epsilon evaluation.
inline CrossingReport crossing_during_motion(const MotionPair& pair, double epsilon,
                                             int max_refine_iterations = 20) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("crossing_during_motion: epsilon must be > 0");

  constexpr int kPrescan = 9;
  CrossingReport report;
  report.d_min = std::numeric_limits<double>::infinity();
  int best_index = 0;

  for (int i = 0; i < kPrescan; ++i) {
    const double k = static_cast<double>(i) / (kPrescan - 1);
    const double d = distance_at(pair, k).distance;
    if (d < report.d_min) {
      report.d_min = d;
      report.k_min = k;
      best_index = i;
    }
    if (d < epsilon) {
      report.crossed = true;
      return report;
    }
  }

  const double step = 1.0 / (kPrescan - 1);
  const double lo = step * std::max(best_index - 1, 0);
  const double hi = step * std::min(best_index + 1, kPrescan - 1);

  const BrentResult refined = brent_minimize(
      [&](double k) { return distance_at(pair, k).distance; }, lo, hi,
      max_refine_iterations, 1e-6, epsilon);
  if (refined.f < report.d_min) {
    report.d_min = refined.f;
    report.k_min = refined.x;
  }
  report.crossed = report.d_min < epsilon;
  return report;
}

}  // namespace wirelay
