#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "wirelay/geometry.hpp"
#include "wirelay/mechanism.hpp"
#include "wirelay/torque_space.hpp"

namespace wirelay {

// ---------------------------------------------------------------------------
// Trajectory
// ---------------------------------------------------------------------------

struct Trajectory {
  std::vector<JointAngles> waypoints;
  bool close_loop = false;

  void validate(const MechanismConfig& cfg) const {
    if (waypoints.size() < 2)
      throw std::invalid_argument("trajectory: at least 2 waypoints required");
    for (const JointAngles& q : waypoints) {
      if (q.size() != cfg.dof_count())
        throw std::invalid_argument("trajectory: waypoint dof count mismatch");
      for (double angle : q)
        if (!std::isfinite(angle))
          throw std::invalid_argument("trajectory: non-finite joint angle");
    }
  }

  std::size_t segment_count() const {
    return waypoints.size() - 1 + (close_loop ? 1 : 0);
  }
};

// ---------------------------------------------------------------------------
// Crossing-check pair enumeration
// ---------------------------------------------------------------------------

struct CheckPair {
  enum class Kind { wire_wire, wire_link };
  // base link = 0, moving link = 1
  enum : std::size_t { base_link = 0, moving_link = 1 };

  Kind kind = Kind::wire_wire;
  std::size_t wire_a = 0, seg_a = 0;
  std::size_t wire_b = 0, seg_b = 0;  // wire_link: seg_b holds the link id

  auto key() const {
    return std::make_tuple(static_cast<int>(kind), wire_a, seg_a, wire_b, seg_b);
  }
  bool operator==(const CheckPair& o) const { return key() == o.key(); }
  bool operator<(const CheckPair& o) const { return key() < o.key(); }
};

namespace detail {

inline bool segments_share_endpoint(const Segment& a, const Segment& b) {
  auto same = [](const Vec3& p, const Vec3& q) { return norm(p - q) < 1e-12; };
  return same(a.start, b.start) || same(a.start, b.end) || same(a.end, b.start) ||
         same(a.end, b.end);
}

}  // namespace detail

// All segment pairs that must stay apart: segments of distinct wires, the
// non-adjacent segments within a foldback wire, and every wire segment
// against the two link-axis segments. Pairs whose segments share an anchor
// point in the given configuration are skipped (their distance is
// identically ~0 there); link segments carry no anchors, so wire-link pairs
// are always listed and the clearance threshold governs them instead.
inline std::vector<CheckPair> collect_check_pairs(const MechanismConfig& cfg,
                                                  const std::vector<WirePath>& paths) {
  std::vector<CheckPair> pairs;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t sa = 0; sa < paths[i].segment_count(); ++sa) {
      // same wire, later segments
      for (std::size_t sb = sa + 1; sb < paths[i].segment_count(); ++sb)
        if (!detail::segments_share_endpoint(paths[i].segment(sa), paths[i].segment(sb)))
          pairs.push_back({CheckPair::Kind::wire_wire, i, sa, i, sb});
      // later wires
      for (std::size_t j = i + 1; j < paths.size(); ++j)
        for (std::size_t sb = 0; sb < paths[j].segment_count(); ++sb)
          if (!detail::segments_share_endpoint(paths[i].segment(sa), paths[j].segment(sb)))
            pairs.push_back({CheckPair::Kind::wire_wire, i, sa, j, sb});
      // link axes
      pairs.push_back({CheckPair::Kind::wire_link, i, sa, 0, CheckPair::base_link});
      pairs.push_back({CheckPair::Kind::wire_link, i, sa, 0, CheckPair::moving_link});
    }
  }
  return pairs;
}

// A check pair instantiated over the motion from q_a to q_b plus the
// distance threshold that applies to it (epsilon for wire-wire pairs,
// link_clearance for wire-link pairs).
struct MotionCheck {
  CheckPair pair;
  MotionPair motion;
  double threshold = 0.0;
};

inline std::vector<MotionCheck> collect_motion_checks(const MechanismConfig& cfg,
                                                      const DesignParams& design,
                                                      const JointAngles& q_a,
                                                      const JointAngles& q_b, double epsilon) {
  const std::vector<WirePath> paths_a = anchor_world_positions(cfg, design, q_a);
  const std::vector<WirePath> paths_b = anchor_world_positions(cfg, design, q_b);

  // Anchor-sharing exclusions are unioned over both endpoint configurations
  // so the pair list is symmetric under trajectory reversal.
  std::vector<CheckPair> pairs_a = collect_check_pairs(cfg, paths_a);
  std::vector<CheckPair> pairs_b = collect_check_pairs(cfg, paths_b);
  std::sort(pairs_a.begin(), pairs_a.end());
  std::sort(pairs_b.begin(), pairs_b.end());
  std::vector<CheckPair> pairs;
  std::set_intersection(pairs_a.begin(), pairs_a.end(), pairs_b.begin(), pairs_b.end(),
                        std::back_inserter(pairs));

  const Segment base_link = base_link_segment(cfg);
  const Segment moving_a = moving_link_segment(cfg, q_a);
  const Segment moving_b = moving_link_segment(cfg, q_b);

  std::vector<MotionCheck> checks;
  checks.reserve(pairs.size());
  for (const CheckPair& pair : pairs) {
    MotionCheck check;
    check.pair = pair;
    check.motion.a_begin = paths_a[pair.wire_a].segment(pair.seg_a);
    check.motion.a_end = paths_b[pair.wire_a].segment(pair.seg_a);
    if (pair.kind == CheckPair::Kind::wire_wire) {
      check.motion.b_begin = paths_a[pair.wire_b].segment(pair.seg_b);
      check.motion.b_end = paths_b[pair.wire_b].segment(pair.seg_b);
      check.threshold = epsilon;
    } else {
      const bool base = pair.seg_b == CheckPair::base_link;
      check.motion.b_begin = base ? base_link : moving_a;
      check.motion.b_end = base ? base_link : moving_b;
      check.threshold = cfg.link_clearance;
    }
    checks.push_back(check);
  }
  return checks;
}

// Number of check pairs that come within their threshold anywhere along the
// interpolated motion from q_a to q_b; each pair counts at most once.
inline int count_crossings_segment(const MechanismConfig& cfg, const DesignParams& design,
                                   const JointAngles& q_a, const JointAngles& q_b,
                                   double epsilon) {
  int crossings = 0;
  for (const MotionCheck& check : collect_motion_checks(cfg, design, q_a, q_b, epsilon))
    if (check.threshold > 0.0 &&
        crossing_during_motion(check.motion, check.threshold).crossed)
      ++crossings;
  return crossings;
}

// ---------------------------------------------------------------------------
// Full-trajectory evaluation
// ---------------------------------------------------------------------------

inline std::optional<TorquePolytope> waypoint_torque_polytope(const MechanismConfig& cfg,
                                                              const DesignParams& design,
                                                              const JointAngles& q,
                                                              const TensionBounds& bounds) {
  const MuscleJacobian jacobian = muscle_jacobian(cfg, design, q);
  const std::vector<std::vector<double>> vertices = tension_vertices(cfg.wire_count, bounds);
  std::vector<std::vector<double>> projected;
  projected.reserve(vertices.size());
  for (const std::vector<double>& f : vertices)
    projected.push_back(project_to_torque(jacobian, f));
  return build_hull(projected, cfg.dof_count());
}

struct Evaluation {
  int e_cross = 0;
  double log_e_torque = 0.0;  // sum of ln(per-waypoint radius)
  std::vector<int> per_segment_crossings;
  std::vector<double> per_waypoint_radius;
};

inline Evaluation evaluate(const MechanismConfig& cfg, const DesignParams& design,
                           const Trajectory& trajectory, const TensionBounds& bounds,
                           double epsilon, double r_min,
                           const std::vector<double>& sphere_center = {}) {
  cfg.validate();
  validate_design(design, cfg);
  trajectory.validate(cfg);
  bounds.validate();

  Evaluation eval;
  const std::size_t waypoint_count = trajectory.waypoints.size();
  for (std::size_t i = 0; i + 1 < waypoint_count; ++i)
    eval.per_segment_crossings.push_back(count_crossings_segment(
        cfg, design, trajectory.waypoints[i], trajectory.waypoints[i + 1], epsilon));
  if (trajectory.close_loop)
    eval.per_segment_crossings.push_back(count_crossings_segment(
        cfg, design, trajectory.waypoints[waypoint_count - 1], trajectory.waypoints[0],
        epsilon));
  for (int c : eval.per_segment_crossings) eval.e_cross += c;

  for (const JointAngles& q : trajectory.waypoints) {
    const auto hull = waypoint_torque_polytope(cfg, design, q, bounds);
    const TorqueScore score = inscribed_radius(hull, r_min, sphere_center);
    eval.per_waypoint_radius.push_back(score.radius);
    eval.log_e_torque += std::log(score.radius);
  }
  return eval;
}

}  // namespace wirelay
