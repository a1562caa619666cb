#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "wirelay/geometry.hpp"

namespace wirelay {

// ---------------------------------------------------------------------------
// Configuration and design parameters
// ---------------------------------------------------------------------------

enum class JointAxis { roll, pitch, yaw };

inline const char* to_string(JointAxis a) {
  switch (a) {
    case JointAxis::roll: return "roll";
    case JointAxis::pitch: return "pitch";
    case JointAxis::yaw: return "yaw";
  }
  return "?";
}

// Two-link structure: a base link from the base disc (z = 0) up to the joint
// center at (0, 0, L), and a moving link from the joint center to the moving
// disc, whose center sits at (0, 0, 2L) in the zero pose. Wire anchors live
// on the two discs of radius R.
struct MechanismConfig {
  double disc_radius = 0.2;   // R [m]
  double link_length = 0.2;   // L [m]
  std::vector<JointAxis> joint_axes;  // D entries, D in {2, 3}
  std::size_t wire_count = 3;         // M
  std::size_t points_per_wire = 2;    // N in {2, 3}
  double link_clearance = 0.0;        // wire-vs-link crossing threshold [m]

  std::size_t dof_count() const { return joint_axes.size(); }
  std::size_t genome_length() const { return 2 * points_per_wire * wire_count; }

  void validate() const {
    if (!(disc_radius > 0.0)) throw std::invalid_argument("mechanism: disc_radius must be > 0");
    if (!(link_length > 0.0)) throw std::invalid_argument("mechanism: link_length must be > 0");
    if (wire_count < 1) throw std::invalid_argument("mechanism: wire_count must be >= 1");
    if (points_per_wire != 2 && points_per_wire != 3)
      throw std::invalid_argument("mechanism: points_per_wire must be 2 or 3");
    if (joint_axes.size() != 2 && joint_axes.size() != 3)
      throw std::invalid_argument("mechanism: joint_axes must list 2 or 3 axes");
    if (!(link_clearance >= 0.0))
      throw std::invalid_argument("mechanism: link_clearance must be >= 0");
  }
};

struct DiscPoint {
  double x = 0.0, y = 0.0;
};

// Decoded anchor coordinates, one (p_x, p_y) per wire per point, all on the
// closed disc of radius R.
struct DesignParams {
  std::size_t wire_count = 0;
  std::size_t points_per_wire = 0;
  std::vector<DiscPoint> points;  // wire-major: points[i * points_per_wire + j]

  const DiscPoint& at(std::size_t wire, std::size_t point) const {
    return points[wire * points_per_wire + point];
  }
  DiscPoint& at(std::size_t wire, std::size_t point) {
    return points[wire * points_per_wire + point];
  }
};

using Genome = std::vector<double>;       // 2*N*M values in [-1, 1]
using JointAngles = std::vector<double>;  // D entries [rad], ordered as joint_axes

// Maps a box genome onto the disc: p_x = u*R and p_y = v*sqrt(R^2 - p_x^2),
// so the disc constraint holds for every genome in [-1, 1]^d.
inline DesignParams decode_genome(const Genome& genome, const MechanismConfig& cfg) {
  if (genome.size() != cfg.genome_length())
    throw std::invalid_argument("decode_genome: genome length " +
                                std::to_string(genome.size()) + " does not match 2*N*M = " +
                                std::to_string(cfg.genome_length()));
  const double radius = cfg.disc_radius;
  DesignParams design;
  design.wire_count = cfg.wire_count;
  design.points_per_wire = cfg.points_per_wire;
  design.points.resize(cfg.wire_count * cfg.points_per_wire);
  for (std::size_t p = 0; p < design.points.size(); ++p) {
    const double u = genome[2 * p];
    const double v = genome[2 * p + 1];
    const double px = u * radius;
    const double py = v * std::sqrt(std::max(radius * radius - px * px, 0.0));
    design.points[p] = {px, py};
  }
  return design;
}

inline void validate_design(const DesignParams& design, const MechanismConfig& cfg) {
  if (design.wire_count != cfg.wire_count || design.points_per_wire != cfg.points_per_wire ||
      design.points.size() != cfg.wire_count * cfg.points_per_wire)
    throw std::invalid_argument("design dimensions do not match the mechanism config");
  const double r2 = cfg.disc_radius * cfg.disc_radius;
  for (const DiscPoint& p : design.points)
    if (p.x * p.x + p.y * p.y > r2 * (1.0 + 1e-12))
      throw std::invalid_argument("design point outside the disc");
}

// N=2 -> N=3 transform that appends a copy of each wire's start point as its
// end point, turning every wire into an exact foldback.
inline Genome fold_genome(const Genome& genome, const MechanismConfig& cfg) {
  if (cfg.points_per_wire != 2)
    throw std::invalid_argument("fold_genome: expects an N=2 genome");
  if (genome.size() != cfg.genome_length())
    throw std::invalid_argument("fold_genome: genome length mismatch");
  Genome folded;
  folded.reserve(3 * cfg.wire_count * 2);
  for (std::size_t i = 0; i < cfg.wire_count; ++i) {
    const std::size_t base = 4 * i;
    folded.push_back(genome[base + 0]);
    folded.push_back(genome[base + 1]);
    folded.push_back(genome[base + 2]);
    folded.push_back(genome[base + 3]);
    folded.push_back(genome[base + 0]);
    folded.push_back(genome[base + 1]);
  }
  return folded;
}

inline MechanismConfig folded_config(MechanismConfig cfg) {
  cfg.points_per_wire = 3;
  return cfg;
}

// ---------------------------------------------------------------------------
// Forward kinematics
// ---------------------------------------------------------------------------

struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major

  double operator()(int r, int c) const { return m[3 * r + c]; }

  Mat3 operator*(const Mat3& o) const {
    Mat3 out;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        out.m[3 * r + c] = (*this)(r, 0) * o(0, c) + (*this)(r, 1) * o(1, c) +
                           (*this)(r, 2) * o(2, c);
    return out;
  }

  Vec3 operator*(const Vec3& v) const {
    return {(*this)(0, 0) * v.x + (*this)(0, 1) * v.y + (*this)(0, 2) * v.z,
            (*this)(1, 0) * v.x + (*this)(1, 1) * v.y + (*this)(1, 2) * v.z,
            (*this)(2, 0) * v.x + (*this)(2, 1) * v.y + (*this)(2, 2) * v.z};
  }
};

inline Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{1, 0, 0, 0, c, -s, 0, s, c}};
}
inline Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{c, 0, s, 0, 1, 0, -s, 0, c}};
}
inline Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {{c, -s, 0, s, c, 0, 0, 0, 1}};
}

inline Vec3 joint_center(const MechanismConfig& cfg) { return {0.0, 0.0, cfg.link_length}; }

namespace detail {

struct RpyAngles {
  double roll = 0.0, pitch = 0.0, yaw = 0.0;
};

inline RpyAngles rpy_of(const MechanismConfig& cfg, const JointAngles& q) {
  if (q.size() != cfg.dof_count())
    throw std::invalid_argument("joint angle vector length does not match dof count");
  RpyAngles out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    switch (cfg.joint_axes[i]) {
      case JointAxis::roll: out.roll = q[i]; break;
      case JointAxis::pitch: out.pitch = q[i]; break;
      case JointAxis::yaw: out.yaw = q[i]; break;
    }
  }
  return out;
}

}  // namespace detail

// Moving-link orientation, composed as R_z(yaw) * R_y(pitch) * R_x(roll)
// about the joint center. Absent axes (D = 2) contribute identity.
inline Mat3 joint_rotation(const MechanismConfig& cfg, const JointAngles& q) {
  const detail::RpyAngles rpy = detail::rpy_of(cfg, q);
  return rot_z(rpy.yaw) * rot_y(rpy.pitch) * rot_x(rpy.roll);
}

// World-space direction of each joint axis at configuration q. With the
// composition above the yaw axis stays e_z, the pitch axis is R_z * e_y and
// the roll axis R_z * R_y * e_x.
inline std::vector<Vec3> joint_axes_world(const MechanismConfig& cfg, const JointAngles& q) {
  const detail::RpyAngles rpy = detail::rpy_of(cfg, q);
  std::vector<Vec3> axes(cfg.dof_count());
  for (std::size_t i = 0; i < cfg.dof_count(); ++i) {
    switch (cfg.joint_axes[i]) {
      case JointAxis::yaw:
        axes[i] = {0.0, 0.0, 1.0};
        break;
      case JointAxis::pitch:
        axes[i] = rot_z(rpy.yaw) * Vec3{0.0, 1.0, 0.0};
        break;
      case JointAxis::roll:
        axes[i] = rot_z(rpy.yaw) * rot_y(rpy.pitch) * Vec3{1.0, 0.0, 0.0};
        break;
    }
  }
  return axes;
}

struct WirePath {
  std::size_t wire_index = 0;
  std::vector<Vec3> anchors;  // world frame, N entries

  std::size_t segment_count() const { return anchors.size() - 1; }
  Segment segment(std::size_t j) const { return {anchors[j], anchors[j + 1]}; }
};

// Index of the anchor that rides on the moving disc. Anchor order is
// (base, moving) for N=2 and (base, moving, base) for N=3, so it is
// always the middle-or-second entry.
inline constexpr std::size_t kMovingAnchor = 1;

inline Vec3 base_anchor_world(const DiscPoint& p) { return {p.x, p.y, 0.0}; }

inline Vec3 moving_anchor_world(const MechanismConfig& cfg, const Mat3& rotation,
                                const DiscPoint& p) {
  return joint_center(cfg) + rotation * Vec3{p.x, p.y, cfg.link_length};
}

inline std::vector<WirePath> anchor_world_positions(const MechanismConfig& cfg,
                                                    const DesignParams& design,
                                                    const JointAngles& q) {
  validate_design(design, cfg);
  const Mat3 rotation = joint_rotation(cfg, q);
  std::vector<WirePath> paths(cfg.wire_count);
  for (std::size_t i = 0; i < cfg.wire_count; ++i) {
    WirePath& path = paths[i];
    path.wire_index = i;
    path.anchors.resize(cfg.points_per_wire);
    for (std::size_t j = 0; j < cfg.points_per_wire; ++j) {
      const DiscPoint& p = design.at(i, j);
      path.anchors[j] = (j == kMovingAnchor) ? moving_anchor_world(cfg, rotation, p)
                                             : base_anchor_world(p);
    }
  }
  return paths;
}

inline Segment base_link_segment(const MechanismConfig& cfg) {
  return {{0.0, 0.0, 0.0}, joint_center(cfg)};
}

inline Segment moving_link_segment(const MechanismConfig& cfg, const JointAngles& q) {
  const Mat3 rotation = joint_rotation(cfg, q);
  return {joint_center(cfg), moving_anchor_world(cfg, rotation, {0.0, 0.0})};
}

// ---------------------------------------------------------------------------
// Wire lengths and the muscle Jacobian
// ---------------------------------------------------------------------------

inline std::vector<double> wire_lengths(const MechanismConfig& cfg, const DesignParams& design,
                                        const JointAngles& q) {
  const std::vector<WirePath> paths = anchor_world_positions(cfg, design, q);
  std::vector<double> lengths(paths.size(), 0.0);
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = 0; j < paths[i].segment_count(); ++j)
      lengths[i] += paths[i].segment(j).length();
  return lengths;
}

struct MuscleJacobian {
  std::size_t wires = 0;
  std::size_t dofs = 0;
  std::vector<double> g;  // row-major wires x dofs, entry = d(length_i)/d(theta_j)

  double at(std::size_t wire, std::size_t dof) const { return g[wire * dofs + dof]; }
  double& at(std::size_t wire, std::size_t dof) { return g[wire * dofs + dof]; }
};

// Analytic length gradient: each segment contributes (unit vector) dotted
// with the velocity difference of its endpoints under a unit joint rate.
// Only the moving-disc anchor has nonzero velocity, axis x (p - c).
// Segments shorter than 1e-12 contribute nothing.
inline MuscleJacobian muscle_jacobian(const MechanismConfig& cfg, const DesignParams& design,
                                      const JointAngles& q) {
  const std::vector<WirePath> paths = anchor_world_positions(cfg, design, q);
  const std::vector<Vec3> axes = joint_axes_world(cfg, q);
  const Vec3 center = joint_center(cfg);

  MuscleJacobian jac;
  jac.wires = cfg.wire_count;
  jac.dofs = cfg.dof_count();
  jac.g.assign(jac.wires * jac.dofs, 0.0);

  for (std::size_t i = 0; i < paths.size(); ++i) {
    const WirePath& path = paths[i];
    for (std::size_t j = 0; j < path.segment_count(); ++j) {
      const Vec3 diff = path.anchors[j + 1] - path.anchors[j];
      const double len = norm(diff);
      if (len < 1e-12) continue;
      const Vec3 unit = diff / len;
      for (std::size_t d = 0; d < jac.dofs; ++d) {
        const Vec3 v_start = (j == kMovingAnchor)
                                 ? cross(axes[d], path.anchors[j] - center)
                                 : Vec3{};
        const Vec3 v_end = (j + 1 == kMovingAnchor)
                               ? cross(axes[d], path.anchors[j + 1] - center)
                               : Vec3{};
        jac.at(i, d) += dot(unit, v_end - v_start);
      }
    }
  }
  return jac;
}

// Flags design features worth surfacing to a user; none of these are hard
// errors for evaluation.
inline std::vector<std::string> design_warnings(const MechanismConfig& cfg,
                                                const DesignParams& design) {
  validate_design(design, cfg);
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < design.wire_count; ++i)
    for (std::size_t j = 0; j < design.points_per_wire; ++j) {
      const DiscPoint& p = design.at(i, j);
      if (std::sqrt(p.x * p.x + p.y * p.y) < 1e-9)
        warnings.push_back("wire " + std::to_string(i) + " point " + std::to_string(j) +
                           " sits at the disc center and touches the link axis");
    }
  return warnings;
}

}  // namespace wirelay
