#pragma once

#include <vector>

#include "obbkit/obb_core.hpp"

namespace obbkit {

/// How attention heads distribute around the predicted orientation.
///   vanilla              : all H heads sample at theta
///   asymmetric           : num_aligned heads at theta, the rest at theta+pi/2
///   symmetric_orthogonal : H/2 at theta, H/2 at theta+pi/2
///   multi_angle          : H/4 each at theta + {0, pi/4, pi/2, 3pi/4}
enum class HeadSplitKind {
  kVanilla,
  kAsymmetric,
  kSymmetricOrthogonal,
  kMultiAngle,
};

struct HeadSplitStrategy {
  HeadSplitKind kind = HeadSplitKind::kSymmetricOrthogonal;
  int num_heads = 8;    // even; divisible by 4 for multi_angle
  int num_aligned = 6;  // asymmetric only: heads kept at theta
};

struct Mat2 {
  double m00 = 1.0, m01 = 0.0;
  double m10 = 0.0, m11 = 1.0;

  Vec2 operator*(const Vec2& v) const {
    return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
  }
};

/// Query sampling geometry: center p_q, per-axis scale s_q (w, h), learned
/// offset placeholders, and the predicted orientation. Offsets are
/// caller-supplied; they are learned quantities upstream.
struct SamplingSpec {
  Vec2 center{};
  Vec2 scale{1.0, 1.0};  // components > 0
  std::vector<Vec2> offsets;
  double theta = 0.0;
};

/// Per-head sampling angles, returned unwrapped (theta + pi/2 may exceed pi;
/// consumers rotate with these angles, they never compare them).
/// Throws std::invalid_argument for odd H, or H not divisible by 4 with
/// multi_angle.
std::vector<double> head_angles(double theta, const HeadSplitStrategy& strat);

/// [[cos, -sin], [sin, cos]] — determinant 1, orthonormal columns.
Mat2 rotation_matrix(double theta);

/// Sampling locations, point[h][k] = center + R(theta_h) * (offset_k (*) scale)
/// with the element-wise product applied before rotation. Every strategy
/// consumes the same spec; only the angle list changes.
std::vector<std::vector<Vec2>> sampling_locations(const SamplingSpec& spec,
                                                  const HeadSplitStrategy& strat);

}  // namespace obbkit
