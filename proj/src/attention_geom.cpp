#include "obbkit/attention_geom.hpp"

#include <cmath>
#include <stdexcept>

namespace obbkit {

std::vector<double> head_angles(double theta, const HeadSplitStrategy& strat) {
  const int h = strat.num_heads;
  if (h <= 0 || h % 2 != 0) {
    throw std::invalid_argument("head_angles: head count must be even and positive");
  }
  std::vector<double> angles;
  angles.reserve(h);
  switch (strat.kind) {
    case HeadSplitKind::kVanilla:
      angles.assign(h, theta);
      break;
    case HeadSplitKind::kAsymmetric: {
      if (strat.num_aligned < 0 || strat.num_aligned > h) {
        throw std::invalid_argument("head_angles: num_aligned outside [0, H]");
      }
      angles.assign(strat.num_aligned, theta);
      angles.insert(angles.end(), h - strat.num_aligned, theta + kPi / 2.0);
      break;
    }
    case HeadSplitKind::kSymmetricOrthogonal:
      angles.assign(h / 2, theta);
      angles.insert(angles.end(), h / 2, theta + kPi / 2.0);
      break;
    case HeadSplitKind::kMultiAngle: {
      if (h % 4 != 0) {
        throw std::invalid_argument(
            "head_angles: multi_angle needs a head count divisible by 4");
      }
      for (int off = 0; off < 4; ++off) {
        angles.insert(angles.end(), h / 4, theta + off * kPi / 4.0);
      }
      break;
    }
  }
  return angles;
}

Mat2 rotation_matrix(double theta) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("rotation_matrix: non-finite angle");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Mat2{c, -s, s, c};
}

std::vector<std::vector<Vec2>> sampling_locations(const SamplingSpec& spec,
                                                  const HeadSplitStrategy& strat) {
  if (!(spec.scale.x > 0.0 && spec.scale.y > 0.0)) {
    throw std::invalid_argument("sampling_locations: scale components must be positive");
  }
  const std::vector<double> angles = head_angles(spec.theta, strat);
  std::vector<std::vector<Vec2>> points(angles.size());
  for (std::size_t h = 0; h < angles.size(); ++h) {
    const Mat2 rot = rotation_matrix(angles[h]);
    points[h].reserve(spec.offsets.size());
    for (const Vec2& off : spec.offsets) {
      const Vec2 scaled{off.x * spec.scale.x, off.y * spec.scale.y};
      points[h].push_back(spec.center + rot * scaled);
    }
  }
  return points;
}

}  // namespace obbkit
