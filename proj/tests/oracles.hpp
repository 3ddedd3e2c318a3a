// Test-only reference implementations. Everything here recomputes expected
// values through an independent route (enumeration, brute force, finite
// differences, Monte-Carlo) and must stay decoupled from the library code
// paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "obbkit/obb_core.hpp"

namespace oracles {

constexpr double kPi = 3.14159265358979323846;

// Canonical 53-bit uniform in [0, 1); fixed construction so sequences are
// reproducible across standard libraries.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

// Signed shortest angular difference by enumerating theta_p - theta_t + k*pi
// and keeping the smallest magnitude.
inline double delta_enum(double theta_p, double theta_t) {
  const double d = theta_p - theta_t;
  const int span = static_cast<int>(std::ceil(std::abs(d) / kPi)) + 2;
  double best = std::numeric_limits<double>::infinity();
  for (int k = -span; k <= span; ++k) {
    const double cand = d + k * kPi;
    if (std::abs(cand) < std::abs(best)) best = cand;
  }
  return best;
}

// Shorter arc on the pi-circle via direct reduction of |a - b|.
inline double sp_l1_twoarc(double a, double b) {
  double d = std::fmod(std::abs(a - b), kPi);
  if (d < 0.0) d += kPi;
  return std::min(d, kPi - d);
}

// Central finite difference of a scalar function.
template <typename Fn>
double central_diff(Fn&& fn, double x, double step = 1e-6) {
  return (fn(x + step) - fn(x - step)) / (2.0 * step);
}

struct Eig2 {
  double lambda1;  // larger
  double lambda2;
  double angle1;   // eigenvector direction of lambda1
};

inline Eig2 sym_eig2(double xx, double xy, double yy) {
  const double mean = 0.5 * (xx + yy);
  const double disc = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
  Eig2 e;
  e.lambda1 = mean + disc;
  e.lambda2 = mean - disc;
  e.angle1 = 0.5 * std::atan2(2.0 * xy, xx - yy);
  return e;
}

inline bool point_in_quad(const obbkit::Vec2& p, const obbkit::Quad& q) {
  for (int i = 0; i < 4; ++i) {
    const obbkit::Vec2 e = q.pts[(i + 1) % 4] - q.pts[i];
    if (obbkit::cross(e, p - q.pts[i]) < 0.0) return false;
  }
  return true;
}

// Stratified (jittered-grid) Monte-Carlo rasterization estimate of the IoU
// of two convex quads. cells * cells samples over the joint bounding box.
inline double mc_iou(const obbkit::Quad& a, const obbkit::Quad& b, int cells,
                     std::uint64_t seed) {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const obbkit::Quad* q : {&a, &b}) {
    for (const obbkit::Vec2& p : q->pts) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
  }
  std::mt19937_64 gen(seed);
  const double dx = (max_x - min_x) / cells;
  const double dy = (max_y - min_y) / cells;
  std::int64_t n_inter = 0;
  std::int64_t n_union = 0;
  for (int iy = 0; iy < cells; ++iy) {
    for (int ix = 0; ix < cells; ++ix) {
      const obbkit::Vec2 p{min_x + (ix + uniform01(gen)) * dx,
                           min_y + (iy + uniform01(gen)) * dy};
      const bool in_a = point_in_quad(p, a);
      const bool in_b = point_in_quad(p, b);
      if (in_a && in_b) ++n_inter;
      if (in_a || in_b) ++n_union;
    }
  }
  return n_union == 0 ? 0.0 : static_cast<double>(n_inter) / n_union;
}

// Monte-Carlo KL divergence E_p[ln p - ln q] between 2-D Gaussians,
// sampling from p through its Cholesky factor.
inline double mc_kld(const obbkit::Gauss2& p, const obbkit::Gauss2& q,
                     int samples, std::uint64_t seed) {
  auto log_density = [](const obbkit::Gauss2& g, double x, double y) {
    const double det = g.cov_xx * g.cov_yy - g.cov_xy * g.cov_xy;
    const double dx = x - g.mu.x;
    const double dy = y - g.mu.y;
    const double maha =
        (g.cov_yy * dx * dx - 2.0 * g.cov_xy * dx * dy + g.cov_xx * dy * dy) / det;
    return -std::log(2.0 * kPi) - 0.5 * std::log(det) - 0.5 * maha;
  };
  // Cholesky of p's covariance: [[l11, 0], [l21, l22]]
  const double l11 = std::sqrt(p.cov_xx);
  const double l21 = p.cov_xy / l11;
  const double l22 = std::sqrt(p.cov_yy - l21 * l21);

  std::mt19937_64 gen(seed);
  auto std_normal = [&gen]() {
    // Box-Muller from the fixed uniform construction
    const double u1 = std::max(uniform01(gen), 1e-300);
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double z1 = std_normal();
    const double z2 = std_normal();
    const double x = p.mu.x + l11 * z1;
    const double y = p.mu.y + l21 * z1 + l22 * z2;
    acc += log_density(p, x, y) - log_density(q, x, y);
  }
  return acc / samples;
}

struct BruteAssignment {
  std::vector<int> target_of_pred;
  double total = std::numeric_limits<double>::infinity();
};

// Exhaustive minimum-cost square assignment (n <= ~8).
inline BruteAssignment brute_force_assignment(const std::vector<double>& cost,
                                              int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BruteAssignment best;
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost[static_cast<std::size_t>(i) * n + perm[i]];
    if (total < best.total) {
      best.total = total;
      best.target_of_pred = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<obbkit::Vec2> boundary_points(const obbkit::Quad& q,
                                                 int per_edge) {
  std::vector<obbkit::Vec2> pts(q.pts.begin(), q.pts.end());
  for (int i = 0; i < 4; ++i) {
    const obbkit::Vec2 a = q.pts[i];
    const obbkit::Vec2 b = q.pts[(i + 1) % 4];
    for (int k = 1; k <= per_edge; ++k) {
      const double t = static_cast<double>(k) / (per_edge + 1);
      pts.push_back(a + (b - a) * t);
    }
  }
  return pts;
}

inline double brute_force_hausdorff(const std::vector<obbkit::Vec2>& pa,
                                    const std::vector<obbkit::Vec2>& pb) {
  auto directed = [](const std::vector<obbkit::Vec2>& from,
                     const std::vector<obbkit::Vec2>& to) {
    double worst = 0.0;
    for (const obbkit::Vec2& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const obbkit::Vec2& q : to) best = std::min(best, obbkit::norm(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(pa, pb), directed(pb, pa));
}

inline double point_segment_distance(const obbkit::Vec2& p, const obbkit::Vec2& a,
                                     const obbkit::Vec2& b) {
  const obbkit::Vec2 ab = b - a;
  const double len2 = obbkit::dot(ab, ab);
  const double t = len2 <= 0.0 ? 0.0 : std::clamp(obbkit::dot(p - a, ab) / len2, 0.0, 1.0);
  return obbkit::norm(p - (a + ab * t));
}

// Distance from a point to a filled convex quad (0 inside).
inline double point_to_quad_distance(const obbkit::Vec2& p, const obbkit::Quad& q) {
  if (point_in_quad(p, q)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    best = std::min(best, point_segment_distance(p, q.pts[i], q.pts[(i + 1) % 4]));
  }
  return best;
}

// Hausdorff distance between filled convex quads: for convex sets the
// directed sup is attained at a corner.
inline double convex_set_hausdorff(const obbkit::Quad& a, const obbkit::Quad& b) {
  double worst = 0.0;
  for (const obbkit::Vec2& p : a.pts) worst = std::max(worst, point_to_quad_distance(p, b));
  for (const obbkit::Vec2& p : b.pts) worst = std::max(worst, point_to_quad_distance(p, a));
  return worst;
}

}  // namespace oracles
