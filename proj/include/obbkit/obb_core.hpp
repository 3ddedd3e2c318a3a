#pragma once

#include <array>
#include <cmath>

namespace obbkit {

constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::sqrt(a.x * a.x + a.y * a.y); }

/// Oriented box: center, extents, rotation angle.
///
/// Angles use the long-side convention: theta in [0, pi), measured CCW from
/// the +x axis in the mathematical sense. In image (y-down) coordinates the
/// same rotation appears clockwise on screen; all modules share this frame.
struct Obb5 {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;   // > 0
  double h = 0.0;   // > 0
  double theta = 0.0;  // [0, pi)
};

/// Four corners of an oriented box. Order is CCW in the mathematical sense:
/// cross products of consecutive edges are non-negative.
struct Quad {
  std::array<Vec2, 4> pts{};
};

/// 2-D Gaussian with symmetric covariance [[cov_xx, cov_xy], [cov_xy, cov_yy]].
/// Symmetry holds by construction (a single off-diagonal entry is stored).
struct Gauss2 {
  Vec2 mu{};
  double cov_xx = 1.0;
  double cov_xy = 0.0;
  double cov_yy = 1.0;
};

/// Wrap an angle into [0, pi). Floor-based so negative inputs land in range
/// regardless of the platform's remainder sign convention.
/// Throws std::domain_error on non-finite input.
double wrap_pi(double u);

/// Signed shortest angular difference on the pi-periodic circle,
/// in [-pi/2, pi/2). Seam-consistent: |result| never exceeds pi/2.
double delta_pi(double theta_p, double theta_t);

/// Validated construction: requires finite fields, w > 0, h > 0;
/// wraps theta into [0, pi).
Obb5 make_obb(double cx, double cy, double w, double h, double theta);

/// Corners of the box, center + R(theta) * (+-w/2, +-h/2), CCW order.
Quad obb_to_quad(const Obb5& b);

/// Fit an Obb5 to a rectangle given as four corners. Returns the long-side
/// canonical form (w >= h, theta the long-edge direction in [0, pi)).
/// Near-rectangles within a 1e-6 relative tolerance are snapped via
/// edge-direction averaging. Throws std::invalid_argument when the quad is
/// not a rectangle within tolerance, std::domain_error when degenerate.
Obb5 quad_to_obb(const Quad& q);

/// Gaussian embedding: mu = center, sigma = R(theta) diag((w/2)^2, (h/2)^2) R(theta)^T.
/// Invariant under the (w,h,theta) <-> (h,w,theta+pi/2) re-parameterization.
Gauss2 obb_to_gauss(const Obb5& b);

/// Signed shoelace area; positive for CCW order.
double quad_signed_area(const Quad& q);

/// Absolute shoelace area.
double quad_area(const Quad& q);

/// Non-negative cross products of consecutive edges (with tolerance eps).
bool quad_is_convex_ccw(const Quad& q, double eps = 1e-9);

/// Centroid of the four corners.
Vec2 quad_centroid(const Quad& q);

}  // namespace obbkit
