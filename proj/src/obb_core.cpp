#include "obbkit/obb_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace obbkit {

double wrap_pi(double u) {
  if (!std::isfinite(u)) {
    throw std::domain_error("wrap_pi: non-finite angle");
  }
  double r = u - kPi * std::floor(u / kPi);
  // floor(u/pi) can round across an integer for inputs a hair below k*pi;
  // fold the stray ulp back into [0, pi).
  if (r < 0.0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

double delta_pi(double theta_p, double theta_t) {
  if (!std::isfinite(theta_p) || !std::isfinite(theta_t)) {
    throw std::domain_error("delta_pi: non-finite angle");
  }
  return wrap_pi(theta_p - theta_t + kPi / 2.0) - kPi / 2.0;
}

Obb5 make_obb(double cx, double cy, double w, double h, double theta) {
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(w) ||
      !std::isfinite(h) || !std::isfinite(theta)) {
    throw std::domain_error("make_obb: non-finite field");
  }
  if (w <= 0.0 || h <= 0.0) {
    throw std::invalid_argument("make_obb: extents must be positive");
  }
  return Obb5{cx, cy, w, h, wrap_pi(theta)};
}

Quad obb_to_quad(const Obb5& b) {
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const double hw = 0.5 * b.w;
  const double hh = 0.5 * b.h;
  // Local corners in CCW order; rotation preserves orientation.
  const Vec2 local[4] = {{hw, hh}, {-hw, hh}, {-hw, -hh}, {hw, -hh}};
  Quad q;
  for (int i = 0; i < 4; ++i) {
    q.pts[i] = Vec2{b.cx + c * local[i].x - s * local[i].y,
                    b.cy + s * local[i].x + c * local[i].y};
  }
  return q;
}

Obb5 quad_to_obb(const Quad& q) {
  Vec2 e[4];
  double len[4];
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    e[i] = q.pts[(i + 1) % 4] - q.pts[i];
    len[i] = norm(e[i]);
    scale = std::max(scale, len[i]);
  }
  if (!(scale > 0.0) || quad_area(q) <= 1e-12 * scale * scale) {
    throw std::domain_error("quad_to_obb: degenerate (zero-area) quad");
  }

  const double tol = 1e-6;
  const bool lengths_ok = std::abs(len[0] - len[2]) <= tol * scale &&
                          std::abs(len[1] - len[3]) <= tol * scale;
  const bool ortho_ok =
      std::abs(dot(e[0], e[1])) <= tol * len[0] * len[1] &&
      std::abs(dot(e[1], e[2])) <= tol * len[1] * len[2];
  if (!lengths_ok || !ortho_ok) {
    throw std::invalid_argument("quad_to_obb: corners do not form a rectangle");
  }

  const Vec2 center = quad_centroid(q);
  // Average opposite edges to snap near-rectangles.
  const Vec2 dir_w = (e[0] - e[2]) * 0.5;
  const Vec2 dir_h = (e[1] - e[3]) * 0.5;
  const double w_len = 0.5 * (len[0] + len[2]);
  const double h_len = 0.5 * (len[1] + len[3]);

  if (w_len >= h_len) {
    return Obb5{center.x, center.y, w_len, h_len,
                wrap_pi(std::atan2(dir_w.y, dir_w.x))};
  }
  return Obb5{center.x, center.y, h_len, w_len,
              wrap_pi(std::atan2(dir_h.y, dir_h.x))};
}

Gauss2 obb_to_gauss(const Obb5& b) {
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const double p = 0.25 * b.w * b.w;  // (w/2)^2
  const double qq = 0.25 * b.h * b.h;  // (h/2)^2
  Gauss2 g;
  g.mu = Vec2{b.cx, b.cy};
  g.cov_xx = c * c * p + s * s * qq;
  g.cov_xy = c * s * (p - qq);
  g.cov_yy = s * s * p + c * c * qq;
  return g;
}

double quad_signed_area(const Quad& q) {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = q.pts[i];
    const Vec2& b = q.pts[(i + 1) % 4];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * acc;
}

double quad_area(const Quad& q) { return std::abs(quad_signed_area(q)); }

bool quad_is_convex_ccw(const Quad& q, double eps) {
  for (int i = 0; i < 4; ++i) {
    const Vec2 e1 = q.pts[(i + 1) % 4] - q.pts[i];
    const Vec2 e2 = q.pts[(i + 2) % 4] - q.pts[(i + 1) % 4];
    if (cross(e1, e2) < -eps) return false;
  }
  return true;
}

Vec2 quad_centroid(const Quad& q) {
  Vec2 c{0.0, 0.0};
  for (const Vec2& p : q.pts) c = c + p;
  return c * 0.25;
}

}  // namespace obbkit
