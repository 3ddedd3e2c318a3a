#include "obbkit/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace obbkit {

double sp_l1(double theta_pred, double theta_tgt) {
  return std::abs(delta_pi(theta_pred, theta_tgt));
}

double sp_l1_grad(double theta_pred, double theta_tgt) {
  const double d = delta_pi(theta_pred, theta_tgt);
  if (d == 0.0) return 0.0;
  // delta_pi lands exactly on -pi/2 at the ridge; fixed one-sided convention.
  if (d == -kPi / 2.0) return 1.0;
  return d > 0.0 ? 1.0 : -1.0;
}

namespace {

struct SymEig {
  double lo;
  double hi;
};

SymEig sym_eigenvalues(const Gauss2& g) {
  const double mean = 0.5 * (g.cov_xx + g.cov_yy);
  const double disc =
      std::sqrt(0.25 * (g.cov_xx - g.cov_yy) * (g.cov_xx - g.cov_yy) +
                g.cov_xy * g.cov_xy);
  return {mean - disc, mean + disc};
}

void require_positive_definite(const Gauss2& g, const char* which) {
  const SymEig ev = sym_eigenvalues(g);
  if (!(ev.lo > 0.0) || !std::isfinite(ev.hi)) {
    std::ostringstream msg;
    msg << "kld_gauss: " << which << " covariance is numerically singular"
        << " (eigenvalues " << ev.lo << ", " << ev.hi << "; condition number "
        << (ev.lo > 0.0 ? ev.hi / ev.lo
                        : std::numeric_limits<double>::infinity())
        << ")";
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

double kld_gauss(const Gauss2& p, const Gauss2& t) {
  require_positive_definite(t, "target");
  require_positive_definite(p, "source");

  const double det_t = t.cov_xx * t.cov_yy - t.cov_xy * t.cov_xy;
  const double det_p = p.cov_xx * p.cov_yy - p.cov_xy * p.cov_xy;

  // inv(St) = 1/det [[cov_yy, -cov_xy], [-cov_xy, cov_xx]]
  const double ixx = t.cov_yy / det_t;
  const double ixy = -t.cov_xy / det_t;
  const double iyy = t.cov_xx / det_t;

  const double trace_term = ixx * p.cov_xx + 2.0 * ixy * p.cov_xy + iyy * p.cov_yy;
  const double dx = t.mu.x - p.mu.x;
  const double dy = t.mu.y - p.mu.y;
  const double maha = ixx * dx * dx + 2.0 * ixy * dx * dy + iyy * dy * dy;

  const double d = 0.5 * (trace_term + maha - 2.0 + std::log(det_t / det_p));
  return std::max(d, 0.0);
}

double kld_loss(const Obb5& pred, const Obb5& tgt) {
  const double d = kld_gauss(obb_to_gauss(pred), obb_to_gauss(tgt));
  return 1.0 - 1.0 / (1.0 + std::sqrt(d));
}

double focal_cost(double p, bool is_match, double alpha, double gamma) {
  p = std::clamp(p, 1e-8, 1.0 - 1e-8);
  const double pos = alpha * std::pow(1.0 - p, gamma) * (-std::log(p));
  const double neg = (1.0 - alpha) * std::pow(p, gamma) * (-std::log(1.0 - p));
  return is_match ? pos - neg : neg - pos;
}

double total_box_loss(const Obb5& pred, const Obb5& tgt, const LossWeights& w) {
  const double l1 = std::abs(pred.cx - tgt.cx) + std::abs(pred.cy - tgt.cy) +
                    std::abs(pred.w - tgt.w) + std::abs(pred.h - tgt.h);
  return w.l1 * l1 + w.kld * kld_loss(pred, tgt) +
         w.angle * sp_l1(pred.theta, tgt.theta);
}

}  // namespace obbkit
