#pragma once

#include "obbkit/obb_core.hpp"

namespace obbkit {

/// Term weights for matching costs and the box regression loss.
/// Defaults: focal 1, the regression terms 5.
struct LossWeights {
  double focal = 1.0;
  double l1 = 5.0;
  double kld = 5.0;
  double angle = 5.0;
  double hausdorff = 5.0;
};

/// Shortest-path periodic L1: the shorter arc between two angles on the
/// pi-circle, min(|d|, pi - |d|) with d reduced into [0, pi). Range [0, pi/2].
double sp_l1(double theta_pred, double theta_tgt);

/// Analytic dL/dtheta_pred of sp_l1: sign(delta_pi(pred, tgt)) almost
/// everywhere, 0 at the minimum. At the non-differentiable ridge
/// |delta| = pi/2 the one-sided value +1 is returned.
double sp_l1_grad(double theta_pred, double theta_tgt);

/// KL divergence D(p || t) between 2-D Gaussians, closed form:
///   1/2 [ tr(St^-1 Sp) + (mt-mp)^T St^-1 (mt-mp) - 2 + ln(det St / det Sp) ]
/// Throws std::runtime_error with a condition-number report when a
/// covariance is numerically singular.
double kld_gauss(const Gauss2& p, const Gauss2& t);

/// Bounded box-regression loss derived from the Gaussian embedding:
/// 1 - 1/(1 + sqrt(kld_gauss)). In [0, 1); zero iff the boxes define the
/// same Gaussian (equal up to the (w,h,theta) <-> (h,w,theta+pi/2) swap).
double kld_loss(const Obb5& pred, const Obb5& tgt);

/// Focal classification cost for bipartite matching, positive-minus-negative
/// form. For the matched class:
///   alpha (1-p)^gamma (-ln p) - (1-alpha) p^gamma (-ln(1-p))
/// which decreases monotonically in p. With is_match = false the negated
/// value is returned (cost of scoring a class that is not the target).
/// p is clamped into [1e-8, 1 - 1e-8].
double focal_cost(double p, bool is_match, double alpha = 0.25,
                  double gamma = 2.0);

/// Box regression loss: w.l1 * sum of |spatial residuals| + w.kld * kld_loss
/// + w.angle * sp_l1. Classification is a matching concern and is excluded.
/// Spatial residuals are taken in whatever frame the caller supplies
/// (normalized sigmoid-space coordinates in the refinement pipeline,
/// raw units otherwise).
double total_box_loss(const Obb5& pred, const Obb5& tgt, const LossWeights& w);

}  // namespace obbkit
