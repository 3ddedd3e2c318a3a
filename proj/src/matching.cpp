#include "obbkit/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace obbkit {

namespace {

std::vector<Vec2> sample_boundary(const Quad& q, int edge_samples) {
  std::vector<Vec2> pts(q.pts.begin(), q.pts.end());
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = q.pts[i];
    const Vec2& b = q.pts[(i + 1) % 4];
    for (int k = 1; k <= edge_samples; ++k) {
      const double t = static_cast<double>(k) / (edge_samples + 1);
      pts.push_back(a + (b - a) * t);
    }
  }
  return pts;
}

double directed_hausdorff(const std::vector<Vec2>& from,
                          const std::vector<Vec2>& to) {
  double worst = 0.0;
  for (const Vec2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& q : to) {
      best = std::min(best, norm(p - q));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_cost(const Quad& a, const Quad& b, int edge_samples) {
  if (edge_samples < 0) {
    throw std::invalid_argument("hausdorff_cost: edge_samples must be >= 0");
  }
  const std::vector<Vec2> pa = sample_boundary(a, edge_samples);
  const std::vector<Vec2> pb = sample_boundary(b, edge_samples);
  return std::max(directed_hausdorff(pa, pb), directed_hausdorff(pb, pa));
}

CostMatrix build_cost_matrix(const std::vector<ScoredBox>& preds,
                             const std::vector<LabeledBox>& targets,
                             const LossWeights& w, int edge_samples,
                             double focal_alpha, double focal_gamma) {
  if (preds.empty() || targets.empty()) {
    throw std::invalid_argument("build_cost_matrix: empty input lists");
  }

  std::vector<Quad> pred_quads(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    pred_quads[i] = obb_to_quad(preds[i].box);
  }
  std::vector<Quad> tgt_quads(targets.size());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    tgt_quads[j] = obb_to_quad(targets[j].box);
  }

  CostMatrix c;
  c.n_preds = static_cast<int>(preds.size());
  c.n_targets = static_cast<int>(targets.size());
  c.values.resize(preds.size() * targets.size());

  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < targets.size(); ++j) {
      const int cls = targets[j].class_id;
      if (cls < 0 || cls >= static_cast<int>(preds[i].class_probs.size())) {
        throw std::out_of_range("build_cost_matrix: target class outside prediction probs");
      }
      const double p = preds[i].class_probs[cls];
      if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("build_cost_matrix: class probability outside (0, 1)");
      }
      c.at(static_cast<int>(i), static_cast<int>(j)) =
          w.focal * focal_cost(p, true, focal_alpha, focal_gamma) +
          w.kld * kld_loss(preds[i].box, targets[j].box) +
          w.hausdorff * hausdorff_cost(pred_quads[i], tgt_quads[j], edge_samples);
    }
  }
  return c;
}

Assignment hungarian(const CostMatrix& c) {
  const int n_preds = c.n_preds;
  const int n_targets = c.n_targets;
  if (n_preds <= 0 || n_targets <= 0) {
    throw std::invalid_argument("hungarian: empty cost matrix");
  }
  double max_entry = -std::numeric_limits<double>::infinity();
  for (double v : c.values) {
    if (!std::isfinite(v)) {
      throw std::domain_error("hungarian: non-finite cost entry");
    }
    max_entry = std::max(max_entry, v);
  }

  const int n = std::max(n_preds, n_targets);
  const double pad = (max_entry + 1.0) * std::min(n_preds, n_targets);
  std::vector<double> a(static_cast<std::size_t>(n + 1) * (n + 1), pad);
  for (int i = 0; i < n_preds; ++i) {
    for (int j = 0; j < n_targets; ++j) {
      a[static_cast<std::size_t>(i + 1) * (n + 1) + (j + 1)] = c.at(i, j);
    }
  }

  // Potentials + augmenting paths; p[j] is the row matched to column j.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[static_cast<std::size_t>(i0) * (n + 1) + j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment out;
  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= n_preds && j <= n_targets) {
      out.pairs.emplace_back(i - 1, j - 1);
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto& [i, j] : out.pairs) {
    out.total_cost += c.at(i, j);
  }
  return out;
}

}  // namespace obbkit
