#pragma once

#include <utility>
#include <vector>

#include "obbkit/losses.hpp"
#include "obbkit/obb_core.hpp"

namespace obbkit {

/// Dense rectangular matrix of matching costs, predictions along rows.
struct CostMatrix {
  std::vector<double> values;  // row-major, n_preds x n_targets
  int n_preds = 0;
  int n_targets = 0;

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n_targets + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n_targets + j]; }
};

/// One-to-one assignment: distinct pred/target indices, min(N, M) pairs,
/// total_cost the sum of matrix entries at the pairs.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (pred index, target index)
  double total_cost = 0.0;
};

struct ScoredBox {
  Obb5 box{};
  std::vector<double> class_probs;
};

struct LabeledBox {
  Obb5 box{};
  int class_id = 0;
};

/// Symmetric Hausdorff distance between the corner sets of two quads,
/// optionally densified with edge_samples uniformly spaced interior points
/// per edge. edge_samples = 0 compares corners only.
double hausdorff_cost(const Quad& a, const Quad& b, int edge_samples = 8);

/// Composite matching cost, entry (i, j) =
///   w.focal * focal_cost(p_i[class_j]) + w.kld * kld_loss(box_i, box_j)
///   + w.hausdorff * hausdorff_cost(quad_i, quad_j, edge_samples).
/// The focal term scores only the target-class probability. There is no L1
/// term here: the matching cost and the training loss are composed
/// differently on purpose.
CostMatrix build_cost_matrix(const std::vector<ScoredBox>& preds,
                             const std::vector<LabeledBox>& targets,
                             const LossWeights& w, int edge_samples = 8,
                             double focal_alpha = 0.25,
                             double focal_gamma = 2.0);

/// Exact minimum-cost assignment (O(n^3) augmenting-path algorithm).
/// Rectangular matrices are padded to square with
/// (max entry + 1) * min(N, M); padded cells never appear in the result.
Assignment hungarian(const CostMatrix& c);

}  // namespace obbkit
