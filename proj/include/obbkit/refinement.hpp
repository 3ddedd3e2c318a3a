#pragma once

#include <array>
#include <string>
#include <vector>

#include "obbkit/obb_core.hpp"

namespace obbkit {

enum class DecayStrategy { kNone, kLinear, kExponential, kPower };
enum class Activation { kLinear, kTanh, kSin, kSigmoid };

/// Layer-wise schedule for the bounded periodic angle update.
/// The exponential strategy gives alpha_i = alpha0^(-i): alpha equals 1 at
/// layer 0 and strictly decreases for alpha0 > 1.
struct RefineSchedule {
  double alpha0 = 1.5;
  int num_layers = 4;
  DecayStrategy decay = DecayStrategy::kExponential;
  Activation activation = Activation::kTanh;
};

/// Per-layer refinement state: box spatial parameters live in sigmoid space,
/// each strictly inside (0, 1); theta in [0, pi).
struct RefineState {
  Obb5 box{};
  int layer_index = 0;
};

/// Update scale at layer i:
///   exponential -> alpha0^(-i); none -> 1;
///   linear -> max(1 - i/L, 1/L); power -> 1/(i+1).
/// All strategies equal 1 at i = 0. Throws std::out_of_range for i outside
/// [0, num_layers).
double alpha_at(const RefineSchedule& s, int layer);

/// The bounding activation g(.) applied to a raw offset. The sigmoid variant
/// is centered (2*sigmoid(x) - 1) so a zero offset gives a zero step.
double apply_activation(Activation act, double x);

/// Bounded periodic angle update:
///   wrap_pi(theta_ref + g(delta_raw) * alpha_at(s, i)).
/// For the bounded activations the step magnitude never exceeds alpha_i.
/// Requires theta_ref in [0, pi) and finite delta_raw.
double update_angle(double theta_ref, double delta_raw,
                    const RefineSchedule& s, int layer);

/// Inverse-sigmoid spatial update, component-wise sigmoid(delta + logit(ref)).
/// Inputs must be strictly inside (0, 1); outputs are kept strictly inside.
std::array<double, 4> update_spatial(const std::array<double, 4>& b_ref,
                                     const std::array<double, 4>& delta);

struct LayerReport {
  int layer = 0;
  double avg_error_deg = 0.0;  // mean |delta_pi| vs targets, degrees
  double avg_delta_deg = 0.0;  // mean applied |step| this layer, degrees
};

/// Runs layer-wise angle refinement by gradient descent on the angular term
/// of total_box_loss: at each layer the raw offset is -sp_l1_grad * step_scale,
/// bounded by the schedule activation and scaled by alpha_i. Spatial
/// parameters pass through unchanged (they do not enter the angular report).
///
/// Emits num_layers + 1 rows; row 0 is the initial state with avg_delta 0
/// by convention. The update reported at row i uses alpha_at(s, i - 1).
/// Requires equal-length non-empty lists and num_layers >= 2.
std::vector<LayerReport> simulate_refinement(const std::vector<Obb5>& targets,
                                             const std::vector<Obb5>& init,
                                             const RefineSchedule& s,
                                             double step_scale,
                                             int workers = 1);

/// CSV serialization of the simulator report: layer,avg_error_deg,avg_delta_deg.
std::string refine_report_csv(const std::vector<LayerReport>& rows);

DecayStrategy parse_decay(const std::string& name);
Activation parse_activation(const std::string& name);
std::string decay_name(DecayStrategy d);
std::string activation_name(Activation a);

}  // namespace obbkit
