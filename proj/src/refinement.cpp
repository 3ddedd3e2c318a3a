#include "obbkit/refinement.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "obbkit/losses.hpp"
#include "obbkit/parallel.hpp"

namespace obbkit {

double alpha_at(const RefineSchedule& s, int layer) {
  if (layer < 0 || layer >= s.num_layers) {
    throw std::out_of_range("alpha_at: layer index outside [0, num_layers)");
  }
  switch (s.decay) {
    case DecayStrategy::kNone:
      return 1.0;
    case DecayStrategy::kLinear: {
      const double l = static_cast<double>(s.num_layers);
      return std::max(1.0 - layer / l, 1.0 / l);
    }
    case DecayStrategy::kExponential:
      return std::pow(s.alpha0, -static_cast<double>(layer));
    case DecayStrategy::kPower:
      return 1.0 / (layer + 1.0);
  }
  throw std::invalid_argument("alpha_at: unknown decay strategy");
}

double apply_activation(Activation act, double x) {
  switch (act) {
    case Activation::kLinear:
      return x;
    case Activation::kTanh:
      return std::tanh(x);
    case Activation::kSin:
      return std::sin(x);
    case Activation::kSigmoid:
      // centered: 2*sigmoid(x) - 1, zero input -> zero step
      return std::tanh(0.5 * x);
  }
  throw std::invalid_argument("apply_activation: unknown activation");
}

double update_angle(double theta_ref, double delta_raw,
                    const RefineSchedule& s, int layer) {
  if (!(theta_ref >= 0.0 && theta_ref < kPi)) {
    throw std::domain_error("update_angle: theta_ref outside [0, pi)");
  }
  if (!std::isfinite(delta_raw)) {
    throw std::domain_error("update_angle: non-finite raw offset");
  }
  return wrap_pi(theta_ref + apply_activation(s.activation, delta_raw) *
                                 alpha_at(s, layer));
}

namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

std::array<double, 4> update_spatial(const std::array<double, 4>& b_ref,
                                     const std::array<double, 4>& delta) {
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const double b = b_ref[i];
    if (!(b > 0.0 && b < 1.0)) {
      throw std::domain_error("update_spatial: reference outside (0, 1)");
    }
    double v = sigmoid(delta[i] + std::log(b / (1.0 - b)));
    // sigmoid saturates to exactly 0/1 in doubles for large offsets;
    // keep the open-interval contract.
    v = std::min(v, std::nextafter(1.0, 0.0));
    v = std::max(v, std::nextafter(0.0, 1.0));
    out[i] = v;
  }
  return out;
}

std::vector<LayerReport> simulate_refinement(const std::vector<Obb5>& targets,
                                             const std::vector<Obb5>& init,
                                             const RefineSchedule& s,
                                             double step_scale, int workers) {
  if (targets.empty() || init.empty()) {
    throw std::domain_error("simulate_refinement: empty instance list");
  }
  if (targets.size() != init.size()) {
    throw std::invalid_argument("simulate_refinement: list length mismatch");
  }
  if (s.num_layers < 2) {
    throw std::invalid_argument("simulate_refinement: need at least 2 layers");
  }

  const std::size_t n = targets.size();
  const double rad2deg = 180.0 / kPi;

  std::vector<double> theta(n);
  for (std::size_t k = 0; k < n; ++k) theta[k] = init[k].theta;

  std::vector<LayerReport> rows;
  rows.reserve(s.num_layers + 1);

  auto mean_error_deg = [&]() {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += sp_l1(theta[k], targets[k].theta);
    }
    return acc / static_cast<double>(n) * rad2deg;
  };

  rows.push_back(LayerReport{0, mean_error_deg(), 0.0});

  std::vector<double> step(n);
  for (int layer = 0; layer < s.num_layers; ++layer) {
    parallel_for(n, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const double grad = sp_l1_grad(theta[k], targets[k].theta);
        const double delta_raw = -grad * step_scale;
        const double next = update_angle(theta[k], delta_raw, s, layer);
        step[k] = std::abs(delta_pi(next, theta[k]));
        theta[k] = next;
      }
    });
    double step_acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) step_acc += step[k];
    rows.push_back(LayerReport{layer + 1, mean_error_deg(),
                               step_acc / static_cast<double>(n) * rad2deg});
  }
  return rows;
}

std::string refine_report_csv(const std::vector<LayerReport>& rows) {
  std::string out = "layer,avg_error_deg,avg_delta_deg\n";
  char buf[128];
  for (const LayerReport& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.9f,%.9f\n", r.layer, r.avg_error_deg,
                  r.avg_delta_deg);
    out += buf;
  }
  return out;
}

DecayStrategy parse_decay(const std::string& name) {
  if (name == "none") return DecayStrategy::kNone;
  if (name == "linear") return DecayStrategy::kLinear;
  if (name == "exponential" || name == "exp") return DecayStrategy::kExponential;
  if (name == "power") return DecayStrategy::kPower;
  throw std::invalid_argument("unknown decay strategy: " + name);
}

Activation parse_activation(const std::string& name) {
  if (name == "linear") return Activation::kLinear;
  if (name == "tanh") return Activation::kTanh;
  if (name == "sin") return Activation::kSin;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw std::invalid_argument("unknown activation: " + name);
}

std::string decay_name(DecayStrategy d) {
  switch (d) {
    case DecayStrategy::kNone: return "none";
    case DecayStrategy::kLinear: return "linear";
    case DecayStrategy::kExponential: return "exponential";
    case DecayStrategy::kPower: return "power";
  }
  return "?";
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::kLinear: return "linear";
    case Activation::kTanh: return "tanh";
    case Activation::kSin: return "sin";
    case Activation::kSigmoid: return "sigmoid";
  }
  return "?";
}

}  // namespace obbkit
