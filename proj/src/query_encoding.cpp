#include "obbkit/query_encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace obbkit {

int encoded_scalar_count(EncodingVariant variant) {
  switch (variant) {
    case EncodingVariant::kSpatialOnly: return 4;
    case EncodingVariant::kRawTheta: return 5;
    case EncodingVariant::kSincosTheta: return 6;
    case EncodingVariant::kSincos2Theta: return 6;
    case EncodingVariant::kCenterOnly: return 2;
    case EncodingVariant::kCenterTheta: return 3;
  }
  throw std::invalid_argument("encoded_scalar_count: unknown variant");
}

namespace {

void validate_config(const EncodingConfig& cfg) {
  if (cfg.channels_per_dim <= 0 || cfg.channels_per_dim % 2 != 0) {
    throw std::invalid_argument("encoding: channels_per_dim must be even and positive");
  }
  if (!(cfg.temperature > 1.0)) {
    throw std::invalid_argument("encoding: temperature must exceed 1");
  }
}

void require_unit_range(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string("encode_positional: ") + name +
                            " outside [0, 1]");
  }
}

void append_pe(std::vector<double>& out, double v, const EncodingConfig& cfg) {
  const int d = cfg.channels_per_dim;
  for (int j = 0; j < d / 2; ++j) {
    const double freq =
        std::pow(cfg.temperature, -2.0 * j / static_cast<double>(d));
    out.push_back(std::sin(v * freq));
    out.push_back(std::cos(v * freq));
  }
}

}  // namespace

std::vector<double> encode_positional(const Obb5& b, const EncodingConfig& cfg) {
  validate_config(cfg);
  require_unit_range(b.cx, "cx");
  require_unit_range(b.cy, "cy");
  if (!(b.theta >= 0.0 && b.theta < kPi)) {
    throw std::domain_error("encode_positional: theta outside [0, pi)");
  }

  std::vector<double> scalars;
  switch (cfg.variant) {
    case EncodingVariant::kSpatialOnly:
    case EncodingVariant::kRawTheta:
    case EncodingVariant::kSincosTheta:
    case EncodingVariant::kSincos2Theta:
      require_unit_range(b.w, "w");
      require_unit_range(b.h, "h");
      scalars = {b.cx, b.cy, b.w, b.h};
      break;
    case EncodingVariant::kCenterOnly:
    case EncodingVariant::kCenterTheta:
      scalars = {b.cx, b.cy};
      break;
  }
  switch (cfg.variant) {
    case EncodingVariant::kRawTheta:
    case EncodingVariant::kCenterTheta:
      scalars.push_back(b.theta / kPi);
      break;
    case EncodingVariant::kSincosTheta:
      // derived scalars mapped into [0, 1] so all encoded dims share a range
      scalars.push_back(0.5 * (std::sin(b.theta) + 1.0));
      scalars.push_back(0.5 * (std::cos(b.theta) + 1.0));
      break;
    case EncodingVariant::kSincos2Theta:
      scalars.push_back(0.5 * (std::sin(2.0 * b.theta) + 1.0));
      scalars.push_back(0.5 * (std::cos(2.0 * b.theta) + 1.0));
      break;
    default:
      break;
  }

  std::vector<double> out;
  out.reserve(scalars.size() * cfg.channels_per_dim);
  for (double v : scalars) append_pe(out, v, cfg);
  return out;
}

double seam_gap(const EncodingConfig& cfg, double eps) {
  if (!(eps > 0.0 && eps < kPi / 4.0)) {
    throw std::domain_error("seam_gap: eps outside (0, pi/4)");
  }
  const Obb5 lo{0.5, 0.5, 0.5, 0.5, eps};
  const Obb5 hi{0.5, 0.5, 0.5, 0.5, kPi - eps};
  const std::vector<double> a = encode_positional(lo, cfg);
  const std::vector<double> b = encode_positional(hi, cfg);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

EncodingVariant parse_encoding_variant(const std::string& name) {
  if (name == "spatial_only") return EncodingVariant::kSpatialOnly;
  if (name == "raw_theta") return EncodingVariant::kRawTheta;
  if (name == "sincos_theta") return EncodingVariant::kSincosTheta;
  if (name == "sincos_2theta") return EncodingVariant::kSincos2Theta;
  if (name == "center_only") return EncodingVariant::kCenterOnly;
  if (name == "center_theta") return EncodingVariant::kCenterTheta;
  throw std::invalid_argument("unknown encoding variant: " + name);
}

std::string encoding_variant_name(EncodingVariant v) {
  switch (v) {
    case EncodingVariant::kSpatialOnly: return "spatial_only";
    case EncodingVariant::kRawTheta: return "raw_theta";
    case EncodingVariant::kSincosTheta: return "sincos_theta";
    case EncodingVariant::kSincos2Theta: return "sincos_2theta";
    case EncodingVariant::kCenterOnly: return "center_only";
    case EncodingVariant::kCenterTheta: return "center_theta";
  }
  return "?";
}

}  // namespace obbkit
