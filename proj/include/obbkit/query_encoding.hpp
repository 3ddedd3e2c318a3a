#pragma once

#include <string>
#include <vector>

#include "obbkit/obb_core.hpp"

namespace obbkit {

/// Which box scalars enter the sinusoidal positional encoding.
///   spatial_only  : (cx, cy, w, h) — angle excluded entirely
///   raw_theta     : spatial + theta/pi
///   sincos_theta  : spatial + sin(theta), cos(theta)
///   sincos_2theta : spatial + sin(2 theta), cos(2 theta) — pi-periodic
///   center_only   : (cx, cy)
///   center_theta  : (cx, cy) + theta/pi
enum class EncodingVariant {
  kSpatialOnly,
  kRawTheta,
  kSincosTheta,
  kSincos2Theta,
  kCenterOnly,
  kCenterTheta,
};

struct EncodingConfig {
  EncodingVariant variant = EncodingVariant::kSpatialOnly;
  int channels_per_dim = 32;  // even
  double temperature = 10000.0;  // > 1
};

/// Number of encoded scalars for a variant (output length is
/// channels_per_dim times this).
int encoded_scalar_count(EncodingVariant variant);

/// Sinusoidal positional encoding of the box geometry. Each encoded scalar v
/// expands to channel pairs (sin(v / T^(2j/d)), cos(v / T^(2j/d))),
/// j = 0 .. d/2-1 with d = channels_per_dim.
///
/// Box spatial scalars must be pre-normalized to [0, 1]; theta enters as
/// theta/pi, and derived sin/cos scalars are affinely mapped to [0, 1] via
/// (x+1)/2 so every encoded scalar shares the same range.
/// Throws std::domain_error for unnormalized inputs.
std::vector<double> encode_positional(const Obb5& b, const EncodingConfig& cfg);

/// Seam discontinuity of a variant: || encode(theta = eps) -
/// encode(theta = pi - eps) ||_2 with all other dims fixed at 0.5.
/// Requires 0 < eps < pi/4.
double seam_gap(const EncodingConfig& cfg, double eps);

EncodingVariant parse_encoding_variant(const std::string& name);
std::string encoding_variant_name(EncodingVariant v);

}  // namespace obbkit
