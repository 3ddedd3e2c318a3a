#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "obbkit/evalio.hpp"
#include "obbkit/obb_core.hpp"

namespace obbkit {

/// Four-quadrant composition spec: one rotation per quadrant from
/// {0, 90, 180, 270} degrees, the square patch size, and the seed the
/// rotations were drawn with.
struct MosaicSpec {
  std::array<int, 4> quadrant_rotations{0, 0, 0, 0};
  int patch_size = 1024;
  std::uint64_t seed = 0;
};

/// 8-bit grayscale raster, row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

/// Annotated frame. The raster is optional: annotation-only mode is
/// first-class since the discrete rotations are exact index permutations.
struct AnnotatedImage {
  int width = 0;
  int height = 0;
  std::optional<Raster> raster;
  std::vector<AnnotationRecord> annotations;
};

/// Rotates an annotation about the center of a square frame of side `size`
/// by a discrete angle (CCW in the mathematical sense; on a y-down display
/// this reads as clockwise). The derived box angle maps to
/// wrap_pi(theta + rot * pi/180); category and difficulty are preserved.
/// For power-of-two frame sizes the corner transform is exact, so four
/// 90-degree applications compose to the identity bit-for-bit.
AnnotationRecord rotate_annotation(const AnnotationRecord& a, int rot_degrees,
                                   double size);

/// Index-permutation rotation of a square raster. Throws
/// std::invalid_argument for non-square input (90/270 would not preserve
/// the frame).
Raster rotate_raster(const Raster& r, int rot_degrees);

/// Four i.i.d. uniform draws over {0, 90, 180, 270}, deterministic for a
/// fixed seed (mt19937_64 stream; 2^64 is divisible by 4, so the draw is
/// exactly uniform).
std::array<int, 4> draw_rotations(std::uint64_t seed);

/// Composes four S x S annotated images into one 2S x 2S image. Quadrant q
/// is rotated by spec.quadrant_rotations[q] and placed at offset
/// ((q mod 2) * S, (q div 2) * S). Annotation count is conserved and every
/// output corner stays inside [0, 2S]^2. Rasters must be present on all
/// four inputs or on none.
AnnotatedImage mosaic(const std::array<AnnotatedImage, 4>& images,
                      const MosaicSpec& spec);

/// Center-crops (or zero-pads) a frame to patch x patch. Boxes whose
/// centroids fall outside the crop are dropped. Partially visible boxes are
/// kept when at least min_visible_ratio of their area survives, with corners
/// clamped into the frame; a clamped quad that loses convexity is dropped.
AnnotatedImage crop_to_patch(const AnnotatedImage& img, int patch,
                             double min_visible_ratio = 0.25);

/// Binary (P5) PGM, maxval 255.
Raster read_pgm(std::istream& in);
void write_pgm(const Raster& r, std::ostream& out);

}  // namespace obbkit
