#include "obbkit/augment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace obbkit {

namespace {

void require_discrete_rotation(int rot_degrees) {
  if (rot_degrees != 0 && rot_degrees != 90 && rot_degrees != 180 &&
      rot_degrees != 270) {
    throw std::invalid_argument("rotation must be one of {0, 90, 180, 270} degrees");
  }
}

// Quarter-turn in centered coordinates: negation and swap only, so repeated
// applications cancel exactly.
Vec2 rotate_point(const Vec2& p, int rot_degrees, double center) {
  const double dx = p.x - center;
  const double dy = p.y - center;
  switch (rot_degrees) {
    case 0: return p;
    case 90: return {center - dy, center + dx};
    case 180: return {center - dx, center - dy};
    case 270: return {center + dy, center - dx};
    default: break;
  }
  throw std::invalid_argument("rotate_point: bad rotation");
}

}  // namespace

AnnotationRecord rotate_annotation(const AnnotationRecord& a, int rot_degrees,
                                   double size) {
  require_discrete_rotation(rot_degrees);
  if (!(size > 0.0)) {
    throw std::invalid_argument("rotate_annotation: frame size must be positive");
  }
  AnnotationRecord out = a;
  const double center = 0.5 * size;
  for (int i = 0; i < 4; ++i) {
    out.quad.pts[i] = rotate_point(a.quad.pts[i], rot_degrees, center);
  }
  return out;
}

Raster rotate_raster(const Raster& r, int rot_degrees) {
  require_discrete_rotation(rot_degrees);
  if (r.width != r.height) {
    throw std::invalid_argument("rotate_raster: frame must be square");
  }
  if (rot_degrees == 0) return r;
  const int s = r.width;
  Raster out;
  out.width = s;
  out.height = s;
  out.pixels.resize(r.pixels.size());
  for (int y = 0; y < s; ++y) {
    for (int x = 0; x < s; ++x) {
      // inverse of the point map applied to pixel centers
      int sx = 0, sy = 0;
      switch (rot_degrees) {
        case 90: sx = y; sy = s - 1 - x; break;
        case 180: sx = s - 1 - x; sy = s - 1 - y; break;
        case 270: sx = s - 1 - y; sy = x; break;
      }
      out.at(x, y) = r.at(sx, sy);
    }
  }
  return out;
}

std::array<int, 4> draw_rotations(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::array<int, 4> out{};
  for (int& r : out) {
    r = static_cast<int>(gen() % 4) * 90;
  }
  return out;
}

namespace {

AnnotationRecord translate_annotation(const AnnotationRecord& a, double tx,
                                      double ty) {
  AnnotationRecord out = a;
  for (Vec2& p : out.quad.pts) {
    p.x += tx;
    p.y += ty;
  }
  return out;
}

}  // namespace

AnnotatedImage mosaic(const std::array<AnnotatedImage, 4>& images,
                      const MosaicSpec& spec) {
  const int s = spec.patch_size;
  if (s <= 0) {
    throw std::invalid_argument("mosaic: patch size must be positive");
  }
  int with_raster = 0;
  for (const AnnotatedImage& img : images) {
    if (img.width != s || img.height != s) {
      throw std::invalid_argument("mosaic: every input must be patch_size x patch_size");
    }
    if (img.raster.has_value()) ++with_raster;
  }
  if (with_raster != 0 && with_raster != 4) {
    throw std::invalid_argument("mosaic: rasters must be present on all inputs or none");
  }
  for (int rot : spec.quadrant_rotations) require_discrete_rotation(rot);

  AnnotatedImage out;
  out.width = 2 * s;
  out.height = 2 * s;
  if (with_raster == 4) {
    Raster canvas;
    canvas.width = 2 * s;
    canvas.height = 2 * s;
    canvas.pixels.assign(static_cast<std::size_t>(4) * s * s, 0);
    out.raster = std::move(canvas);
  }

  for (int q = 0; q < 4; ++q) {
    const int rot = spec.quadrant_rotations[q];
    const double ox = (q % 2) * s;
    const double oy = (q / 2) * s;
    for (const AnnotationRecord& rec : images[q].annotations) {
      out.annotations.push_back(
          translate_annotation(rotate_annotation(rec, rot, s), ox, oy));
    }
    if (with_raster == 4) {
      const Raster rotated = rotate_raster(*images[q].raster, rot);
      for (int y = 0; y < s; ++y) {
        for (int x = 0; x < s; ++x) {
          out.raster->at(static_cast<int>(ox) + x, static_cast<int>(oy) + y) =
              rotated.at(x, y);
        }
      }
    }
  }
  return out;
}

AnnotatedImage crop_to_patch(const AnnotatedImage& img, int patch,
                             double min_visible_ratio) {
  if (patch <= 0) {
    throw std::invalid_argument("crop_to_patch: patch size must be positive");
  }
  const double ox = 0.5 * (img.width - patch);
  const double oy = 0.5 * (img.height - patch);

  AnnotatedImage out;
  out.width = patch;
  out.height = patch;

  const double p = patch;
  const Quad frame{{Vec2{0, 0}, Vec2{p, 0}, Vec2{p, p}, Vec2{0, p}}};
  for (const AnnotationRecord& rec : img.annotations) {
    AnnotationRecord moved = translate_annotation(rec, -ox, -oy);
    const Vec2 c = quad_centroid(moved.quad);
    if (c.x < 0.0 || c.x > p || c.y < 0.0 || c.y > p) continue;

    const double area = quad_area(moved.quad);
    if (area <= 0.0) continue;
    const double visible = quad_intersection_area(moved.quad, frame) / area;
    if (visible < min_visible_ratio) continue;
    if (visible < 1.0) {
      for (Vec2& pt : moved.quad.pts) {
        pt.x = std::clamp(pt.x, 0.0, p);
        pt.y = std::clamp(pt.y, 0.0, p);
      }
      if (!quad_is_convex_ccw(moved.quad) || quad_area(moved.quad) <= 0.0) {
        continue;  // clamping collapsed the quad
      }
    }
    out.annotations.push_back(std::move(moved));
  }

  if (img.raster.has_value()) {
    Raster cropped;
    cropped.width = patch;
    cropped.height = patch;
    cropped.pixels.assign(static_cast<std::size_t>(patch) * patch, 0);
    const int ix = static_cast<int>(std::lround(ox));
    const int iy = static_cast<int>(std::lround(oy));
    for (int y = 0; y < patch; ++y) {
      const int sy = y + iy;
      if (sy < 0 || sy >= img.raster->height) continue;
      for (int x = 0; x < patch; ++x) {
        const int sx = x + ix;
        if (sx < 0 || sx >= img.raster->width) continue;
        cropped.at(x, y) = img.raster->at(sx, sy);
      }
    }
    out.raster = std::move(cropped);
  }
  return out;
}

Raster read_pgm(std::istream& in) {
  auto next_token = [&in]() -> std::string {
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return tok;
    }
    throw std::runtime_error("read_pgm: truncated header");
  };

  if (next_token() != "P5") {
    throw std::runtime_error("read_pgm: expected binary PGM (P5)");
  }
  Raster r;
  r.width = std::stoi(next_token());
  r.height = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (r.width <= 0 || r.height <= 0 || maxval != 255) {
    throw std::runtime_error("read_pgm: unsupported dimensions or maxval");
  }
  in.get();  // single whitespace after maxval
  r.pixels.resize(static_cast<std::size_t>(r.width) * r.height);
  in.read(reinterpret_cast<char*>(r.pixels.data()),
          static_cast<std::streamsize>(r.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(r.pixels.size())) {
    throw std::runtime_error("read_pgm: truncated pixel data");
  }
  return r;
}

void write_pgm(const Raster& r, std::ostream& out) {
  out << "P5\n" << r.width << ' ' << r.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(r.pixels.data()),
            static_cast<std::streamsize>(r.pixels.size()));
}

}  // namespace obbkit
