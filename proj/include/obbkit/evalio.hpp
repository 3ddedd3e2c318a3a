#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "obbkit/obb_core.hpp"

namespace obbkit {

/// DOTA-format ground-truth unit: a corner quad, a category token, and a
/// binary difficulty flag.
struct AnnotationRecord {
  Quad quad{};
  std::string category;
  int difficulty = 0;
};

struct Detection {
  Quad quad{};
  std::string category;
  double score = 0.0;  // [0, 1]
};

/// Parse failure carrying the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses DOTA annotation text: one object per line,
///   "x1 y1 x2 y2 x3 y3 x4 y4 category difficulty"
/// Lines starting with "imagesource" or "gsd" and blank lines are skipped.
/// Corner order is normalized to CCW (files written clockwise parse fine).
/// Throws ParseError with the line number on malformed lines.
std::vector<AnnotationRecord> parse_dota(std::string_view text);

/// Canonical serialization: coordinates with up to one decimal place
/// (integral values printed bare), single spaces, LF line endings.
/// parse -> serialize is a fixpoint on canonically formatted files.
std::string serialize_dota(const std::vector<AnnotationRecord>& records);

/// Merged detection file: "category score x1 y1 ... y4" per line.
std::vector<Detection> parse_detections(std::string_view text);

/// DOTA submission-style per-category file: "score x1 y1 ... y4" per line,
/// with the category supplied by the caller (typically from the filename).
std::vector<Detection> parse_detections_for_category(std::string_view text,
                                                     const std::string& category);

std::string serialize_detections(const std::vector<Detection>& dets);

/// Intersection area of two convex quads by Sutherland-Hodgman clipping,
/// with an inclusive 1e-9 epsilon on the half-plane test.
double quad_intersection_area(const Quad& a, const Quad& b);

/// Rotated IoU: clip intersection area over the shoelace union. Degenerate
/// zero-area inputs yield 0; the flag reports degeneracy when provided.
double rotated_iou(const Quad& a, const Quad& b, bool* degenerate = nullptr);

/// Greedy per-category suppression in descending score order; ties broken by
/// input index. A detection is suppressed when its IoU with an already kept
/// same-category detection exceeds the threshold. Kept detections are
/// returned in processing order. Threshold must lie in (0, 1).
std::vector<Detection> rotated_nms(const std::vector<Detection>& dets,
                                   double iou_threshold);

enum class DifficultPolicy {
  kIgnore,   // difficult GTs neither count as FNs nor consume matches
  kInclude,  // difficult GTs treated like any other
};

struct CategoryAp {
  std::string category;
  double ap = 0.0;
  int num_gt = 0;   // GTs counted toward recall
  int num_det = 0;
};

struct ApReport {
  std::vector<CategoryAp> per_category;
  double mean_ap = 0.0;
};

/// One evaluation unit: detections only match ground truth from the same
/// sample (image).
struct ImageSample {
  std::vector<AnnotationRecord> gts;
  std::vector<Detection> dets;
};

/// Average precision over a set of images. Detections are sorted by score
/// (ties by image then input order) and matched greedily to the highest-IoU
/// unmatched same-category GT with IoU >= threshold. AP is the area under
/// the monotone-interpolated precision-recall curve over all recall points
/// (no 11-point sampling). Categories with detections but no ground truth
/// score 0. The mean runs over every category present on either side.
ApReport evaluate_detections(const std::vector<ImageSample>& images,
                             double iou_threshold,
                             DifficultPolicy policy = DifficultPolicy::kIgnore);

/// Single-pool convenience overload: one implicit image.
ApReport average_precision(const std::vector<Detection>& dets,
                           const std::vector<AnnotationRecord>& gts,
                           double iou_threshold,
                           DifficultPolicy policy = DifficultPolicy::kIgnore);

}  // namespace obbkit
