#include "obbkit/evalio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace obbkit {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double parse_number(std::string_view tok, int line_no, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    throw ParseError(line_no, std::string("expected numeric ") + what + ", got \"" +
                                  std::string(tok) + "\"");
  }
  return value;
}

Quad quad_from_tokens(const std::vector<std::string_view>& tokens, int line_no) {
  Quad q;
  for (int c = 0; c < 4; ++c) {
    q.pts[c].x = parse_number(tokens[2 * c], line_no, "coordinate");
    q.pts[c].y = parse_number(tokens[2 * c + 1], line_no, "coordinate");
  }
  // normalize to CCW corner order
  if (quad_signed_area(q) < 0.0) {
    std::swap(q.pts[1], q.pts[3]);
  }
  return q;
}

bool is_header_line(const std::vector<std::string_view>& tokens) {
  if (tokens.empty()) return false;
  return tokens[0].starts_with("imagesource") || tokens[0].starts_with("gsd");
}

/// "100" for integral values, "100.5" otherwise; coordinates are rounded to
/// a tenth, matching the DOTA file convention.
std::string format_coord(double v) {
  const long long tenths = std::llround(v * 10.0);
  const long long whole = tenths / 10;
  const long long frac = std::llabs(tenths % 10);
  char buf[48];
  if (frac == 0) {
    std::snprintf(buf, sizeof(buf), "%lld", whole);
  } else if (tenths < 0 && whole == 0) {
    std::snprintf(buf, sizeof(buf), "-0.%lld", frac);
  } else {
    std::snprintf(buf, sizeof(buf), "%lld.%lld", whole, frac);
  }
  return buf;
}

void require_category(const std::string& category) {
  if (category.empty()) {
    throw std::invalid_argument("serialize: empty category");
  }
  for (char ch : category) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      throw std::invalid_argument("serialize: category contains whitespace");
    }
  }
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace

std::vector<AnnotationRecord> parse_dota(std::string_view text) {
  std::vector<AnnotationRecord> records;
  for_each_line(text, [&](std::string_view line, int line_no) {
    const std::vector<std::string_view> tokens = split_ws(line);
    if (tokens.empty() || is_header_line(tokens)) return;
    if (tokens.size() != 10) {
      throw ParseError(line_no, "expected 10 tokens (8 coordinates, category, difficulty), got " +
                                    std::to_string(tokens.size()));
    }
    AnnotationRecord rec;
    rec.quad = quad_from_tokens(tokens, line_no);
    rec.category = std::string(tokens[8]);
    if (tokens[9] == "0") {
      rec.difficulty = 0;
    } else if (tokens[9] == "1") {
      rec.difficulty = 1;
    } else {
      throw ParseError(line_no, "difficulty must be 0 or 1, got \"" +
                                    std::string(tokens[9]) + "\"");
    }
    records.push_back(std::move(rec));
  });
  return records;
}

std::string serialize_dota(const std::vector<AnnotationRecord>& records) {
  std::string out;
  for (const AnnotationRecord& rec : records) {
    require_category(rec.category);
    for (const Vec2& p : rec.quad.pts) {
      out += format_coord(p.x);
      out += ' ';
      out += format_coord(p.y);
      out += ' ';
    }
    out += rec.category;
    out += ' ';
    out += rec.difficulty == 0 ? '0' : '1';
    out += '\n';
  }
  return out;
}

std::vector<Detection> parse_detections(std::string_view text) {
  std::vector<Detection> dets;
  for_each_line(text, [&](std::string_view line, int line_no) {
    const std::vector<std::string_view> tokens = split_ws(line);
    if (tokens.empty()) return;
    if (tokens.size() != 10) {
      throw ParseError(line_no, "expected 10 tokens (category, score, 8 coordinates), got " +
                                    std::to_string(tokens.size()));
    }
    Detection det;
    det.category = std::string(tokens[0]);
    det.score = parse_number(tokens[1], line_no, "score");
    if (!(det.score >= 0.0 && det.score <= 1.0)) {
      throw ParseError(line_no, "score outside [0, 1]");
    }
    std::vector<std::string_view> coords(tokens.begin() + 2, tokens.end());
    det.quad = quad_from_tokens(coords, line_no);
    dets.push_back(std::move(det));
  });
  return dets;
}

std::vector<Detection> parse_detections_for_category(std::string_view text,
                                                     const std::string& category) {
  std::vector<Detection> dets;
  for_each_line(text, [&](std::string_view line, int line_no) {
    const std::vector<std::string_view> tokens = split_ws(line);
    if (tokens.empty()) return;
    if (tokens.size() != 9) {
      throw ParseError(line_no, "expected 9 tokens (score, 8 coordinates), got " +
                                    std::to_string(tokens.size()));
    }
    Detection det;
    det.category = category;
    det.score = parse_number(tokens[0], line_no, "score");
    if (!(det.score >= 0.0 && det.score <= 1.0)) {
      throw ParseError(line_no, "score outside [0, 1]");
    }
    std::vector<std::string_view> coords(tokens.begin() + 1, tokens.end());
    det.quad = quad_from_tokens(coords, line_no);
    dets.push_back(std::move(det));
  });
  return dets;
}

std::string serialize_detections(const std::vector<Detection>& dets) {
  std::string out;
  char buf[48];
  for (const Detection& det : dets) {
    require_category(det.category);
    out += det.category;
    std::snprintf(buf, sizeof(buf), " %.6g", det.score);
    out += buf;
    for (const Vec2& p : det.quad.pts) {
      out += ' ';
      out += format_coord(p.x);
      out += ' ';
      out += format_coord(p.y);
    }
    out += '\n';
  }
  return out;
}

namespace {

constexpr double kHalfPlaneEps = 1e-9;

double polygon_area(const std::vector<Vec2>& poly) {
  if (poly.size() < 3) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    acc += a.x * b.y - b.x * a.y;
  }
  return std::abs(acc) * 0.5;
}

// Clip a convex polygon by the half-plane left of edge a->b (inclusive).
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, const Vec2& a,
                                  const Vec2& b) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 2);
  const Vec2 edge = b - a;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& cur = poly[i];
    const Vec2& nxt = poly[(i + 1) % poly.size()];
    const double dc = cross(edge, cur - a);
    const double dn = cross(edge, nxt - a);
    const bool cur_in = dc >= -kHalfPlaneEps;
    const bool nxt_in = dn >= -kHalfPlaneEps;
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) {
      const double t = dc / (dc - dn);
      out.push_back(cur + (nxt - cur) * t);
    }
  }
  return out;
}

}  // namespace

double quad_intersection_area(const Quad& a, const Quad& b) {
  std::vector<Vec2> poly(a.pts.begin(), a.pts.end());
  for (int i = 0; i < 4 && !poly.empty(); ++i) {
    poly = clip_half_plane(poly, b.pts[i], b.pts[(i + 1) % 4]);
  }
  return polygon_area(poly);
}

double rotated_iou(const Quad& a, const Quad& b, bool* degenerate) {
  const double area_a = quad_area(a);
  const double area_b = quad_area(b);
  if (degenerate != nullptr) *degenerate = false;
  if (area_a <= 1e-14 || area_b <= 1e-14) {
    if (degenerate != nullptr) *degenerate = true;
    return 0.0;
  }
  const double inter = quad_intersection_area(a, b);
  const double uni = area_a + area_b - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

namespace {

std::vector<std::size_t> score_order(const std::vector<Detection>& dets) {
  std::vector<std::size_t> order(dets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dets[a].score > dets[b].score;  // stable: ties keep input order
  });
  return order;
}

}  // namespace

std::vector<Detection> rotated_nms(const std::vector<Detection>& dets,
                                   double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw std::invalid_argument("rotated_nms: threshold outside (0, 1)");
  }
  const std::vector<std::size_t> order = score_order(dets);
  std::vector<Detection> kept;
  for (std::size_t idx : order) {
    bool suppressed = false;
    for (const Detection& k : kept) {
      if (k.category != dets[idx].category) continue;
      if (rotated_iou(k.quad, dets[idx].quad) > iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(dets[idx]);
  }
  return kept;
}

namespace {

struct FlaggedGt {
  const AnnotationRecord* rec;
  bool difficult;
  bool matched = false;
};

struct CategoryPool {
  // per image: ground truth slots for this category
  std::map<std::size_t, std::vector<FlaggedGt>> gts_by_image;
  // (score, image, input order, quad)
  struct Det {
    double score;
    std::size_t image;
    std::size_t order;
    const Quad* quad;
  };
  std::vector<Det> dets;
  int npos = 0;
};

double area_under_pr(const std::vector<double>& recall,
                     const std::vector<double>& precision) {
  // envelope from the right, then sum over recall increments
  std::vector<double> mrec;
  std::vector<double> mpre;
  mrec.reserve(recall.size() + 2);
  mpre.reserve(precision.size() + 2);
  mrec.push_back(0.0);
  mpre.push_back(0.0);
  for (std::size_t i = 0; i < recall.size(); ++i) {
    mrec.push_back(recall[i]);
    mpre.push_back(precision[i]);
  }
  mrec.push_back(1.0);
  mpre.push_back(0.0);
  for (std::size_t i = mpre.size() - 1; i-- > 0;) {
    mpre[i] = std::max(mpre[i], mpre[i + 1]);
  }
  double ap = 0.0;
  for (std::size_t i = 0; i + 1 < mrec.size(); ++i) {
    if (mrec[i + 1] != mrec[i]) {
      ap += (mrec[i + 1] - mrec[i]) * mpre[i + 1];
    }
  }
  return ap;
}

}  // namespace

ApReport evaluate_detections(const std::vector<ImageSample>& images,
                             double iou_threshold, DifficultPolicy policy) {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw std::invalid_argument("evaluate_detections: threshold outside (0, 1)");
  }

  std::map<std::string, CategoryPool> pools;
  for (std::size_t img = 0; img < images.size(); ++img) {
    for (const AnnotationRecord& gt : images[img].gts) {
      CategoryPool& pool = pools[gt.category];
      const bool difficult =
          policy == DifficultPolicy::kIgnore && gt.difficulty == 1;
      pool.gts_by_image[img].push_back(FlaggedGt{&gt, difficult});
      if (!difficult) ++pool.npos;
    }
    for (std::size_t d = 0; d < images[img].dets.size(); ++d) {
      const Detection& det = images[img].dets[d];
      pools[det.category].dets.push_back(
          CategoryPool::Det{det.score, img, d, &det.quad});
    }
  }

  ApReport report;
  double ap_sum = 0.0;
  for (auto& [category, pool] : pools) {
    std::stable_sort(pool.dets.begin(), pool.dets.end(),
                     [](const CategoryPool::Det& a, const CategoryPool::Det& b) {
                       if (a.score != b.score) return a.score > b.score;
                       if (a.image != b.image) return a.image < b.image;
                       return a.order < b.order;
                     });

    std::vector<double> recall;
    std::vector<double> precision;
    int tp = 0;
    int fp = 0;
    for (const CategoryPool::Det& det : pool.dets) {
      FlaggedGt* best = nullptr;
      double best_iou = 0.0;
      auto it = pool.gts_by_image.find(det.image);
      if (it != pool.gts_by_image.end()) {
        for (FlaggedGt& gt : it->second) {
          if (gt.matched) continue;
          const double iou = rotated_iou(*det.quad, gt.rec->quad);
          if (iou >= iou_threshold && iou > best_iou) {
            best_iou = iou;
            best = &gt;
          }
        }
      }
      if (best != nullptr && best->difficult) {
        continue;  // matched a difficult GT: neither TP nor FP, GT not consumed
      }
      if (best != nullptr) {
        best->matched = true;
        ++tp;
      } else {
        ++fp;
      }
      recall.push_back(pool.npos > 0 ? static_cast<double>(tp) / pool.npos : 0.0);
      precision.push_back(static_cast<double>(tp) / (tp + fp));
    }

    CategoryAp entry;
    entry.category = category;
    entry.num_gt = pool.npos;
    entry.num_det = static_cast<int>(pool.dets.size());
    entry.ap = pool.npos > 0 ? area_under_pr(recall, precision) : 0.0;
    ap_sum += entry.ap;
    report.per_category.push_back(std::move(entry));
  }

  report.mean_ap =
      report.per_category.empty() ? 0.0 : ap_sum / report.per_category.size();
  return report;
}

ApReport average_precision(const std::vector<Detection>& dets,
                           const std::vector<AnnotationRecord>& gts,
                           double iou_threshold, DifficultPolicy policy) {
  std::vector<ImageSample> images(1);
  images[0].gts = gts;
  images[0].dets = dets;
  return evaluate_detections(images, iou_threshold, policy);
}

}  // namespace obbkit
