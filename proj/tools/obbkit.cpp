// obbkit command-line toolkit: property check suites, the refinement
// simulator, mosaic dataset transforms, rotated-AP evaluation, and a
// latency microbenchmark. Reports are byte-identical for a fixed seed.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "obbkit/augment.hpp"
#include "obbkit/evalio.hpp"
#include "obbkit/losses.hpp"
#include "obbkit/matching.hpp"
#include "obbkit/obb_core.hpp"
#include "obbkit/parallel.hpp"
#include "obbkit/refinement.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace obbkit;

namespace {

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_report(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + out_path);
  }
  out << content;
}

// ---------------------------------------------------------------------------
// angle-check: property suites with self-contained oracles
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  long samples = 0;
  long passes = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string witness;  // first failing input, if any

  bool ok() const { return passes == samples; }
};

double enum_delta(double a, double b) {
  const double d = a - b;
  const int span = static_cast<int>(std::ceil(std::abs(d) / kPi)) + 2;
  double best = std::numeric_limits<double>::infinity();
  for (int k = -span; k <= span; ++k) {
    const double cand = d + k * kPi;
    if (std::abs(cand) < std::abs(best)) best = cand;
  }
  return best;
}

void record(SuiteResult& suite, double deviation, const std::string& witness) {
  ++suite.samples;
  suite.max_deviation = std::max(suite.max_deviation, deviation);
  if (deviation <= suite.tolerance) {
    ++suite.passes;
  } else if (suite.witness.empty()) {
    suite.witness = witness;
  }
}

int cmd_angle_check(long samples, std::uint64_t seed, const std::string& out,
                    const std::string& format) {
  std::mt19937_64 gen(seed);

  SuiteResult wrap_suite{"wrap_range_idempotence", 0, 0, 0.0, 1e-12, ""};
  SuiteResult period_suite{"wrap_periodicity", 0, 0, 0.0, 1e-12, ""};
  SuiteResult delta_suite{"delta_shortest_path", 0, 0, 0.0, 1e-12, ""};
  SuiteResult sp_suite{"sp_l1_two_arc", 0, 0, 0.0, 1e-12, ""};
  SuiteResult grad_suite{"sp_l1_grad_finite_diff", 0, 0, 0.0, 1e-4, ""};

  char wbuf[160];
  for (long i = 0; i < samples; ++i) {
    {
      const double u = uniform(gen, -40.0, 40.0);
      const double w = wrap_pi(u);
      double dev = 0.0;
      if (!(w >= 0.0 && w < kPi)) dev = 1.0;
      dev = std::max(dev, std::abs(wrap_pi(w) - w));
      std::snprintf(wbuf, sizeof(wbuf), "u=%.17g", u);
      record(wrap_suite, dev, wbuf);
    }
    {
      const double u = uniform(gen, 0.0, kPi);
      const int k = static_cast<int>(gen() % 2001) - 1000;
      const double w = wrap_pi(u + k * kPi);
      double d = std::abs(w - wrap_pi(u));
      d = std::min(d, kPi - d);
      std::snprintf(wbuf, sizeof(wbuf), "u=%.17g k=%d", u, k);
      record(period_suite, d, wbuf);
    }
    {
      const double a = uniform(gen, -20.0, 20.0);
      const double b = uniform(gen, -20.0, 20.0);
      const double got = delta_pi(a, b);
      double dev = std::abs(std::abs(got) - std::abs(enum_delta(a, b)));
      if (!(got >= -kPi / 2 && got < kPi / 2)) dev = std::max(dev, 1.0);
      std::snprintf(wbuf, sizeof(wbuf), "a=%.17g b=%.17g", a, b);
      record(delta_suite, dev, wbuf);
    }
    {
      const double a = uniform(gen, 0.0, kPi);
      const double b = uniform(gen, 0.0, kPi);
      double d = std::fmod(std::abs(a - b), kPi);
      const double two_arc = std::min(d, kPi - d);
      double dev = std::abs(sp_l1(a, b) - two_arc);
      if (sp_l1(a, b) > std::abs(a - b) + 1e-15) dev = std::max(dev, 1.0);
      std::snprintf(wbuf, sizeof(wbuf), "a=%.17g b=%.17g", a, b);
      record(sp_suite, dev, wbuf);
    }
    {
      double a = 0.0, b = 0.0, dmag = 0.0;
      do {
        a = uniform(gen, 0.0, kPi);
        b = uniform(gen, 0.0, kPi);
        dmag = std::abs(delta_pi(a, b));
      } while (dmag < 1e-4 || std::abs(dmag - kPi / 2) < 1e-4);
      const double step = 1e-6;
      const double fd = (sp_l1(a + step, b) - sp_l1(a - step, b)) / (2 * step);
      std::snprintf(wbuf, sizeof(wbuf), "a=%.17g b=%.17g", a, b);
      record(grad_suite, std::abs(sp_l1_grad(a, b) - fd), wbuf);
    }
  }

  const std::vector<SuiteResult> suites{wrap_suite, period_suite, delta_suite,
                                        sp_suite, grad_suite};
  std::string content;
  if (format == "json") {
    json doc;
    doc["config"] = {{"command", "angle-check"}, {"samples", samples}, {"seed", seed}};
    doc["suites"] = json::array();
    for (const SuiteResult& s : suites) {
      doc["suites"].push_back({{"suite", s.name},
                               {"samples", s.samples},
                               {"passes", s.passes},
                               {"max_deviation", s.max_deviation},
                               {"tolerance", s.tolerance},
                               {"status", s.ok() ? "pass" : "fail"}});
    }
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# command=angle-check samples=" << samples << " seed=" << seed << "\n";
    csv << "suite,samples,passes,max_deviation,tolerance,status\n";
    for (const SuiteResult& s : suites) {
      csv << s.name << ',' << s.samples << ',' << s.passes << ','
          << format_double(s.max_deviation) << ',' << format_double(s.tolerance)
          << ',' << (s.ok() ? "pass" : "fail") << "\n";
    }
    content = csv.str();
  }
  write_report(out, content);

  for (const SuiteResult& s : suites) {
    if (!s.ok()) {
      std::cerr << "angle-check failure in " << s.name << ": max deviation "
                << s.max_deviation << " > " << s.tolerance << "; witness "
                << s.witness << "\n";
      return 1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// refine-sim
// ---------------------------------------------------------------------------

int cmd_refine_sim(int instances, int layers, double alpha0,
                   const std::string& decay, const std::string& activation,
                   double step, std::uint64_t seed, int workers,
                   const std::string& out, const std::string& format) {
  RefineSchedule schedule;
  schedule.alpha0 = alpha0;
  schedule.num_layers = layers;
  schedule.decay = parse_decay(decay);
  schedule.activation = parse_activation(activation);

  // seam-crossing instances: init and target on opposite sides of 0 == pi
  std::mt19937_64 gen(seed);
  std::vector<Obb5> targets;
  std::vector<Obb5> init;
  targets.reserve(instances);
  init.reserve(instances);
  for (int i = 0; i < instances; ++i) {
    targets.push_back(Obb5{0.5, 0.5, 0.2, 0.1, uniform(gen, 0.01, 0.1)});
    init.push_back(Obb5{0.5, 0.5, 0.2, 0.1, kPi - uniform(gen, 0.01, 0.1)});
  }

  const auto rows =
      simulate_refinement(targets, init, schedule, step, resolve_workers(workers));

  std::string content;
  if (format == "json") {
    json doc;
    doc["config"] = {{"command", "refine-sim"}, {"instances", instances},
                     {"layers", layers},        {"alpha0", alpha0},
                     {"decay", decay},          {"activation", activation},
                     {"step", step},            {"seed", seed}};
    doc["rows"] = json::array();
    for (const LayerReport& r : rows) {
      doc["rows"].push_back({{"layer", r.layer},
                             {"avg_error_deg", r.avg_error_deg},
                             {"avg_delta_deg", r.avg_delta_deg}});
    }
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# command=refine-sim instances=" << instances << " layers=" << layers
        << " alpha0=" << format_double(alpha0) << " decay=" << decay
        << " activation=" << activation << " step=" << format_double(step)
        << " seed=" << seed << "\n";
    csv << refine_report_csv(rows);
    content = csv.str();
  }
  write_report(out, content);

  if (schedule.decay == DecayStrategy::kExponential) {
    for (std::size_t i = 2; i < rows.size(); ++i) {
      if (!(rows[i].avg_delta_deg < rows[i - 1].avg_delta_deg)) {
        std::cerr << "refine-sim: avg_delta not strictly decreasing at layer "
                  << rows[i].layer << " (" << rows[i - 1].avg_delta_deg << " -> "
                  << rows[i].avg_delta_deg << ")\n";
        return 1;
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// mosaic
// ---------------------------------------------------------------------------

int cmd_mosaic(const std::string& input_dir, const std::string& output_dir,
               int patch, std::uint64_t seed, bool raster_mode,
               const std::string& forced_rotations, int workers,
               const std::string& format) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(input_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "mosaic: no annotation files in " << input_dir << "\n";
    return 1;
  }
  fs::create_directories(output_dir);

  std::array<int, 4> forced{};
  bool use_forced = false;
  if (!forced_rotations.empty()) {
    std::istringstream in(forced_rotations);
    std::string tok;
    int idx = 0;
    while (std::getline(in, tok, ',') && idx < 4) {
      forced[idx++] = std::stoi(tok);
    }
    if (idx != 4) {
      std::cerr << "mosaic: --rotations needs four comma-separated values\n";
      return 1;
    }
    use_forced = true;
  }

  const std::size_t n_groups = (files.size() + 3) / 4;

  // rotations drawn up front from one stream so worker count never changes them
  std::vector<std::array<int, 4>> rotations(n_groups);
  std::mt19937_64 gen(seed);
  for (std::size_t g = 0; g < n_groups; ++g) {
    if (use_forced) {
      rotations[g] = forced;
    } else {
      for (int& r : rotations[g]) r = static_cast<int>(gen() % 4) * 90;
    }
  }

  struct GroupOutcome {
    std::array<std::string, 4> inputs;
    std::string output;
    std::size_t count = 0;
    std::string error;
  };
  std::vector<GroupOutcome> outcomes(n_groups);

  parallel_for(n_groups, resolve_workers(workers), [&](std::size_t begin, std::size_t end) {
    for (std::size_t g = begin; g < end; ++g) {
      GroupOutcome& res = outcomes[g];
      try {
        std::array<AnnotatedImage, 4> inputs;
        const std::size_t base = g * 4;
        const std::size_t remain = files.size() - base;
        for (int q = 0; q < 4; ++q) {
          // trailing remainder wraps around within the final group
          const fs::path& file = files[base + (q % std::min<std::size_t>(4, remain))];
          res.inputs[q] = file.filename().string();

          std::ifstream in(file, std::ios::binary);
          std::stringstream buf;
          buf << in.rdbuf();
          AnnotatedImage img;
          try {
            img.annotations = parse_dota(buf.str());
          } catch (const ParseError& e) {
            throw std::runtime_error(file.string() + ": " + e.what());
          }
          if (raster_mode) {
            fs::path pgm = file;
            pgm.replace_extension(".pgm");
            std::ifstream pin(pgm, std::ios::binary);
            if (!pin) {
              throw std::runtime_error("missing raster " + pgm.string());
            }
            img.raster = read_pgm(pin);
            img.width = img.raster->width;
            img.height = img.raster->height;
          } else {
            img.width = patch;
            img.height = patch;
          }
          inputs[q] = crop_to_patch(img, patch);
        }
        MosaicSpec spec;
        spec.patch_size = patch;
        spec.seed = seed;
        spec.quadrant_rotations = rotations[g];
        const AnnotatedImage out = mosaic(inputs, spec);

        char name[64];
        std::snprintf(name, sizeof(name), "mosaic_%04zu", g);
        res.output = name;
        res.count = out.annotations.size();

        std::ofstream txt(fs::path(output_dir) / (std::string(name) + ".txt"),
                          std::ios::binary);
        txt << serialize_dota(out.annotations);
        if (out.raster.has_value()) {
          std::ofstream pgm(fs::path(output_dir) / (std::string(name) + ".pgm"),
                            std::ios::binary);
          write_pgm(*out.raster, pgm);
        }
      } catch (const std::exception& e) {
        res.error = e.what();
      }
    }
  });

  for (const GroupOutcome& res : outcomes) {
    if (!res.error.empty()) {
      std::cerr << "mosaic: " << res.error << "\n";
      return 1;
    }
  }

  // manifest records the drawn rotations per mosaic
  const std::string manifest_name =
      format == "json" ? "manifest.json" : "manifest.csv";
  std::string content;
  if (format == "json") {
    json doc;
    doc["config"] = {{"command", "mosaic"}, {"patch_size", patch}, {"seed", seed},
                     {"raster", raster_mode}};
    doc["mosaics"] = json::array();
    for (std::size_t g = 0; g < n_groups; ++g) {
      doc["mosaics"].push_back({{"output", outcomes[g].output},
                                {"inputs", outcomes[g].inputs},
                                {"rotations", rotations[g]},
                                {"annotations", outcomes[g].count}});
    }
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# command=mosaic patch_size=" << patch << " seed=" << seed
        << " raster=" << (raster_mode ? 1 : 0) << "\n";
    csv << "output,input0,input1,input2,input3,rot0,rot1,rot2,rot3,annotations\n";
    for (std::size_t g = 0; g < n_groups; ++g) {
      csv << outcomes[g].output;
      for (const std::string& in : outcomes[g].inputs) csv << ',' << in;
      for (int r : rotations[g]) csv << ',' << r;
      csv << ',' << outcomes[g].count << "\n";
    }
    content = csv.str();
  }
  std::ofstream manifest(fs::path(output_dir) / manifest_name, std::ios::binary);
  manifest << content;
  return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<AnnotationRecord> parse_annotations_at(const fs::path& p) {
  try {
    return parse_dota(read_file(p));
  } catch (const ParseError& e) {
    throw std::runtime_error(p.string() + ": " + e.what());
  }
}

std::vector<Detection> parse_detections_at(const fs::path& p) {
  try {
    return parse_detections(read_file(p));
  } catch (const ParseError& e) {
    throw std::runtime_error(p.string() + ": " + e.what());
  }
}

int cmd_eval(const std::string& pred_path, const std::string& gt_path,
             double iou_threshold, const std::string& policy_name,
             const std::string& out, const std::string& format) {
  const DifficultPolicy policy = policy_name == "include"
                                     ? DifficultPolicy::kInclude
                                     : DifficultPolicy::kIgnore;

  std::vector<ImageSample> images;
  if (fs::is_directory(gt_path)) {
    std::vector<fs::path> gt_files;
    for (const auto& entry : fs::directory_iterator(gt_path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        gt_files.push_back(entry.path());
      }
    }
    std::sort(gt_files.begin(), gt_files.end());
    if (gt_files.empty()) {
      std::cerr << "eval: no ground-truth files in " << gt_path << "\n";
      return 1;
    }
    for (const fs::path& gt_file : gt_files) {
      ImageSample sample;
      sample.gts = parse_annotations_at(gt_file);
      const fs::path pred_file = fs::path(pred_path) / gt_file.filename();
      if (fs::exists(pred_file)) {
        sample.dets = parse_detections_at(pred_file);
      }
      images.push_back(std::move(sample));
    }
  } else {
    ImageSample sample;
    sample.gts = parse_annotations_at(gt_path);
    if (fs::exists(pred_path)) {
      sample.dets = parse_detections_at(pred_path);
    }
    images.push_back(std::move(sample));
  }

  const ApReport report = evaluate_detections(images, iou_threshold, policy);

  std::string content;
  if (format == "json") {
    json doc;
    doc["config"] = {{"command", "eval"},
                     {"iou_threshold", iou_threshold},
                     {"policy", policy_name},
                     {"images", images.size()}};
    doc["per_category"] = json::array();
    for (const CategoryAp& c : report.per_category) {
      doc["per_category"].push_back({{"category", c.category},
                                     {"ap", c.ap},
                                     {"num_gt", c.num_gt},
                                     {"num_det", c.num_det}});
    }
    doc["mean_ap"] = report.mean_ap;
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# command=eval iou_threshold=" << format_double(iou_threshold)
        << " policy=" << policy_name << " images=" << images.size() << "\n";
    csv << "category,ap,num_gt,num_det\n";
    for (const CategoryAp& c : report.per_category) {
      csv << c.category << ',' << format_double(c.ap) << ',' << c.num_gt << ','
          << c.num_det << "\n";
    }
    csv << "mAP," << format_double(report.mean_ap) << ",,\n";
    content = csv.str();
  }
  write_report(out, content);
  return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

int cmd_bench(const std::string& kernel, int n, int warmup, int runs,
              std::uint64_t seed, const std::string& out,
              const std::string& format) {
  std::mt19937_64 gen(seed);
  auto random_quad = [&gen]() {
    return obb_to_quad(Obb5{uniform(gen, 0, 100), uniform(gen, 0, 100),
                            uniform(gen, 1, 20), uniform(gen, 1, 20),
                            uniform(gen, 0.0, kPi)});
  };

  // one iteration processes a batch of n items; the checksum pins purity
  std::function<double()> iteration;
  if (kernel == "iou") {
    std::vector<std::pair<Quad, Quad>> pairs(n);
    for (auto& p : pairs) p = {random_quad(), random_quad()};
    iteration = [pairs]() {
      double acc = 0.0;
      for (const auto& [a, b] : pairs) acc += rotated_iou(a, b);
      return acc;
    };
  } else if (kernel == "hausdorff") {
    std::vector<std::pair<Quad, Quad>> pairs(n);
    for (auto& p : pairs) p = {random_quad(), random_quad()};
    iteration = [pairs]() {
      double acc = 0.0;
      for (const auto& [a, b] : pairs) acc += hausdorff_cost(a, b, 8);
      return acc;
    };
  } else if (kernel == "hungarian") {
    CostMatrix c;
    c.n_preds = n;
    c.n_targets = n;
    c.values.resize(static_cast<std::size_t>(n) * n);
    for (double& v : c.values) v = uniform(gen, 0.0, 10.0);
    iteration = [c]() { return hungarian(c).total_cost; };
  } else if (kernel == "mosaic") {
    const int s = 256;
    std::array<AnnotatedImage, 4> inputs;
    for (auto& img : inputs) {
      img.width = s;
      img.height = s;
      for (int i = 0; i < n; ++i) {
        img.annotations.push_back(AnnotationRecord{
            obb_to_quad(Obb5{uniform(gen, 40, 216), uniform(gen, 40, 216),
                             uniform(gen, 4, 30), uniform(gen, 4, 30),
                             uniform(gen, 0.0, kPi)}),
            "plane", 0});
      }
    }
    MosaicSpec spec;
    spec.patch_size = s;
    spec.quadrant_rotations = {0, 90, 180, 270};
    iteration = [inputs, spec]() {
      const AnnotatedImage out = mosaic(inputs, spec);
      double acc = 0.0;
      for (const AnnotationRecord& rec : out.annotations) {
        acc += rec.quad.pts[0].x + rec.quad.pts[2].y;
      }
      return acc;
    };
  } else if (kernel == "sp_l1") {
    std::vector<std::pair<double, double>> pairs(n);
    for (auto& p : pairs) p = {uniform(gen, 0.0, kPi), uniform(gen, 0.0, kPi)};
    iteration = [pairs]() {
      double acc = 0.0;
      for (const auto& [a, b] : pairs) acc += sp_l1(a, b);
      return acc;
    };
  } else {
    std::cerr << "bench: unknown kernel \"" << kernel << "\"\n";
    return 1;
  }

  double checksum = 0.0;
  for (int i = 0; i < warmup; ++i) checksum = iteration();

  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < runs; ++i) checksum = iteration();
  const auto stop = std::chrono::steady_clock::now();

  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  const double latency_ms = elapsed_ms / runs;
  const double fps = 1000.0 / latency_ms;

  char checksum_buf[64];
  std::snprintf(checksum_buf, sizeof(checksum_buf), "%.17g", checksum);

  std::string content;
  if (format == "json") {
    json doc;
    doc["config"] = {{"command", "bench"}, {"kernel", kernel}, {"n", n},
                     {"warmup", warmup},   {"runs", runs},     {"seed", seed}};
    doc["result"] = {{"checksum", std::string(checksum_buf)}};
    doc["timing"] = {{"elapsed_ms", elapsed_ms},
                     {"latency_ms", latency_ms},
                     {"fps", fps}};
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "# command=bench kernel=" << kernel << " n=" << n
        << " warmup=" << warmup << " runs=" << runs << " seed=" << seed << "\n";
    csv << "kernel,n,warmup,runs,latency_ms,fps,checksum\n";
    csv << kernel << ',' << n << ',' << warmup << ',' << runs << ','
        << format_double(latency_ms) << ',' << format_double(fps) << ','
        << checksum_buf << "\n";
    content = csv.str();
  }
  write_report(out, content);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"obbkit: oriented-box geometry, matching, and evaluation toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
  int workers = 0;

  auto add_common = [&](CLI::App* cmd, bool with_workers = false) {
    cmd->add_option("--seed", seed, "random seed")->capture_default_str();
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    if (with_workers) {
      cmd->add_option("--workers", workers,
                      "worker threads (0 = auto; OBBKIT_WORKERS overrides)")
          ->capture_default_str();
    }
  };

  // angle-check
  long samples = 1000;
  CLI::App* angle = app.add_subcommand(
      "angle-check", "run the periodic-angle property suites against oracles");
  angle->add_option("--samples", samples, "random points per suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(angle);

  // refine-sim
  int instances = 1000;
  int layers = 4;
  double alpha0 = 1.5;
  std::string decay = "exponential";
  std::string activation = "tanh";
  double step = 0.15;
  CLI::App* refine = app.add_subcommand(
      "refine-sim", "layer-wise angle refinement simulator on seam-crossing instances");
  refine->add_option("--instances,--n-instances", instances, "number of box pairs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  refine->add_option("--layers", layers, "decoder layers")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  refine->add_option("--alpha0", alpha0, "decay base")->capture_default_str();
  refine->add_option("--decay", decay, "decay strategy")
      ->check(CLI::IsMember({"none", "linear", "exponential", "power"}))
      ->capture_default_str();
  refine->add_option("--activation", activation, "bounding activation")
      ->check(CLI::IsMember({"linear", "tanh", "sin", "sigmoid"}))
      ->capture_default_str();
  refine->add_option("--step", step, "raw offset magnitude per layer")
      ->capture_default_str();
  add_common(refine, true);

  // mosaic
  std::string input_dir, output_dir;
  int patch = 1024;
  bool raster_mode = false;
  std::string forced_rotations;
  CLI::App* mos = app.add_subcommand(
      "mosaic", "compose groups of four annotation files into rotated mosaics");
  mos->add_option("--input,--input-dir", input_dir, "input directory")->required();
  mos->add_option("--output,--output-dir", output_dir, "output directory")->required();
  mos->add_option("--patch-size", patch, "quadrant size in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mos->add_flag("--raster", raster_mode, "also transform .pgm rasters");
  mos->add_option("--rotations", forced_rotations,
                  "force quadrant rotations, e.g. 0,90,180,270");
  add_common(mos, true);

  // eval
  std::string pred_path, gt_path;
  double iou_threshold = 0.5;
  std::string policy = "ignore";
  CLI::App* eval = app.add_subcommand(
      "eval", "rotated-box average precision against DOTA-format ground truth");
  eval->add_option("--pred,--pred-path", pred_path, "prediction file or directory")->required();
  eval->add_option("--gt,--gt-path", gt_path, "ground-truth file or directory")->required();
  eval->add_option("--iou,--iou-threshold", iou_threshold, "IoU threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  eval->add_option("--policy", policy, "difficult-GT policy")
      ->check(CLI::IsMember({"ignore", "include"}))
      ->capture_default_str();
  add_common(eval);

  // bench
  std::string kernel = "iou";
  int n = 100;
  int warmup = 50;
  int runs = 1000;
  CLI::App* bench = app.add_subcommand(
      "bench", "latency microbenchmark: warm-up, timed back-to-back runs, FPS");
  bench->add_option("--kernel", kernel, "kernel under test")
      ->check(CLI::IsMember({"iou", "hausdorff", "hungarian", "mosaic", "sp_l1"}))
      ->capture_default_str();
  bench->add_option("--n", n, "batch size per iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--warmup", warmup, "untimed warm-up iterations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench->add_option("--runs", runs, "timed iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (angle->parsed()) {
      return cmd_angle_check(samples, seed, out_path, format);
    }
    if (refine->parsed()) {
      return cmd_refine_sim(instances, layers, alpha0, decay, activation, step,
                            seed, workers, out_path, format);
    }
    if (mos->parsed()) {
      return cmd_mosaic(input_dir, output_dir, patch, seed, raster_mode,
                        forced_rotations, workers, format);
    }
    if (eval->parsed()) {
      return cmd_eval(pred_path, gt_path, iou_threshold, policy, out_path, format);
    }
    if (bench->parsed()) {
      return cmd_bench(kernel, n, warmup, runs, seed, out_path, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "obbkit: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
