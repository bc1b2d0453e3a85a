#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperchord/cli_io.hpp"
#include "hyperchord/experiments.hpp"

namespace hc = hyperchord;
using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw hc::validation_error("cannot write " + out_path);
  out << j.dump(2) << '\n';
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SampleArgs {
  std::string generator = "sphere";
  int dimension = 3;
  double radius = 1.0;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double cap_fraction = 0.05;
  double informational_fraction = 0.2;
  int subset_dimension = 2;
  std::size_t subset_count = 0;
  std::string superset = "sphere";
  std::string out;
  std::string labels_out;
};

int run_sample(const SampleArgs& a) {
  const hc::RandomSeed seed{a.seed, a.stream};
  hc::PointSet set;
  if (a.generator == "sphere") {
    set = hc::sample_sphere_uniform(a.dimension, a.radius, a.count, seed);
  } else if (a.generator == "hemisphere") {
    set = hc::sample_hemisphere_uniform(a.dimension, a.radius, a.count, seed);
  } else if (a.generator == "faulty-cube") {
    set = hc::sample_faulty_cube_projection(a.dimension, a.radius, a.count, seed);
  } else if (a.generator == "cap-mixture") {
    set = hc::sample_cap_mixture(a.dimension, a.radius, a.count, a.cap_fraction,
                                 a.informational_fraction, seed);
  } else if (a.generator == "embedded") {
    set = hc::sample_embedded_uniform(a.subset_dimension, a.dimension, a.radius,
                                      a.subset_count, a.count,
                                      hc::geometry_from_name(a.superset), seed);
  } else {
    throw hc::validation_error("unknown generator: " + a.generator);
  }

  const hc::RunManifest manifest = hc::make_manifest(
      "sample", {{"generator", a.generator},
                 {"dimension", std::to_string(a.dimension)},
                 {"radius", fmt(a.radius)},
                 {"count", std::to_string(a.count)},
                 {"seed", std::to_string(a.seed)},
                 {"stream", std::to_string(a.stream)},
                 {"cap_fraction", fmt(a.cap_fraction)},
                 {"informational_fraction", fmt(a.informational_fraction)},
                 {"subset_dimension", std::to_string(a.subset_dimension)},
                 {"subset_count", std::to_string(a.subset_count)},
                 {"superset", a.superset}});
  hc::write_points_csv(a.out, set, manifest);
  if (!a.labels_out.empty()) hc::write_labels(a.labels_out, set.labels);
  std::cerr << "wrote " << set.size() << " points to " << a.out << '\n';
  return 0;
}

struct AnalyzeArgs {
  std::string points;
  std::string format = "csv";
  double min_size = 0.0;
  std::string geometry = "sphere";
  std::string mode = "all-pairs";
  std::size_t bins = 200;
  std::string calibration;
  std::size_t replicates = 200;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

hc::PointFormat format_from_name(const std::string& name) {
  if (name == "csv") return hc::PointFormat::csv;
  if (name == "latlon-csv") return hc::PointFormat::latlon_csv;
  throw hc::validation_error("unknown points format: " + name);
}

int run_analyze(const AnalyzeArgs& a) {
  const hc::PointSet set = hc::read_points(a.points, format_from_name(a.format), a.min_size);
  const hc::Geometry geometry = hc::geometry_from_name(a.geometry);

  hc::CalibrationTable table;
  if (!a.calibration.empty()) {
    std::ifstream in(a.calibration);
    if (!in) throw hc::validation_error("cannot open " + a.calibration);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw hc::validation_error(std::string("bad calibration JSON: ") + e.what());
    }
    table = hc::calibration_from_json(j);
  } else {
    table = hc::calibrate_threshold(set.dimension, set.radius, set.size(), geometry,
                                    hc::mode_from_name(a.mode), a.bins, a.replicates,
                                    a.alpha, {a.seed, a.stream});
  }

  const hc::UniformityReport report = hc::test_uniformity(set, geometry, table);
  const hc::RunManifest manifest = hc::make_manifest(
      "analyze", {{"points", a.points},
                  {"format", a.format},
                  {"min_size", fmt(a.min_size)},
                  {"geometry", a.geometry},
                  {"mode", hc::mode_name(table.mode)},
                  {"bins", std::to_string(table.bin_count)},
                  {"alpha", fmt(table.alpha_percent)},
                  {"seed", std::to_string(table.seed.seed)},
                  {"stream", std::to_string(table.seed.stream_id)},
                  {"calibration_file", a.calibration}});
  emit(hc::report_json(report, table, manifest), a.out);
  return report.non_uniform ? 0 : 0;
}

struct CalibrateArgs {
  int dimension = 3;
  double radius = 1.0;
  std::size_t target_size = 1000;
  std::string geometry = "sphere";
  std::string mode = "all-pairs";
  std::size_t bins = 200;
  std::size_t replicates = 200;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

int run_calibrate(const CalibrateArgs& a) {
  const hc::CalibrationTable table = hc::calibrate_threshold(
      a.dimension, a.radius, a.target_size, hc::geometry_from_name(a.geometry),
      hc::mode_from_name(a.mode), a.bins, a.replicates, a.alpha, {a.seed, a.stream});
  json j = hc::to_json(table);
  j["manifest"] = hc::to_json(hc::make_manifest(
      "calibrate", {{"dimension", std::to_string(a.dimension)},
                    {"radius", fmt(a.radius)},
                    {"target_size", std::to_string(a.target_size)},
                    {"geometry", a.geometry},
                    {"mode", a.mode},
                    {"bins", std::to_string(a.bins)},
                    {"replicates", std::to_string(a.replicates)},
                    {"alpha", fmt(a.alpha)},
                    {"seed", std::to_string(a.seed)},
                    {"stream", std::to_string(a.stream)}}));
  emit(j, a.out);
  return 0;
}

struct ExtractArgs {
  std::string points;
  std::string format = "csv";
  std::size_t repetitions = 100;
  std::size_t bins = 200;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

int run_extract(const ExtractArgs& a) {
  const hc::PointSet set = hc::read_points(a.points, format_from_name(a.format));
  const hc::ExtractionResult result =
      hc::extract_uniform_subset(set, a.repetitions, {a.seed, a.stream}, a.bins);
  const hc::RunManifest manifest = hc::make_manifest(
      "extract", {{"points", a.points},
                  {"repetitions", std::to_string(a.repetitions)},
                  {"bins", std::to_string(a.bins)},
                  {"seed", std::to_string(a.seed)},
                  {"stream", std::to_string(a.stream)}});
  emit(hc::extraction_json(result, manifest), a.out);
  return 0;
}

struct DetectArgs {
  std::string points;
  std::string format = "csv";
  std::string labels;
  int subset_dimension = 2;
  std::size_t subset_count = 0;
  std::size_t bins = 64;
  std::string out;
};

int run_detect(const DetectArgs& a) {
  hc::PointSet set = hc::read_points(a.points, format_from_name(a.format));
  if (!a.labels.empty()) {
    set.labels = hc::read_labels(a.labels);
    if (set.labels.size() != set.size())
      throw hc::validation_error("label count does not match point count");
  }
  const hc::DetectionResult result =
      hc::detect_embedded_subset(set, a.subset_dimension, a.subset_count, a.bins);
  const hc::RunManifest manifest = hc::make_manifest(
      "detect", {{"points", a.points},
                 {"labels", a.labels},
                 {"subset_dimension", std::to_string(a.subset_dimension)},
                 {"subset_count", std::to_string(a.subset_count)},
                 {"bins", std::to_string(a.bins)}});
  emit(hc::detection_json(result, manifest), a.out);
  return 0;
}

struct CurvesArgs {
  int dimension = 3;
  double radius = 1.0;
  std::string geometry = "sphere";
  std::size_t samples = 512;
  double tolerance = 0.0;
  std::size_t budget = 0;
  std::string out;
};

int run_curves(const CurvesArgs& a) {
  const hc::RunManifest manifest = hc::make_manifest(
      "curves", {{"dimension", std::to_string(a.dimension)},
                 {"radius", fmt(a.radius)},
                 {"geometry", a.geometry},
                 {"samples", std::to_string(a.samples)},
                 {"tolerance", fmt(a.tolerance)},
                 {"quadrature_budget", std::to_string(a.budget)}});
  hc::QuadratureSpec spec = hc::default_hemisphere_quadrature();
  if (a.tolerance > 0.0) spec.absolute_tolerance = a.tolerance;
  if (a.budget > 0) spec.max_subdivisions = a.budget;
  hc::write_distribution_curves_csv(a.out, a.dimension, a.radius,
                                    hc::geometry_from_name(a.geometry), a.samples, manifest,
                                    spec);
  std::cerr << "wrote " << a.samples << " samples to " << a.out << '\n';
  return 0;
}

struct ReproduceArgs {
  std::string study = "faulty-gen";
  bool full = false;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
};

int run_reproduce(const ReproduceArgs& a) {
  const hc::RandomSeed seed{a.seed, a.stream};
  const hc::RunManifest manifest = hc::make_manifest(
      "reproduce", {{"study", a.study},
                    {"scale", a.full ? "full" : "scaled"},
                    {"seed", std::to_string(a.seed)},
                    {"stream", std::to_string(a.stream)}});
  json j;
  if (a.study == "faulty-gen") {
    const std::size_t set_size = a.full ? 10000 : 4000;
    const std::size_t seeds = a.full ? 101 : 51;
    const hc::FaultyGeneratorStudy study =
        hc::run_faulty_generator_study(set_size, seeds, 200, 200, seed);
    j = {{"set_size", study.set_size},
         {"seed_count", study.seed_count},
         {"bin_count", study.bin_count},
         {"median_faulty_l1", study.median_faulty_l1},
         {"half_size_median_l1", study.half_size_median_l1},
         {"adjacent_ratio", study.adjacent_ratio},
         {"ratio_flags_non_uniform", study.ratio_flags_non_uniform},
         {"threshold", study.threshold},
         {"median_exceeds_threshold", study.median_exceeds_threshold},
         {"non_uniform_lower_bound", study.non_uniform_lower_bound},
         {"calibration", hc::to_json(study.calibration)}};
  } else if (a.study == "cap-mixture") {
    const std::size_t set_size = a.full ? 10000 : 2500;
    const std::size_t runs = 10;
    const std::size_t reps = 100;
    j["rows"] = json::array();
    for (double x : {0.10, 0.15, 0.20}) {
      const hc::CapMixtureStudy row =
          hc::run_cap_mixture_study(6, 0.05, x, set_size, runs, reps, seed.derive(
              static_cast<std::uint64_t>(x * 1000)));
      j["rows"].push_back({{"dimension", row.dimension},
                           {"cap_fraction", row.cap_fraction},
                           {"informational_fraction", row.informational_fraction},
                           {"set_size", row.set_size},
                           {"runs", row.runs},
                           {"repetitions", row.repetitions},
                           {"mean_precision", row.mean_precision},
                           {"mean_recall", row.mean_recall}});
    }
  } else if (a.study == "embedded") {
    const std::size_t set_size = a.full ? 10000 : 2000;
    const std::size_t sims = 10;
    j["rows"] = json::array();
    const std::pair<int, int> dims[] = {{2, 6}, {2, 9}, {8, 9}};
    const hc::Geometry geoms[] = {hc::Geometry::sphere, hc::Geometry::hemisphere};
    std::uint64_t salt = 0;
    for (const auto& [nsub, n] : dims) {
      for (hc::Geometry g : geoms) {
        const hc::EmbeddedDetectionStudy row = hc::run_embedded_detection_study(
            nsub, n, g, 0.5, set_size, sims, seed.derive(++salt));
        j["rows"].push_back({{"subset_dimension", row.subset_dimension},
                             {"dimension", row.dimension},
                             {"superset_geometry", hc::geometry_name(row.superset_geometry)},
                             {"subset_ratio", row.subset_ratio},
                             {"set_size", row.set_size},
                             {"simulations", row.simulations},
                             {"mean_detection_rate", row.mean_detection_rate}});
      }
    }
  } else {
    throw hc::validation_error("unknown study: " + a.study);
  }
  j["manifest"] = hc::to_json(manifest);
  emit(j, a.out);
  return 0;
}

json error_json(const std::string& type, const std::string& message) {
  return {{"error", {{"type", type}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chord-length statistics and uniformity testing for hyperspheres"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* cmd_sample = app.add_subcommand("sample", "Generate a point set");
  cmd_sample->add_option("--generator", sample.generator,
                         "sphere|hemisphere|faulty-cube|cap-mixture|embedded");
  cmd_sample->add_option("--dimension,-n", sample.dimension, "Ambient dimension");
  cmd_sample->add_option("--radius,-r", sample.radius, "Sphere radius");
  cmd_sample->add_option("--count,-m", sample.count, "Number of points");
  cmd_sample->add_option("--seed", sample.seed, "Seed");
  cmd_sample->add_option("--stream", sample.stream, "Stream id");
  cmd_sample->add_option("--cap-fraction", sample.cap_fraction, "Cap surface fraction");
  cmd_sample->add_option("--informational-fraction", sample.informational_fraction,
                         "Fraction drawn from the cap");
  cmd_sample->add_option("--subset-dimension", sample.subset_dimension,
                         "Embedded subset dimension");
  cmd_sample->add_option("--subset-count", sample.subset_count, "Embedded subset size");
  cmd_sample->add_option("--superset", sample.superset, "sphere|hemisphere");
  cmd_sample->add_option("--out", sample.out, "Output points CSV")->required();
  cmd_sample->add_option("--labels-out", sample.labels_out, "Optional labels file");

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Uniformity test for a point set");
  cmd_analyze->add_option("--points", analyze.points, "Points file")->required();
  cmd_analyze->add_option("--format", analyze.format, "csv|latlon-csv");
  cmd_analyze->add_option("--min-size", analyze.min_size,
                          "Minimum feature size for latlon-csv rows");
  cmd_analyze->add_option("--geometry", analyze.geometry, "sphere|hemisphere");
  cmd_analyze->add_option("--mode", analyze.mode, "all-pairs|fixed-point");
  cmd_analyze->add_option("--bins", analyze.bins, "Histogram bins");
  cmd_analyze->add_option("--calibration", analyze.calibration,
                          "Calibration table JSON (otherwise calibrated on the fly)");
  cmd_analyze->add_option("--replicates", analyze.replicates, "Calibration replicates");
  cmd_analyze->add_option("--alpha", analyze.alpha, "Significance level, percent");
  cmd_analyze->add_option("--seed", analyze.seed, "Seed");
  cmd_analyze->add_option("--stream", analyze.stream, "Stream id");
  cmd_analyze->add_option("--out", analyze.out, "Report JSON path (stdout if omitted)");

  CalibrateArgs calibrate;
  auto* cmd_calibrate = app.add_subcommand("calibrate", "Simulate the uniform L1 null");
  cmd_calibrate->add_option("--dimension,-n", calibrate.dimension, "Dimension")->required();
  cmd_calibrate->add_option("--radius,-r", calibrate.radius, "Radius");
  cmd_calibrate->add_option("--target-size,-m", calibrate.target_size, "Target set size")
      ->required();
  cmd_calibrate->add_option("--geometry", calibrate.geometry, "sphere|hemisphere");
  cmd_calibrate->add_option("--mode", calibrate.mode, "all-pairs|fixed-point");
  cmd_calibrate->add_option("--bins", calibrate.bins, "Histogram bins");
  cmd_calibrate->add_option("--replicates,-q", calibrate.replicates, "Replicates");
  cmd_calibrate->add_option("--alpha", calibrate.alpha, "Significance level, percent");
  cmd_calibrate->add_option("--seed", calibrate.seed, "Seed");
  cmd_calibrate->add_option("--stream", calibrate.stream, "Stream id");
  cmd_calibrate->add_option("--out", calibrate.out, "Table JSON path (stdout if omitted)");

  ExtractArgs extract;
  auto* cmd_extract = app.add_subcommand("extract", "Vote out the most uniform subset");
  cmd_extract->add_option("--points", extract.points, "Points file")->required();
  cmd_extract->add_option("--format", extract.format, "csv|latlon-csv");
  cmd_extract->add_option("--repetitions,-e", extract.repetitions, "Voting rounds");
  cmd_extract->add_option("--bins", extract.bins, "Histogram bins");
  cmd_extract->add_option("--seed", extract.seed, "Seed");
  cmd_extract->add_option("--stream", extract.stream, "Stream id");
  cmd_extract->add_option("--out", extract.out, "Result JSON path (stdout if omitted)");

  DetectArgs detect;
  auto* cmd_detect = app.add_subcommand("detect", "Rank points by embedded-subset likeness");
  cmd_detect->add_option("--points", detect.points, "Points file")->required();
  cmd_detect->add_option("--format", detect.format, "csv|latlon-csv");
  cmd_detect->add_option("--labels", detect.labels, "Ground-truth labels file");
  cmd_detect->add_option("--subset-dimension", detect.subset_dimension, "Subset dimension")
      ->required();
  cmd_detect->add_option("--subset-count", detect.subset_count, "Subset size")->required();
  cmd_detect->add_option("--bins", detect.bins, "Per-point histogram bins");
  cmd_detect->add_option("--out", detect.out, "Result JSON path (stdout if omitted)");

  CurvesArgs curves;
  auto* cmd_curves = app.add_subcommand("curves", "Tabulate pdf and cdf");
  cmd_curves->add_option("--dimension,-n", curves.dimension, "Dimension")->required();
  cmd_curves->add_option("--radius,-r", curves.radius, "Radius");
  cmd_curves->add_option("--geometry", curves.geometry, "sphere|hemisphere");
  cmd_curves->add_option("--samples", curves.samples, "Sample count");
  cmd_curves->add_option("--tolerance", curves.tolerance,
                         "Hemisphere quadrature tolerance (0 keeps the default)");
  cmd_curves->add_option("--quadrature-budget", curves.budget,
                         "Hemisphere quadrature subdivision cap (0 keeps the default)");
  cmd_curves->add_option("--out", curves.out, "Output CSV")->required();

  ReproduceArgs reproduce;
  auto* cmd_reproduce = app.add_subcommand("reproduce", "Re-run the bundled studies");
  cmd_reproduce->add_option("--study", reproduce.study, "faulty-gen|cap-mixture|embedded");
  cmd_reproduce->add_flag("--full", reproduce.full, "Full-size run (slow)");
  cmd_reproduce->add_option("--seed", reproduce.seed, "Seed");
  cmd_reproduce->add_option("--stream", reproduce.stream, "Stream id");
  cmd_reproduce->add_option("--out", reproduce.out, "Result JSON path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_sample->parsed()) return run_sample(sample);
    if (cmd_analyze->parsed()) return run_analyze(analyze);
    if (cmd_calibrate->parsed()) return run_calibrate(calibrate);
    if (cmd_extract->parsed()) return run_extract(extract);
    if (cmd_detect->parsed()) return run_detect(detect);
    if (cmd_curves->parsed()) return run_curves(curves);
    if (cmd_reproduce->parsed()) return run_reproduce(reproduce);
  } catch (const hc::validation_error& e) {
    std::cerr << error_json("validation", e.what()).dump() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << error_json("validation", e.what()).dump() << '\n';
    return 2;
  } catch (const hc::accuracy_error& e) {
    std::cerr << error_json("accuracy", e.what()).dump() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()).dump() << '\n';
    return 1;
  }
  return 0;
}
