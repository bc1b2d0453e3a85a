#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hyperchord/empirical.hpp"
#include "hyperchord/sampling.hpp"

namespace hyperchord {

// Null distribution of the L1 statistic for uniform sets, simulated once at
// a reference size and rescaled to other sizes through the pair count.
struct CalibrationTable {
  int dimension = 0;
  double radius = 1.0;
  Geometry geometry = Geometry::sphere;
  DistanceMode::Kind mode = DistanceMode::Kind::all_pairs;
  std::size_t target_size = 0;
  std::size_t reference_size = 0;
  std::size_t bin_count = 200;
  std::size_t replicate_count = 0;
  double alpha_percent = 1.0;
  double median_l1 = 0.0;
  double quantile_l1 = 0.0;
  RandomSeed seed;
};

CalibrationTable calibrate_threshold(int dimension, double radius, std::size_t target_size,
                                     Geometry geometry, DistanceMode::Kind mode,
                                     std::size_t bin_count, std::size_t replicates,
                                     double alpha_percent, RandomSeed seed);

// Rejection threshold for a set whose mode induces pair_count pairs; the
// calibrated quantile scales as 1/sqrt(pair count).
double threshold_for_pairs(const CalibrationTable& table, std::uint64_t pair_count);

// Largest fraction of the set that can still be uniform given its L1 value.
double max_uniform_fraction(double l1);
std::size_t max_uniform_count(double l1, std::size_t set_size);

struct UniformityReport {
  double l1 = 0.0;
  double threshold = 0.0;
  bool non_uniform = false;
  double confidence_percent = 0.0;
  Geometry geometry = Geometry::sphere;
  DistanceMode::Kind mode = DistanceMode::Kind::all_pairs;
  std::size_t anchor_index = 0;
  std::size_t set_size = 0;
  std::uint64_t pair_count = 0;
  std::size_t bin_count = 0;
  bool bound_available = false;
  double max_uniform_fraction = 0.0;
  std::size_t max_uniform_count = 0;
  std::vector<std::string> notes;
};

UniformityReport test_uniformity(const PointSet& set, Geometry geometry,
                                 const CalibrationTable& table);

struct VoteState {
  std::vector<std::uint64_t> votes;
  std::size_t rounds = 0;
  std::size_t per_round_count = 0;
};

struct ExtractionResult {
  std::vector<std::size_t> selected;
  VoteState vote_state;
  double l1 = 0.0;
  std::size_t set_size = 0;
  std::vector<std::string> notes;
};

// For each probe point, vote for its nearest neighbour in the set; ties go
// to the lower index. Serial kernel shared by the parallel driver.
void accumulate_votes(const PointSet& set, const PointSet& probes,
                      std::vector<std::uint64_t>& votes);

// Monte-Carlo vote extraction of the most uniformity-compatible subset.
// Runs `repetitions` rounds of fresh uniform probes and keeps the points
// with the most nearest-neighbour votes.
ExtractionResult extract_uniform_subset(const PointSet& set, std::size_t repetitions,
                                        RandomSeed seed, std::size_t bin_count = 200);

enum class DoublingVerdict { validated, bug_detected, inconclusive };

struct DoublingTrace {
  std::vector<std::size_t> sizes;
  std::vector<double> l1_values;
  DoublingVerdict verdict = DoublingVerdict::inconclusive;
};

using GeneratorFn =
    std::function<PointSet(int dimension, double radius, std::size_t count, RandomSeed seed)>;

struct DoublingOptions {
  std::size_t max_doublings = 7;
  std::size_t replicates = 3;
  std::size_t bin_count = 200;
  double ratio_floor = 1.3;
};

// Generator self-check: a healthy uniform generator roughly halves its L1
// per size doubling until it reaches l1_floor; a plateau means bias.
DoublingTrace doubling_validation(const GeneratorFn& generator, int dimension, double radius,
                                  std::size_t initial_size, double l1_floor, Geometry geometry,
                                  RandomSeed seed, const DoublingOptions& options = {});

struct DetectionResult {
  std::vector<std::size_t> ranking;
  std::vector<std::size_t> selected;
  std::vector<double> per_point_l1;
  bool has_ground_truth = false;
  double detection_rate = 0.0;
};

// Per-point distance histograms scored against the chord law of the
// embedded sub-sphere; low scores mark likely subset members.
std::vector<double> per_point_l1(const PointSet& set, int subset_dimension,
                                 std::size_t bin_count);
std::vector<double> per_point_l1_serial(const PointSet& set, int subset_dimension,
                                        std::size_t bin_count);

DetectionResult detect_embedded_subset(const PointSet& set, int subset_dimension,
                                       std::size_t subset_count, std::size_t bin_count = 64);

}  // namespace hyperchord
