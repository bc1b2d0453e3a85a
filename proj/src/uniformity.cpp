#include "hyperchord/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hyperchord {

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  return m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

// Anchor for fixed-point mode: the point whose coordinate sum is the median,
// ties resolved by index. Deterministic and cheap.
std::size_t median_sum_anchor(const PointSet& set) {
  const std::size_t m = set.size();
  std::vector<std::pair<double, std::size_t>> sums(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (double v : set.point(i)) s += v;
    sums[i] = {s, i};
  }
  std::sort(sums.begin(), sums.end());
  return sums[(m - 1) / 2].second;
}

std::vector<double> reference_mass(Geometry geometry, int dimension, double radius,
                                   std::size_t bin_count) {
  if (geometry == Geometry::sphere)
    return analytic_bin_mass(SphereChordDistribution(dimension, radius), bin_count);
  return analytic_bin_mass(HemisphereChordDistribution(dimension, radius), bin_count);
}

DistanceMode mode_for(DistanceMode::Kind kind, const PointSet& set) {
  return kind == DistanceMode::Kind::all_pairs
             ? DistanceMode::all_pairs()
             : DistanceMode::fixed_point(median_sum_anchor(set));
}

}  // namespace

CalibrationTable calibrate_threshold(int dimension, double radius, std::size_t target_size,
                                     Geometry geometry, DistanceMode::Kind mode,
                                     std::size_t bin_count, std::size_t replicates,
                                     double alpha_percent, RandomSeed seed) {
  if (mode == DistanceMode::Kind::pair_list)
    throw std::domain_error("calibrate_threshold: pair-list mode has no calibration");
  if (replicates < 20)
    throw std::domain_error("calibrate_threshold: need at least 20 replicates");
  if (!(alpha_percent > 0.0) || !(alpha_percent < 50.0))
    throw std::domain_error("calibrate_threshold: alpha must lie in (0, 50) percent");
  if (target_size < 2)
    throw std::domain_error("calibrate_threshold: target size too small");
  if (bin_count < 2) throw std::domain_error("calibrate_threshold: need at least two bins");

  const std::size_t reference_size = std::min<std::size_t>(target_size, 1000);
  const std::vector<double> ref = reference_mass(geometry, dimension, radius, bin_count);

  std::vector<double> l1(replicates, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t q = 0; q < static_cast<std::ptrdiff_t>(replicates); ++q) {
    const PointSet set = sample_uniform(geometry, dimension, radius, reference_size,
                                        seed.derive(static_cast<std::uint64_t>(q)));
    const EmpiricalDistanceDistribution emp =
        distance_distribution_serial(set, mode_for(mode, set), bin_count);
    l1[static_cast<std::size_t>(q)] = l1_distance(emp, ref);
  }

  std::vector<double> sorted = l1;
  std::sort(sorted.begin(), sorted.end());
  const double level = 1.0 - alpha_percent / 100.0;
  auto idx = static_cast<std::size_t>(
      std::ceil(level * static_cast<double>(replicates)));
  idx = std::min(std::max<std::size_t>(idx, 1), replicates) - 1;

  CalibrationTable table;
  table.dimension = dimension;
  table.radius = radius;
  table.geometry = geometry;
  table.mode = mode;
  table.target_size = target_size;
  table.reference_size = reference_size;
  table.bin_count = bin_count;
  table.replicate_count = replicates;
  table.alpha_percent = alpha_percent;
  table.median_l1 = median_of(l1);
  table.quantile_l1 = sorted[idx];
  table.seed = seed;
  return table;
}

double threshold_for_pairs(const CalibrationTable& table, std::uint64_t pair_count) {
  if (pair_count == 0) throw std::domain_error("threshold_for_pairs: no pairs");
  const auto ref_pairs =
      static_cast<double>(pair_count_for(table.mode, table.reference_size));
  return table.quantile_l1 * std::sqrt(ref_pairs / static_cast<double>(pair_count));
}

double max_uniform_fraction(double l1) {
  if (!(l1 >= 0.0) || !(l1 <= 2.0))
    throw std::domain_error("max_uniform_fraction: l1 must lie in [0, 2]");
  return std::clamp(1.0 - std::sqrt(0.5 * l1), 0.0, 1.0);
}

std::size_t max_uniform_count(double l1, std::size_t set_size) {
  const double frac = max_uniform_fraction(l1);
  return static_cast<std::size_t>(
      std::llround(frac * static_cast<double>(set_size)));
}

UniformityReport test_uniformity(const PointSet& set, Geometry geometry,
                                 const CalibrationTable& table) {
  if (geometry != table.geometry)
    throw std::domain_error("test_uniformity: calibration geometry mismatch");
  if (set.dimension != table.dimension)
    throw std::domain_error("test_uniformity: calibration dimension mismatch");
  if (std::fabs(set.radius - table.radius) > 1e-9 * std::max(1.0, table.radius))
    throw std::domain_error("test_uniformity: calibration radius mismatch");

  const DistanceMode mode = mode_for(table.mode, set);
  const EmpiricalDistanceDistribution emp =
      distance_distribution(set, mode, table.bin_count);
  const std::vector<double> ref =
      reference_mass(geometry, set.dimension, set.radius, table.bin_count);

  UniformityReport report;
  report.l1 = l1_distance(emp, ref);
  report.threshold = threshold_for_pairs(table, emp.pair_count);
  report.non_uniform = report.l1 > report.threshold;
  report.confidence_percent = 100.0 - table.alpha_percent;
  report.geometry = geometry;
  report.mode = table.mode;
  report.anchor_index = mode.anchor;
  report.set_size = set.size();
  report.pair_count = emp.pair_count;
  report.bin_count = table.bin_count;
  if (geometry == Geometry::sphere) {
    report.bound_available = true;
    report.max_uniform_fraction = max_uniform_fraction(std::min(report.l1, 2.0));
    report.max_uniform_count = max_uniform_count(std::min(report.l1, 2.0), set.size());
  } else {
    report.bound_available = false;
    report.notes.push_back("subset-size bound is only available for sphere geometry");
  }
  if (table.mode == DistanceMode::Kind::fixed_point && geometry == Geometry::hemisphere)
    report.notes.push_back(
        "fixed-point mode on a hemisphere: anchor position skews the distance law");
  return report;
}

void accumulate_votes(const PointSet& set, const PointSet& probes,
                      std::vector<std::uint64_t>& votes) {
  const std::size_t m = set.size();
  const auto n = static_cast<std::size_t>(set.dimension);
  const double* data = set.coords.data();
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double* q = probes.coords.data() + p * n;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double* pi = data + i * n;
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double diff = pi[k] - q[k];
        s += diff * diff;
      }
      if (s < best) {
        best = s;
        best_idx = i;
      }
    }
    ++votes[best_idx];
  }
}

ExtractionResult extract_uniform_subset(const PointSet& set, std::size_t repetitions,
                                        RandomSeed seed, std::size_t bin_count) {
  if (repetitions < 1)
    throw std::domain_error("extract_uniform_subset: need at least one repetition");
  const std::size_t m = set.size();
  const SphereChordDistribution dist(set.dimension, set.radius);
  const EmpiricalDistanceDistribution emp =
      distance_distribution(set, DistanceMode::all_pairs(), bin_count);

  ExtractionResult result;
  result.l1 = l1_distance(emp, dist);
  result.set_size = m;
  const std::size_t keep = max_uniform_count(std::min(result.l1, 2.0), m);
  result.vote_state.rounds = repetitions;
  result.vote_state.per_round_count = keep;
  result.vote_state.votes.assign(m, 0);
  if (keep == 0) {
    result.notes.push_back("L1 leaves no compatible subset; nothing extracted");
    return result;
  }

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(m, 0);
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t round = 0; round < static_cast<std::ptrdiff_t>(repetitions); ++round) {
      const PointSet probes = sample_sphere_uniform(
          set.dimension, set.radius, keep, seed.derive(static_cast<std::uint64_t>(round)));
      accumulate_votes(set, probes, local);
    }
#pragma omp critical
    for (std::size_t i = 0; i < m; ++i) result.vote_state.votes[i] += local[i];
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto va = result.vote_state.votes[a];
    const auto vb = result.vote_state.votes[b];
    return va != vb ? va > vb : a < b;
  });
  result.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  return result;
}

DoublingTrace doubling_validation(const GeneratorFn& generator, int dimension, double radius,
                                  std::size_t initial_size, double l1_floor, Geometry geometry,
                                  RandomSeed seed, const DoublingOptions& options) {
  if (!generator) throw std::domain_error("doubling_validation: missing generator");
  if (initial_size < 2) throw std::domain_error("doubling_validation: initial size too small");
  if (!(l1_floor > 0.0)) throw std::domain_error("doubling_validation: floor must be positive");
  if (options.replicates < 1 || options.max_doublings < 1 || !(options.ratio_floor > 1.0))
    throw std::domain_error("doubling_validation: bad options");

  const std::vector<double> ref =
      reference_mass(geometry, dimension, radius, options.bin_count);
  const auto l1_at = [&](std::size_t size, std::size_t level) {
    std::vector<double> values(options.replicates, 0.0);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t rep = 0; rep < static_cast<std::ptrdiff_t>(options.replicates); ++rep) {
      try {
        const PointSet set = generator(dimension, radius, size,
                                       seed.derive(level * 1000003ULL +
                                                   static_cast<std::uint64_t>(rep)));
        const EmpiricalDistanceDistribution emp = distance_distribution_serial(
            set, DistanceMode::all_pairs(), options.bin_count);
        values[static_cast<std::size_t>(rep)] = l1_distance(emp, ref);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    return median_of(std::move(values));
  };

  DoublingTrace trace;
  std::size_t size = initial_size;
  double prev = l1_at(size, 0);
  trace.sizes.push_back(size);
  trace.l1_values.push_back(prev);
  if (prev <= l1_floor) {
    trace.verdict = DoublingVerdict::validated;
    return trace;
  }
  for (std::size_t level = 1; level <= options.max_doublings; ++level) {
    size *= 2;
    const double cur = l1_at(size, level);
    trace.sizes.push_back(size);
    trace.l1_values.push_back(cur);
    if (cur <= l1_floor) {
      trace.verdict = DoublingVerdict::validated;
      return trace;
    }
    if (prev / cur < options.ratio_floor) {
      trace.verdict = DoublingVerdict::bug_detected;
      return trace;
    }
    prev = cur;
  }
  trace.verdict = DoublingVerdict::inconclusive;
  return trace;
}

namespace {

std::vector<double> per_point_l1_impl(const PointSet& set, int subset_dimension,
                                      std::size_t bin_count, bool parallel) {
  if (subset_dimension < 2 || subset_dimension >= set.dimension)
    throw std::domain_error("per_point_l1: need 2 <= subset_dimension < dimension");
  if (set.size() < 2) throw std::domain_error("per_point_l1: need at least two points");
  if (bin_count < 2) throw std::domain_error("per_point_l1: need at least two bins");

  const std::size_t m = set.size();
  const auto n = static_cast<std::size_t>(set.dimension);
  const double* data = set.coords.data();
  const double scale = static_cast<double>(bin_count) / (2.0 * set.radius);
  const std::vector<double> ref =
      analytic_bin_mass(SphereChordDistribution(subset_dimension, set.radius), bin_count);
  const double inv_pairs = 1.0 / static_cast<double>(m - 1);

  std::vector<double> scores(m, 0.0);
  const auto score_one = [&](std::size_t i) {
    std::vector<std::uint64_t> counts(bin_count, 0);
    const double* pi = data + i * n;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double* pj = data + j * n;
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double diff = pi[k] - pj[k];
        s += diff * diff;
      }
      auto idx = static_cast<std::size_t>(std::sqrt(s) * scale);
      ++counts[idx >= bin_count ? bin_count - 1 : idx];
    }
    double l1 = 0.0;
    for (std::size_t b = 0; b < bin_count; ++b)
      l1 += std::fabs(static_cast<double>(counts[b]) * inv_pairs - ref[b]);
    scores[i] = l1;
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i)
      score_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < m; ++i) score_one(i);
  }
  return scores;
}

}  // namespace

std::vector<double> per_point_l1(const PointSet& set, int subset_dimension,
                                 std::size_t bin_count) {
  return per_point_l1_impl(set, subset_dimension, bin_count, true);
}

std::vector<double> per_point_l1_serial(const PointSet& set, int subset_dimension,
                                        std::size_t bin_count) {
  return per_point_l1_impl(set, subset_dimension, bin_count, false);
}

DetectionResult detect_embedded_subset(const PointSet& set, int subset_dimension,
                                       std::size_t subset_count, std::size_t bin_count) {
  if (subset_count > set.size())
    throw std::domain_error("detect_embedded_subset: subset_count exceeds set size");

  DetectionResult result;
  result.per_point_l1 = per_point_l1(set, subset_dimension, bin_count);

  const std::size_t m = set.size();
  result.ranking.resize(m);
  std::iota(result.ranking.begin(), result.ranking.end(), std::size_t{0});
  std::sort(result.ranking.begin(), result.ranking.end(), [&](std::size_t a, std::size_t b) {
    const double la = result.per_point_l1[a];
    const double lb = result.per_point_l1[b];
    return la != lb ? la < lb : a < b;
  });
  result.selected.assign(result.ranking.begin(),
                         result.ranking.begin() + static_cast<std::ptrdiff_t>(subset_count));

  if (set.labels.size() == m) {
    std::size_t truth = 0;
    for (int lab : set.labels) truth += lab == label_informational ? 1 : 0;
    if (truth > 0) {
      result.has_ground_truth = true;
      std::size_t hits = 0;
      for (std::size_t idx : result.selected)
        hits += set.labels[idx] == label_informational ? 1 : 0;
      result.detection_rate = static_cast<double>(hits) / static_cast<double>(truth);
    }
  }
  return result;
}

}  // namespace hyperchord
