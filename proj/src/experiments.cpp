#include "hyperchord/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace hyperchord {

namespace {

double median_sorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  return m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

}  // namespace

FaultyGeneratorStudy run_faulty_generator_study(std::size_t set_size, std::size_t seed_count,
                                                std::size_t bin_count,
                                                std::size_t calibration_replicates,
                                                RandomSeed seed) {
  if (set_size < 4) throw std::domain_error("run_faulty_generator_study: set size too small");
  if (seed_count < 1) throw std::domain_error("run_faulty_generator_study: need seeds");

  constexpr int dim = 2;
  constexpr double radius = 1.0;
  const SphereChordDistribution dist(dim, radius);
  const std::vector<double> ref = analytic_bin_mass(dist, bin_count);

  std::vector<double> full(seed_count, 0.0);
  std::vector<double> half(seed_count, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(seed_count); ++s) {
    const auto us = static_cast<std::uint64_t>(s);
    const PointSet big =
        sample_faulty_cube_projection(dim, radius, set_size, seed.derive(100000 + us));
    full[static_cast<std::size_t>(s)] = l1_distance(
        distance_distribution_serial(big, DistanceMode::all_pairs(), bin_count), ref);
    const PointSet small =
        sample_faulty_cube_projection(dim, radius, set_size / 2, seed.derive(200000 + us));
    half[static_cast<std::size_t>(s)] = l1_distance(
        distance_distribution_serial(small, DistanceMode::all_pairs(), bin_count), ref);
  }

  FaultyGeneratorStudy study;
  study.set_size = set_size;
  study.seed_count = seed_count;
  study.bin_count = bin_count;
  study.median_faulty_l1 = median_sorted(full);
  study.half_size_median_l1 = median_sorted(half);
  study.adjacent_ratio = study.half_size_median_l1 / study.median_faulty_l1;
  study.ratio_flags_non_uniform = study.adjacent_ratio < 1.3;
  study.calibration =
      calibrate_threshold(dim, radius, set_size, Geometry::sphere, DistanceMode::Kind::all_pairs,
                          bin_count, calibration_replicates, 1.0, seed.derive(900001));
  study.threshold = threshold_for_pairs(
      study.calibration, pair_count_for(DistanceMode::Kind::all_pairs, set_size));
  study.median_exceeds_threshold = study.median_faulty_l1 > study.threshold;
  study.non_uniform_lower_bound =
      set_size - max_uniform_count(std::min(study.median_faulty_l1, 2.0), set_size);
  return study;
}

CapMixtureStudy run_cap_mixture_study(int dimension, double cap_fraction,
                                      double informational_fraction, std::size_t set_size,
                                      std::size_t runs, std::size_t repetitions,
                                      RandomSeed seed) {
  if (runs < 1) throw std::domain_error("run_cap_mixture_study: need runs");
  if (repetitions < 1) throw std::domain_error("run_cap_mixture_study: need repetitions");
  if (dimension < 2) throw std::domain_error("run_cap_mixture_study: dimension too small");
  if (set_size < 4) throw std::domain_error("run_cap_mixture_study: set size too small");
  if (!(cap_fraction > 0.0) || !(cap_fraction < 1.0))
    throw std::domain_error("run_cap_mixture_study: cap_fraction must lie in (0, 1)");
  if (!(informational_fraction >= 0.0) || !(informational_fraction <= 1.0))
    throw std::domain_error("run_cap_mixture_study: informational_fraction must lie in [0, 1]");

  double precision_sum = 0.0;
  double recall_sum = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : precision_sum, recall_sum)
  for (std::ptrdiff_t run = 0; run < static_cast<std::ptrdiff_t>(runs); ++run) {
    const auto ur = static_cast<std::uint64_t>(run);
    const PointSet set = sample_cap_mixture(dimension, 1.0, set_size, cap_fraction,
                                            informational_fraction, seed.derive(ur));
    const ExtractionResult res =
        extract_uniform_subset(set, repetitions, seed.derive(500000 + ur));

    std::vector<char> kept(set.size(), 0);
    for (std::size_t idx : res.selected) kept[idx] = 1;
    std::size_t flagged = 0;
    std::size_t hits = 0;
    std::size_t truth = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const bool informational = set.labels[i] == label_informational;
      truth += informational ? 1 : 0;
      if (!kept[i]) {
        ++flagged;
        hits += informational ? 1 : 0;
      }
    }
    precision_sum += flagged > 0 ? static_cast<double>(hits) / static_cast<double>(flagged) : 0.0;
    recall_sum += truth > 0 ? static_cast<double>(hits) / static_cast<double>(truth) : 0.0;
  }

  CapMixtureStudy study;
  study.dimension = dimension;
  study.cap_fraction = cap_fraction;
  study.informational_fraction = informational_fraction;
  study.set_size = set_size;
  study.runs = runs;
  study.repetitions = repetitions;
  study.mean_precision = precision_sum / static_cast<double>(runs);
  study.mean_recall = recall_sum / static_cast<double>(runs);
  return study;
}

EmbeddedDetectionStudy run_embedded_detection_study(int subset_dimension, int dimension,
                                                    Geometry superset_geometry,
                                                    double subset_ratio, std::size_t set_size,
                                                    std::size_t simulations, RandomSeed seed) {
  if (simulations < 1) throw std::domain_error("run_embedded_detection_study: need simulations");
  if (!(subset_ratio > 0.0) || !(subset_ratio < 1.0))
    throw std::domain_error("run_embedded_detection_study: subset_ratio must lie in (0, 1)");
  if (subset_dimension < 2 || subset_dimension >= dimension)
    throw std::domain_error("run_embedded_detection_study: need 2 <= subset_dimension < dimension");

  const auto subset_count = static_cast<std::size_t>(
      std::llround(subset_ratio * static_cast<double>(set_size)));
  if (subset_count < 1 || set_size < 4)
    throw std::domain_error("run_embedded_detection_study: set too small");

  double rate_sum = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(+ : rate_sum)
  for (std::ptrdiff_t sim = 0; sim < static_cast<std::ptrdiff_t>(simulations); ++sim) {
    const PointSet set =
        sample_embedded_uniform(subset_dimension, dimension, 1.0, subset_count, set_size,
                                superset_geometry, seed.derive(static_cast<std::uint64_t>(sim)));
    const DetectionResult det = detect_embedded_subset(set, subset_dimension, subset_count, 64);
    rate_sum += det.detection_rate;
  }

  EmbeddedDetectionStudy study;
  study.subset_dimension = subset_dimension;
  study.dimension = dimension;
  study.superset_geometry = superset_geometry;
  study.subset_ratio = subset_ratio;
  study.set_size = set_size;
  study.simulations = simulations;
  study.mean_detection_rate = rate_sum / static_cast<double>(simulations);
  return study;
}

}  // namespace hyperchord
