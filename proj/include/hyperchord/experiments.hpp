#pragma once

#include "hyperchord/uniformity.hpp"

namespace hyperchord {

// Study of the cube-projection generator on the circle: L1 medians over
// many seeds, the calibrated threshold, the implied contamination bound,
// and the doubling-ratio check against a half-size run.
struct FaultyGeneratorStudy {
  std::size_t set_size = 0;
  std::size_t seed_count = 0;
  std::size_t bin_count = 0;
  double median_faulty_l1 = 0.0;
  double half_size_median_l1 = 0.0;
  double adjacent_ratio = 0.0;
  bool ratio_flags_non_uniform = false;
  double threshold = 0.0;
  bool median_exceeds_threshold = false;
  std::size_t non_uniform_lower_bound = 0;
  CalibrationTable calibration;
};

FaultyGeneratorStudy run_faulty_generator_study(std::size_t set_size, std::size_t seed_count,
                                                std::size_t bin_count,
                                                std::size_t calibration_replicates,
                                                RandomSeed seed);

// Vote-extraction quality on a cap-contaminated sphere sample, averaged
// over independent runs. Precision and recall refer to identifying the
// contaminating points as the complement of the extracted subset.
struct CapMixtureStudy {
  int dimension = 0;
  double cap_fraction = 0.0;
  double informational_fraction = 0.0;
  std::size_t set_size = 0;
  std::size_t runs = 0;
  std::size_t repetitions = 0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
};

CapMixtureStudy run_cap_mixture_study(int dimension, double cap_fraction,
                                      double informational_fraction, std::size_t set_size,
                                      std::size_t runs, std::size_t repetitions,
                                      RandomSeed seed);

// Detection rate of an embedded lower-dimensional sub-sphere, averaged over
// independent simulations.
struct EmbeddedDetectionStudy {
  int subset_dimension = 0;
  int dimension = 0;
  Geometry superset_geometry = Geometry::sphere;
  double subset_ratio = 0.0;
  std::size_t set_size = 0;
  std::size_t simulations = 0;
  std::size_t histogram_bins = 64;
  double mean_detection_rate = 0.0;
};

EmbeddedDetectionStudy run_embedded_detection_study(int subset_dimension, int dimension,
                                                    Geometry superset_geometry,
                                                    double subset_ratio, std::size_t set_size,
                                                    std::size_t simulations, RandomSeed seed);

}  // namespace hyperchord
