#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hyperchord/chord_distributions.hpp"
#include "hyperchord/point_set.hpp"

namespace hyperchord {

struct DistanceMode {
  enum class Kind { all_pairs, fixed_point, pair_list };

  Kind kind = Kind::all_pairs;
  std::size_t anchor = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;

  static DistanceMode all_pairs() { return {Kind::all_pairs, 0, {}}; }
  static DistanceMode fixed_point(std::size_t anchor) { return {Kind::fixed_point, anchor, {}}; }
  static DistanceMode pair_list(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    return {Kind::pair_list, 0, std::move(pairs)};
  }
};

// Normalized histogram of pairwise distances over [0, 2R]. Interior bin
// edges belong to the bin on their right; d = 2R lands in the last bin.
struct EmpiricalDistanceDistribution {
  std::size_t bin_count = 0;
  double radius = 0.0;
  std::uint64_t pair_count = 0;
  DistanceMode::Kind mode = DistanceMode::Kind::all_pairs;
  std::vector<double> bin_mass;
};

EmpiricalDistanceDistribution distance_distribution(const PointSet& set,
                                                    const DistanceMode& mode,
                                                    std::size_t bin_count);

// Single-threaded implementation with bit-identical output, kept as the
// oracle for the parallel kernel.
EmpiricalDistanceDistribution distance_distribution_serial(const PointSet& set,
                                                           const DistanceMode& mode,
                                                           std::size_t bin_count);

// Expected mass per histogram bin under the analytic distribution.
std::vector<double> analytic_bin_mass(const SphereChordDistribution& dist,
                                      std::size_t bin_count);
std::vector<double> analytic_bin_mass(const HemisphereChordDistribution& dist,
                                      std::size_t bin_count);

double l1_distance(const EmpiricalDistanceDistribution& emp,
                   std::span<const double> reference_mass);
double l1_distance(const EmpiricalDistanceDistribution& emp,
                   const SphereChordDistribution& dist);
double l1_distance(const EmpiricalDistanceDistribution& emp,
                   const HemisphereChordDistribution& dist);

// Number of distance pairs the mode induces on a set of the given size.
std::uint64_t pair_count_for(DistanceMode::Kind kind, std::size_t set_size);

}  // namespace hyperchord
