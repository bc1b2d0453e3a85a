#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperchord {

// Seed plus stream id. Distinct stream ids on the same seed give
// statistically independent sequences, so replicate r of an experiment can
// draw from derive(r) and the result never depends on thread scheduling.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  RandomSeed derive(std::uint64_t salt) const;
};

// Finite set of points in R^N, row-major coordinate storage.
// labels is either empty or carries one integer tag per point
// (0 = background, 1 = informational).
struct PointSet {
  int dimension = 0;
  double radius = 1.0;
  std::vector<double> coords;
  std::vector<int> labels;

  std::size_t size() const {
    return dimension > 0 ? coords.size() / static_cast<std::size_t>(dimension) : 0;
  }

  std::span<const double> point(std::size_t i) const {
    const auto n = static_cast<std::size_t>(dimension);
    return {coords.data() + i * n, n};
  }

  std::span<double> point(std::size_t i) {
    const auto n = static_cast<std::size_t>(dimension);
    return {coords.data() + i * n, n};
  }
};

constexpr int label_background = 0;
constexpr int label_informational = 1;

enum class Geometry { sphere, hemisphere };

double euclidean_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace hyperchord
