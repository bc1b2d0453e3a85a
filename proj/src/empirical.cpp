#include "hyperchord/empirical.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperchord {

namespace {

std::size_t bin_index(double d, double scale, std::size_t bin_count) {
  auto idx = static_cast<std::size_t>(d * scale);
  return idx >= bin_count ? bin_count - 1 : idx;
}

void validate_inputs(const PointSet& set, const DistanceMode& mode, std::size_t bin_count) {
  if (set.dimension < 1) throw std::domain_error("distance_distribution: bad dimension");
  if (!(set.radius > 0.0)) throw std::domain_error("distance_distribution: bad radius");
  if (set.size() < 2) throw std::domain_error("distance_distribution: need at least two points");
  if (bin_count < 2) throw std::domain_error("distance_distribution: need at least two bins");
  if (mode.kind == DistanceMode::Kind::fixed_point && mode.anchor >= set.size())
    throw std::domain_error("distance_distribution: anchor out of range");
  if (mode.kind == DistanceMode::Kind::pair_list) {
    for (const auto& [i, j] : mode.pairs) {
      if (i == j || i >= set.size() || j >= set.size())
        throw std::domain_error("distance_distribution: bad pair list entry");
    }
  }
}

EmpiricalDistanceDistribution from_counts(std::vector<std::uint64_t> counts, double radius,
                                          DistanceMode::Kind kind) {
  EmpiricalDistanceDistribution out;
  out.bin_count = counts.size();
  out.radius = radius;
  out.mode = kind;
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  out.pair_count = total;
  out.bin_mass.resize(counts.size(), 0.0);
  if (total > 0) {
    const double inv = 1.0 / static_cast<double>(total);
    for (std::size_t b = 0; b < counts.size(); ++b)
      out.bin_mass[b] = static_cast<double>(counts[b]) * inv;
  }
  return out;
}

std::vector<std::uint64_t> all_pairs_counts(const PointSet& set, std::size_t bin_count,
                                            bool parallel) {
  const std::size_t m = set.size();
  const auto n = static_cast<std::size_t>(set.dimension);
  const double* data = set.coords.data();
  const double scale = static_cast<double>(bin_count) / (2.0 * set.radius);
  std::vector<std::uint64_t> counts(bin_count, 0);

  if (parallel) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(bin_count, 0);
#pragma omp for schedule(dynamic, 16)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        const double* pi = data + static_cast<std::size_t>(i) * n;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < m; ++j) {
          const double* pj = data + j * n;
          double s = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            const double diff = pi[k] - pj[k];
            s += diff * diff;
          }
          ++local[bin_index(std::sqrt(s), scale, bin_count)];
        }
      }
#pragma omp critical
      for (std::size_t b = 0; b < bin_count; ++b) counts[b] += local[b];
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      const double* pi = data + i * n;
      for (std::size_t j = i + 1; j < m; ++j) {
        const double* pj = data + j * n;
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double diff = pi[k] - pj[k];
          s += diff * diff;
        }
        ++counts[bin_index(std::sqrt(s), scale, bin_count)];
      }
    }
  }
  return counts;
}

std::vector<std::uint64_t> sparse_counts(const PointSet& set, const DistanceMode& mode,
                                         std::size_t bin_count) {
  const double scale = static_cast<double>(bin_count) / (2.0 * set.radius);
  std::vector<std::uint64_t> counts(bin_count, 0);
  if (mode.kind == DistanceMode::Kind::fixed_point) {
    const auto anchor = set.point(mode.anchor);
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (j == mode.anchor) continue;
      ++counts[bin_index(euclidean_distance(anchor, set.point(j)), scale, bin_count)];
    }
  } else {
    for (const auto& [i, j] : mode.pairs)
      ++counts[bin_index(euclidean_distance(set.point(i), set.point(j)), scale, bin_count)];
  }
  return counts;
}

EmpiricalDistanceDistribution build(const PointSet& set, const DistanceMode& mode,
                                    std::size_t bin_count, bool parallel) {
  validate_inputs(set, mode, bin_count);
  std::vector<std::uint64_t> counts =
      mode.kind == DistanceMode::Kind::all_pairs
          ? all_pairs_counts(set, bin_count, parallel)
          : sparse_counts(set, mode, bin_count);
  return from_counts(std::move(counts), set.radius, mode.kind);
}

}  // namespace

EmpiricalDistanceDistribution distance_distribution(const PointSet& set,
                                                    const DistanceMode& mode,
                                                    std::size_t bin_count) {
  return build(set, mode, bin_count, true);
}

EmpiricalDistanceDistribution distance_distribution_serial(const PointSet& set,
                                                           const DistanceMode& mode,
                                                           std::size_t bin_count) {
  return build(set, mode, bin_count, false);
}

namespace {

template <typename Dist, typename Cdf>
std::vector<double> bin_mass_from_cdf(const Dist& dist, std::size_t bin_count, Cdf&& cdf) {
  if (bin_count < 1) throw std::domain_error("analytic_bin_mass: need at least one bin");
  std::vector<double> mass(bin_count, 0.0);
  double prev = 0.0;
  for (std::size_t b = 0; b < bin_count; ++b) {
    const double edge = 2.0 * dist.radius * static_cast<double>(b + 1) /
                        static_cast<double>(bin_count);
    const double cur = b + 1 == bin_count ? 1.0 : cdf(dist, edge);
    mass[b] = cur - prev;
    prev = cur;
  }
  return mass;
}

}  // namespace

std::vector<double> analytic_bin_mass(const SphereChordDistribution& dist,
                                      std::size_t bin_count) {
  return bin_mass_from_cdf(dist, bin_count,
                           [](const SphereChordDistribution& d, double e) { return sphere_cdf(d, e); });
}

std::vector<double> analytic_bin_mass(const HemisphereChordDistribution& dist,
                                      std::size_t bin_count) {
  return bin_mass_from_cdf(dist, bin_count, [](const HemisphereChordDistribution& d, double e) {
    return hemisphere_cdf(d, e);
  });
}

double l1_distance(const EmpiricalDistanceDistribution& emp,
                   std::span<const double> reference_mass) {
  if (emp.bin_mass.size() != reference_mass.size())
    throw std::domain_error("l1_distance: bin count mismatch");
  double sum = 0.0;
  for (std::size_t b = 0; b < reference_mass.size(); ++b)
    sum += std::fabs(emp.bin_mass[b] - reference_mass[b]);
  return sum;
}

namespace {

template <typename Dist>
double l1_against(const EmpiricalDistanceDistribution& emp, const Dist& dist) {
  if (std::fabs(emp.radius - dist.radius) > 1e-9 * std::max(1.0, dist.radius))
    throw std::domain_error("l1_distance: empirical and analytic supports differ");
  const std::vector<double> ref = analytic_bin_mass(dist, emp.bin_count);
  return l1_distance(emp, ref);
}

}  // namespace

double l1_distance(const EmpiricalDistanceDistribution& emp,
                   const SphereChordDistribution& dist) {
  return l1_against(emp, dist);
}

double l1_distance(const EmpiricalDistanceDistribution& emp,
                   const HemisphereChordDistribution& dist) {
  return l1_against(emp, dist);
}

std::uint64_t pair_count_for(DistanceMode::Kind kind, std::size_t set_size) {
  const auto m = static_cast<std::uint64_t>(set_size);
  switch (kind) {
    case DistanceMode::Kind::all_pairs:
      return m * (m - 1) / 2;
    case DistanceMode::Kind::fixed_point:
      return m - 1;
    default:
      throw std::domain_error("pair_count_for: pair lists have no implied pair count");
  }
}

}  // namespace hyperchord
