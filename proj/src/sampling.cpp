#include "hyperchord/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hyperchord/chord_distributions.hpp"

namespace hyperchord {

namespace {

constexpr double pi = 3.14159265358979323846;

std::mt19937_64 make_engine(RandomSeed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.seed),
                    static_cast<std::uint32_t>(seed.seed >> 32),
                    static_cast<std::uint32_t>(seed.stream_id),
                    static_cast<std::uint32_t>(seed.stream_id >> 32)};
  return std::mt19937_64(seq);
}

void require_sampler_params(int dimension, double radius, int min_dim, const char* who) {
  if (dimension < min_dim)
    throw std::domain_error(std::string(who) + ": dimension too small");
  if (!(radius > 0.0))
    throw std::domain_error(std::string(who) + ": radius must be positive");
}

void append_sphere_point(std::mt19937_64& rng, std::normal_distribution<double>& gauss,
                         double radius, int dimension, std::vector<double>& out) {
  const std::size_t base = out.size();
  double norm2 = 0.0;
  do {
    out.resize(base);
    norm2 = 0.0;
    for (int k = 0; k < dimension; ++k) {
      const double g = gauss(rng);
      out.push_back(g);
      norm2 += g * g;
    }
  } while (norm2 == 0.0);
  const double scale = radius / std::sqrt(norm2);
  for (int k = 0; k < dimension; ++k) out[base + k] *= scale;
}

// One point uniform in the polar cap of the given colatitude: inverse-CDF
// draw of the colatitude, uniform direction for the other coordinates.
void append_cap_point_inverse_cdf(std::mt19937_64& rng, std::normal_distribution<double>& gauss,
                                  std::uniform_real_distribution<double>& unit,
                                  const SphereChordDistribution& shell, double cap_fraction,
                                  std::vector<double>& out) {
  const int n = shell.dimension;
  const double r = shell.radius;
  const double target = unit(rng) * cap_fraction;
  const double phi = cap_colatitude_for_fraction(n, target);
  const std::size_t base = out.size();
  if (n == 2) {
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    out.push_back(r * std::sin(phi) * sign);
    out.push_back(r * std::cos(phi));
    return;
  }
  double norm2 = 0.0;
  do {
    out.resize(base);
    norm2 = 0.0;
    for (int k = 0; k < n - 1; ++k) {
      const double g = gauss(rng);
      out.push_back(g);
      norm2 += g * g;
    }
  } while (norm2 == 0.0);
  const double scale = r * std::sin(phi) / std::sqrt(norm2);
  for (int k = 0; k < n - 1; ++k) out[base + k] *= scale;
  out.push_back(r * std::cos(phi));
}

}  // namespace

double cap_colatitude_for_fraction(int dimension, double fraction) {
  if (!(fraction >= 0.0) || !(fraction <= 1.0))
    throw std::domain_error("cap_colatitude_for_fraction: fraction must lie in [0, 1]");
  const SphereChordDistribution dist(dimension, 1.0);
  if (fraction == 0.0) return 0.0;
  if (fraction == 1.0) return pi;
  double lo = 0.0;
  double hi = pi;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cap_surface_fraction(dist, mid) < fraction ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PointSet sample_sphere_uniform(int dimension, double radius, std::size_t count,
                               RandomSeed seed) {
  require_sampler_params(dimension, radius, 2, "sample_sphere_uniform");
  auto rng = make_engine(seed);
  std::normal_distribution<double> gauss;
  PointSet set{dimension, radius, {}, {}};
  set.coords.reserve(count * dimension);
  for (std::size_t i = 0; i < count; ++i)
    append_sphere_point(rng, gauss, radius, dimension, set.coords);
  return set;
}

PointSet sample_hemisphere_uniform(int dimension, double radius, std::size_t count,
                                   RandomSeed seed) {
  require_sampler_params(dimension, radius, 3, "sample_hemisphere_uniform");
  PointSet set = sample_sphere_uniform(dimension, radius, count, seed);
  for (std::size_t i = 0; i < count; ++i) {
    double& last = set.coords[i * dimension + dimension - 1];
    last = std::fabs(last);
  }
  return set;
}

PointSet sample_uniform(Geometry geometry, int dimension, double radius,
                        std::size_t count, RandomSeed seed) {
  return geometry == Geometry::sphere
             ? sample_sphere_uniform(dimension, radius, count, seed)
             : sample_hemisphere_uniform(dimension, radius, count, seed);
}

PointSet sample_cube_uniform(int dimension, std::size_t count, RandomSeed seed) {
  if (dimension < 2) throw std::domain_error("sample_cube_uniform: dimension too small");
  auto rng = make_engine(seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  PointSet set{dimension, 1.0, {}, {}};
  set.coords.reserve(count * dimension);
  for (std::size_t i = 0; i < count * static_cast<std::size_t>(dimension); ++i)
    set.coords.push_back(box(rng));
  return set;
}

PointSet sample_faulty_cube_projection(int dimension, double radius, std::size_t count,
                                       RandomSeed seed) {
  require_sampler_params(dimension, radius, 2, "sample_faulty_cube_projection");
  PointSet set = sample_cube_uniform(dimension, count, seed);
  set.radius = radius;
  for (std::size_t i = 0; i < count; ++i) {
    auto p = set.point(i);
    double norm2 = 0.0;
    for (double v : p) norm2 += v * v;
    if (norm2 == 0.0) {
      p[0] = radius;
      for (int k = 1; k < dimension; ++k) p[k] = 0.0;
      continue;
    }
    const double scale = radius / std::sqrt(norm2);
    for (double& v : p) v *= scale;
  }
  return set;
}

PointSet sample_cap_mixture(int dimension, double radius, std::size_t count,
                            double cap_fraction, double informational_fraction,
                            RandomSeed seed) {
  require_sampler_params(dimension, radius, 2, "sample_cap_mixture");
  if (!(cap_fraction > 0.0) || !(cap_fraction < 1.0))
    throw std::domain_error("sample_cap_mixture: cap_fraction must lie in (0, 1)");
  if (!(informational_fraction >= 0.0) || !(informational_fraction <= 1.0))
    throw std::domain_error("sample_cap_mixture: informational_fraction must lie in [0, 1]");
  const auto cap_count =
      static_cast<std::size_t>(std::llround(informational_fraction * static_cast<double>(count)));
  const std::size_t background_count = count - cap_count;

  auto rng = make_engine(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointSet set{dimension, radius, {}, {}};
  set.coords.reserve(count * dimension);
  set.labels.reserve(count);

  for (std::size_t i = 0; i < background_count; ++i) {
    append_sphere_point(rng, gauss, radius, dimension, set.coords);
    set.labels.push_back(label_background);
  }

  const SphereChordDistribution shell(dimension, radius);
  const double cap_phi = cap_colatitude_for_fraction(dimension, cap_fraction);
  const double cos_phi = std::cos(cap_phi);
  for (std::size_t i = 0; i < cap_count; ++i) {
    if (cap_fraction >= 0.01) {
      // Rejection from the full sphere; acceptance rate is cap_fraction.
      for (;;) {
        const std::size_t base = set.coords.size();
        append_sphere_point(rng, gauss, radius, dimension, set.coords);
        if (set.coords[base + dimension - 1] >= cos_phi * radius) break;
        set.coords.resize(base);
      }
    } else {
      append_cap_point_inverse_cdf(rng, gauss, unit, shell, cap_fraction, set.coords);
    }
    set.labels.push_back(label_informational);
  }
  return set;
}

PointSet sample_embedded_uniform(int subset_dimension, int dimension, double radius,
                                 std::size_t subset_count, std::size_t total_count,
                                 Geometry superset_geometry, RandomSeed seed) {
  require_sampler_params(dimension, radius, superset_geometry == Geometry::sphere ? 2 : 3,
                         "sample_embedded_uniform");
  if (subset_dimension < 2 || subset_dimension >= dimension)
    throw std::domain_error("sample_embedded_uniform: need 2 <= subset_dimension < dimension");
  if (subset_count > total_count)
    throw std::domain_error("sample_embedded_uniform: subset_count exceeds total_count");

  const std::size_t background_count = total_count - subset_count;
  PointSet set{dimension, radius, {}, {}};
  set.coords.reserve(total_count * dimension);
  set.labels.reserve(total_count);

  PointSet background =
      sample_uniform(superset_geometry, dimension, radius, background_count, seed.derive(1));
  set.coords.insert(set.coords.end(), background.coords.begin(), background.coords.end());
  set.labels.insert(set.labels.end(), background_count, label_background);

  PointSet core = sample_sphere_uniform(subset_dimension, radius, subset_count, seed.derive(2));
  for (std::size_t i = 0; i < subset_count; ++i) {
    const auto p = core.point(i);
    set.coords.insert(set.coords.end(), p.begin(), p.end());
    set.coords.insert(set.coords.end(), dimension - subset_dimension, 0.0);
    set.labels.push_back(label_informational);
  }
  return set;
}

}  // namespace hyperchord
