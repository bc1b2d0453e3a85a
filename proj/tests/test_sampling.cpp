#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hyperchord/chord_distributions.hpp"
#include "hyperchord/empirical.hpp"
#include "hyperchord/sampling.hpp"
#include "hyperchord/uniformity.hpp"

using namespace hyperchord;

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double root2 = 1.41421356237309504880;

double point_norm(const PointSet& set, std::size_t i) {
  double norm2 = 0.0;
  for (double v : set.point(i)) norm2 += v * v;
  return std::sqrt(norm2);
}

void check_norms(const PointSet& set, double radius) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(point_norm(set, i) == doctest::Approx(radius).epsilon(1e-12));
  }
}

// Mean and U-statistic standard error of a per-pair kernel evaluated over
// all distinct pairs. The variance combines the projection term (per-point
// conditional means) with the degenerate-kernel term, so it stays honest
// even when the projection vanishes, as it does for squared distances on a
// centred sphere.
template <typename Kernel>
std::pair<double, double> pair_mean_and_se(const PointSet& set, Kernel&& kernel) {
  const std::size_t m = set.size();
  std::vector<double> per_point(m, 0.0);
  double total = 0.0;
  double total_sq = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double h = kernel(set.point(i), set.point(j));
      per_point[i] += h;
      per_point[j] += h;
      total += h;
      total_sq += h * h;
    }
  }
  const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
  const double mean = total / pairs;
  double var_g = 0.0;
  for (double g : per_point) {
    const double centred = g / static_cast<double>(m - 1) - mean;
    var_g += centred * centred;
  }
  var_g /= static_cast<double>(m);
  const double var_h = total_sq / pairs - mean * mean;
  const double variance = 4.0 * var_g / static_cast<double>(m) +
                          2.0 * std::max(var_h, 0.0) / (pairs * 2.0);
  return {mean, std::sqrt(std::max(variance, 0.0))};
}

double pair_distance(std::span<const double> p, std::span<const double> q) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) d2 += (p[k] - q[k]) * (p[k] - q[k]);
  return std::sqrt(d2);
}

}  // namespace

TEST_CASE("samplers are deterministic and streams are independent") {
  const RandomSeed seed{42, 7};
  const PointSet a = sample_sphere_uniform(4, 1.5, 100, seed);
  const PointSet b = sample_sphere_uniform(4, 1.5, 100, seed);
  CHECK(a.coords == b.coords);
  const PointSet c = sample_sphere_uniform(4, 1.5, 100, RandomSeed{42, 8});
  CHECK(a.coords != c.coords);
  const PointSet d = sample_sphere_uniform(4, 1.5, 100, RandomSeed{43, 7});
  CHECK(a.coords != d.coords);

  CHECK(sample_hemisphere_uniform(3, 1.0, 50, seed).coords ==
        sample_hemisphere_uniform(3, 1.0, 50, seed).coords);
  CHECK(sample_faulty_cube_projection(2, 1.0, 50, seed).coords ==
        sample_faulty_cube_projection(2, 1.0, 50, seed).coords);
  const PointSet m1 = sample_cap_mixture(3, 1.0, 80, 0.05, 0.25, seed);
  const PointSet m2 = sample_cap_mixture(3, 1.0, 80, 0.05, 0.25, seed);
  CHECK(m1.coords == m2.coords);
  CHECK(m1.labels == m2.labels);
  const PointSet e1 = sample_embedded_uniform(2, 5, 1.0, 30, 90, Geometry::sphere, seed);
  const PointSet e2 = sample_embedded_uniform(2, 5, 1.0, 30, 90, Geometry::sphere, seed);
  CHECK(e1.coords == e2.coords);
  CHECK(e1.labels == e2.labels);

  // Derived streams differ from the parent and from each other.
  CHECK(seed.derive(1).stream_id != seed.stream_id);
  CHECK(seed.derive(1).stream_id != seed.derive(2).stream_id);
  CHECK(seed.derive(1).seed == seed.seed);
}

TEST_CASE("every generator returns points of the requested norm") {
  const RandomSeed seed{11, 0};
  for (int n : {2, 3, 7}) {
    for (double r : {0.5, 1.0, 2.0}) {
      check_norms(sample_sphere_uniform(n, r, 200, seed), r);
      check_norms(sample_faulty_cube_projection(n, r, 200, seed), r);
      if (n >= 3) check_norms(sample_hemisphere_uniform(n, r, 200, seed), r);
    }
  }
  check_norms(sample_cap_mixture(4, 2.0, 300, 0.05, 0.3, seed), 2.0);
  check_norms(sample_embedded_uniform(2, 4, 1.5, 100, 250, Geometry::sphere, seed), 1.5);
}

TEST_CASE("samplers validate their parameters") {
  const RandomSeed seed{1, 0};
  CHECK_THROWS_AS(sample_sphere_uniform(1, 1.0, 10, seed), std::domain_error);
  CHECK_THROWS_AS(sample_sphere_uniform(3, 0.0, 10, seed), std::domain_error);
  CHECK_THROWS_AS(sample_hemisphere_uniform(2, 1.0, 10, seed), std::domain_error);
  CHECK_THROWS_AS(sample_cube_uniform(1, 10, seed), std::domain_error);
  CHECK_THROWS_AS(sample_faulty_cube_projection(3, -1.0, 10, seed), std::domain_error);
  CHECK_THROWS_AS(sample_cap_mixture(3, 1.0, 10, 0.0, 0.5, seed), std::domain_error);
  CHECK_THROWS_AS(sample_cap_mixture(3, 1.0, 10, 1.0, 0.5, seed), std::domain_error);
  CHECK_THROWS_AS(sample_cap_mixture(3, 1.0, 10, 0.05, -0.1, seed), std::domain_error);
  CHECK_THROWS_AS(sample_cap_mixture(3, 1.0, 10, 0.05, 1.1, seed), std::domain_error);
  CHECK_THROWS_AS(sample_embedded_uniform(1, 4, 1.0, 5, 10, Geometry::sphere, seed),
                  std::domain_error);
  CHECK_THROWS_AS(sample_embedded_uniform(4, 4, 1.0, 5, 10, Geometry::sphere, seed),
                  std::domain_error);
  CHECK_THROWS_AS(sample_embedded_uniform(2, 4, 1.0, 20, 10, Geometry::sphere, seed),
                  std::domain_error);
}

TEST_CASE("hemisphere samples keep the last coordinate non-negative") {
  const PointSet set = sample_hemisphere_uniform(5, 1.0, 1000, RandomSeed{5, 5});
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(set.point(i)[4] >= 0.0);
  }
}

TEST_CASE("sphere samples reproduce the pairwise distance law") {
  const PointSet set = sample_sphere_uniform(5, 1.0, 2000, RandomSeed{2024, 1});
  const auto [mean_sq, se_sq] = pair_mean_and_se(
      set, [](std::span<const double> p, std::span<const double> q) {
        const double d = pair_distance(p, q);
        return d * d;
      });
  CHECK(std::fabs(mean_sq - 2.0) <= 3.0 * se_sq);

  // Median pairwise distance sits at sqrt(2) R; the deviation converts to
  // the cdf scale through the density at the median.
  const auto [below, se_below] = pair_mean_and_se(
      set, [](std::span<const double> p, std::span<const double> q) {
        return pair_distance(p, q) <= root2 ? 1.0 : 0.0;
      });
  CHECK(std::fabs(below - 0.5) <= 3.0 * se_below);
  std::vector<double> dists;
  dists.reserve(set.size() * (set.size() - 1) / 2);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      dists.push_back(pair_distance(set.point(i), set.point(j)));
    }
  }
  std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
  const double density_at_median = sphere_pdf(SphereChordDistribution(5, 1.0), root2);
  CHECK(std::fabs(dists[dists.size() / 2] - root2) <=
        3.0 * se_below / density_at_median + 1e-4);
}

TEST_CASE("hemisphere samples reproduce their distance law in four dimensions") {
  const PointSet set = sample_hemisphere_uniform(4, 1.0, 5000, RandomSeed{77, 3});
  const auto [mean_d, se_d] =
      pair_mean_and_se(set, [](std::span<const double> p, std::span<const double> q) {
        return pair_distance(p, q);
      });
  CHECK(std::fabs(mean_d - 1.218) <= 3.0 * se_d + 1e-3);
  const auto [below, se_below] = pair_mean_and_se(
      set, [](std::span<const double> p, std::span<const double> q) {
        return pair_distance(p, q) <= root2 ? 1.0 : 0.0;
      });
  CHECK(std::fabs(below - (0.75 - 1.0 / (pi * pi))) <= 3.0 * se_below);
}

TEST_CASE("cube draws land inside the unit disc at the circle rate") {
  const PointSet cube = sample_cube_uniform(2, 20000, RandomSeed{31, 4});
  std::size_t inside = 0;
  for (std::size_t i = 0; i < cube.size(); ++i) {
    const auto p = cube.point(i);
    inside += p[0] * p[0] + p[1] * p[1] <= 1.0;
  }
  const double frac = static_cast<double>(inside) / static_cast<double>(cube.size());
  const double sigma = std::sqrt(0.25 * pi * (1.0 - 0.25 * pi) / static_cast<double>(cube.size()));
  CHECK(std::fabs(frac - 0.25 * pi) <= 3.0 * sigma);
}

TEST_CASE("faulty projection generator carries its known bias") {
  const PointSet set = sample_faulty_cube_projection(2, 1.0, 10000, RandomSeed{61, 9});
  const auto hist = distance_distribution(set, DistanceMode::all_pairs(), 200);
  const double l1 = l1_distance(hist, SphereChordDistribution(2, 1.0));
  CHECK(l1 >= 0.0253 * 0.8);
  CHECK(l1 <= 0.0253 * 1.2);
}

TEST_CASE("cap mixture produces the exact labeled split inside the cap") {
  const int n = 6;
  const double r = 1.0;
  const PointSet set = sample_cap_mixture(n, r, 2500, 0.05, 0.2, RandomSeed{12, 6});
  REQUIRE(set.labels.size() == 2500);
  std::size_t informational = 0;
  const double cap_cos = std::cos(cap_colatitude_for_fraction(n, 0.05));
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.labels[i] == label_informational) {
      ++informational;
      CHECK(set.point(i)[n - 1] >= cap_cos * r - 1e-9);
    }
  }
  CHECK(informational == 500);
}

TEST_CASE("cap mixture inverse-cdf path stays inside narrow caps") {
  for (int n : {2, 6}) {
    const double fraction = 0.005;
    const PointSet set = sample_cap_mixture(n, 2.0, 400, fraction, 0.3, RandomSeed{9, 2});
    const double cap_cos = std::cos(cap_colatitude_for_fraction(n, fraction));
    std::size_t informational = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set.labels[i] != label_informational) continue;
      ++informational;
      CHECK(set.point(i)[n - 1] >= cap_cos * 2.0 - 1e-9);
    }
    CHECK(informational == 120);
    check_norms(set, 2.0);
  }
}

TEST_CASE("cap mixture with zero informational fraction is a plain uniform sample") {
  const RandomSeed seed{415, 1};
  const PointSet mixture = sample_cap_mixture(4, 1.0, 300, 0.05, 0.0, seed);
  const PointSet plain = sample_sphere_uniform(4, 1.0, 300, seed);
  CHECK(mixture.coords == plain.coords);
  for (auto label : mixture.labels) CHECK(label == label_background);
}

TEST_CASE("embedded subsets are zero-padded and labeled") {
  const int n_sub = 2;
  const int n = 5;
  const PointSet set =
      sample_embedded_uniform(n_sub, n, 1.0, 400, 1000, Geometry::sphere, RandomSeed{88, 8});
  REQUIRE(set.labels.size() == 1000);
  std::size_t embedded = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.labels[i] == label_informational) {
      ++embedded;
      const auto p = set.point(i);
      for (int k = n_sub; k < n; ++k) CHECK(p[k] == 0.0);
      CHECK(std::sqrt(p[0] * p[0] + p[1] * p[1]) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(embedded == 400);

  const PointSet hemi =
      sample_embedded_uniform(2, 4, 1.0, 100, 400, Geometry::hemisphere, RandomSeed{88, 9});
  for (std::size_t i = 0; i < hemi.size(); ++i) {
    if (hemi.labels[i] == label_background) CHECK(hemi.point(i)[3] >= 0.0);
  }
}

TEST_CASE("degenerate embedding with subset equal to the whole set") {
  const PointSet set =
      sample_embedded_uniform(3, 6, 1.0, 250, 250, Geometry::sphere, RandomSeed{14, 0});
  CHECK(set.size() == 250);
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(set.labels[i] == label_informational);
    for (int k = 3; k < 6; ++k) CHECK(set.point(i)[k] == 0.0);
  }
  const auto hist = distance_distribution(set, DistanceMode::all_pairs(), 100);
  CHECK(l1_distance(hist, SphereChordDistribution(3, 1.0)) < 0.1);
}

TEST_CASE("embedded subset distance histograms converge at the pair-count rate") {
  const RandomSeed seed{3030, 5};
  const auto l1_of = [&](std::size_t m_sub, std::uint64_t salt) {
    const PointSet set =
        sample_embedded_uniform(2, 6, 1.0, m_sub, m_sub, Geometry::sphere, seed.derive(salt));
    const auto hist = distance_distribution(set, DistanceMode::all_pairs(), 100);
    return l1_distance(hist, SphereChordDistribution(2, 1.0));
  };
  // Averaged over a few replicates; quadrupling the set multiplies the pair
  // count by ~16, so the L1 level should shrink by roughly 4.
  double small = 0.0;
  double large = 0.0;
  for (std::uint64_t s = 0; s < 4; ++s) {
    small += l1_of(500, 10 + s);
    large += l1_of(2000, 20 + s);
  }
  const double ratio = small / large;
  CHECK(ratio > 2.3);
  CHECK(ratio < 6.5);
}

TEST_CASE("cap colatitude inverts the cap surface fraction") {
  for (int n : {2, 3, 6, 10}) {
    const SphereChordDistribution dist(n, 1.0);
    CHECK(cap_colatitude_for_fraction(n, 0.0) == 0.0);
    CHECK(cap_colatitude_for_fraction(n, 1.0) == doctest::Approx(pi).epsilon(1e-12));
    // sin^2 rounds to 1 within ~1.5e-8 of pi/2, so the half-surface preimage
    // is a plateau of that width rather than a point.
    CHECK(std::fabs(cap_colatitude_for_fraction(n, 0.5) - 0.5 * pi) <= 2e-8);
    for (double f : {0.01, 0.1, 0.37, 0.8, 0.99}) {
      const double phi = cap_colatitude_for_fraction(n, f);
      CHECK(cap_surface_fraction(dist, phi) == doctest::Approx(f).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(cap_colatitude_for_fraction(3, -0.1), std::domain_error);
  CHECK_THROWS_AS(cap_colatitude_for_fraction(3, 1.1), std::domain_error);
}

TEST_CASE("uniform generator passes and faulty generator fails the uniformity screen") {
  const std::size_t m = 2000;
  const CalibrationTable table =
      calibrate_threshold(3, 1.0, m, Geometry::sphere, DistanceMode::Kind::all_pairs, 200, 100,
                          1.0, RandomSeed{424242, 0});
  int uniform_passes = 0;
  int faulty_flags = 0;
  for (int run = 0; run < 100; ++run) {
    const RandomSeed seed{900 + static_cast<std::uint64_t>(run), 1};
    const PointSet good = sample_sphere_uniform(3, 1.0, m, seed);
    uniform_passes += !test_uniformity(good, Geometry::sphere, table).non_uniform;
    const PointSet bad = sample_faulty_cube_projection(3, 1.0, m, seed);
    faulty_flags += test_uniformity(bad, Geometry::sphere, table).non_uniform;
  }
  CHECK(uniform_passes >= 95);
  CHECK(faulty_flags >= 99);
}
