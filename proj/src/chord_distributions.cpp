#include "hyperchord/chord_distributions.hpp"

#include <algorithm>
#include <cmath>

namespace hyperchord {

namespace {

constexpr double pi = 3.14159265358979323846;

double half_shape(int n) { return 0.5 * (n - 1); }

// x = (d/R)^2 - (d/R)^4 / 4, clamped to [0, 1]. This is sin^2 of the
// angular radius of the cap whose boundary chord is d.
double chord_x(double d, double r) {
  const double t = (d / r) * (d / r);
  return std::clamp(t * (1.0 - 0.25 * t), 0.0, 1.0);
}

void require_support_params(int n, double r, int min_dim, const char* who) {
  if (n < min_dim) throw std::domain_error(std::string(who) + ": dimension too small");
  if (!(r > 0.0)) throw std::domain_error(std::string(who) + ": radius must be positive");
}

}  // namespace

SphereChordDistribution::SphereChordDistribution(int dimension_, double radius_)
    : dimension(dimension_), radius(radius_) {
  require_support_params(dimension_, radius_, 2, "SphereChordDistribution");
}

HemisphereChordDistribution::HemisphereChordDistribution(int dimension_, double radius_)
    : dimension(dimension_), radius(radius_) {
  require_support_params(dimension_, radius_, 3, "HemisphereChordDistribution");
}

double cap_surface_fraction(const SphereChordDistribution& dist, double colatitude) {
  if (!(colatitude >= 0.0) || !(colatitude <= pi))
    throw std::domain_error("cap_surface_fraction: colatitude must lie in [0, pi]");
  const double a = half_shape(dist.dimension);
  if (colatitude <= 0.5 * pi) {
    const double s = std::sin(colatitude);
    return 0.5 * regularized_incomplete_beta(s * s, a, 0.5);
  }
  const double s = std::sin(pi - colatitude);
  return 1.0 - 0.5 * regularized_incomplete_beta(s * s, a, 0.5);
}

double sphere_cdf(const SphereChordDistribution& dist, double d) {
  const double r = dist.radius;
  if (!(d > 0.0)) return 0.0;
  if (d >= 2.0 * r) return 1.0;
  const double a = half_shape(dist.dimension);
  const double t = (d / r) * (d / r);
  const double x = std::clamp(t * (1.0 - 0.25 * t), 0.0, 1.0);
  if (x <= 0.9) {
    const double half_ix = 0.5 * regularized_incomplete_beta(x, a, 0.5);
    return t <= 2.0 ? half_ix : 1.0 - half_ix;
  }
  // Near the half-support point x suffers cancellation; 1 - x = v^2 with
  // v = t/2 - 1 is exact there, so go through the mirrored tail instead.
  const double v = 0.5 * t - 1.0;
  const double tail = 0.5 * regularized_incomplete_beta(std::clamp(v * v, 0.0, 1.0), 0.5, a);
  return v <= 0.0 ? 0.5 - tail : 0.5 + tail;
}

double sphere_pdf(const SphereChordDistribution& dist, double d) {
  const int n = dist.dimension;
  const double r = dist.radius;
  if (d < 0.0 || d > 2.0 * r) return 0.0;
  if (d == 0.0) return n == 2 ? 1.0 / (pi * r) : 0.0;
  const double a = half_shape(n);
  const double x = chord_x(d, r);
  const double front = d / (r * r) * std::exp(-log_beta(a, 0.5));
  return front * std::pow(x, 0.5 * (n - 3));
}

double sphere_moment(const SphereChordDistribution& dist, int k) {
  if (k < 0) throw std::domain_error("sphere_moment: order must be non-negative");
  if (k == 0) return 1.0;
  const int n = dist.dimension;
  const double a = half_shape(n);
  const double ln = (k + n - 2) * std::log(2.0) + log_beta(0.5 * (k + n - 1), a) -
                    log_beta(a, 0.5) + k * std::log(dist.radius);
  return std::exp(ln);
}

double sphere_mean(const SphereChordDistribution& dist) {
  const int n = dist.dimension;
  const double ln = 2.0 * log_gamma(0.5 * n) + (n - 1) * std::log(2.0) -
                    log_gamma(n - 0.5) - 0.5 * std::log(pi) + std::log(dist.radius);
  return std::exp(ln);
}

double sphere_variance(const SphereChordDistribution& dist) {
  const double mu = sphere_mean(dist);
  return 2.0 * dist.radius * dist.radius - mu * mu;
}

double sphere_quantile(const SphereChordDistribution& dist, double p) {
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::domain_error("sphere_quantile: p must lie in [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 2.0 * dist.radius;
  double lo = 0.0;
  double hi = 2.0 * dist.radius;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (sphere_cdf(dist, mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double bertrand_probability(const SphereChordDistribution& dist) {
  return 0.5 * regularized_incomplete_beta(0.75, half_shape(dist.dimension), 0.5);
}

QuadratureSpec default_hemisphere_quadrature() { return {1e-11, std::size_t{1} << 20}; }

namespace {

// Fraction of the ring at angle psi from a point with colatitude phic that
// lies in the upper halfspace. The ring is a copy of S^(N-2); the cut is a
// cap of that lower-dimensional sphere.
double ring_fraction(int n, double psi, double phic) {
  const double num = std::cos(psi) * std::cos(phic);
  const double den = std::sin(psi) * std::sin(phic);
  if (den <= 0.0) return num >= 0.0 ? 1.0 : 0.0;
  const double tau = -num / den;
  if (tau <= -1.0) return 1.0;
  if (tau >= 1.0) return 0.0;
  return cap_surface_fraction(SphereChordDistribution(n - 1, 1.0), std::acos(tau));
}

// Lower-branch hemisphere CDF (d <= sqrt(2) R) by averaging, over the first
// endpoint's height, the mass of its distance cap clipped to the hemisphere.
// Caps entirely above the equator contribute their full mass (term1); the
// rest is a two-level quadrature over height and ring angle.
double hemisphere_lower_numeric(int n, double r, double d, const QuadratureSpec& spec) {
  if (!(d > 0.0)) return 0.0;
  const double a = half_shape(n);
  const double x = chord_x(d, r);
  if (x <= 0.0) return 0.0;
  const double ix = regularized_incomplete_beta(x, a, 0.5);
  const double term1 = ix * (1.0 - regularized_incomplete_beta(x, 0.5, a));

  const double u = std::clamp(1.0 - 0.5 * (d / r) * (d / r), 0.0, 1.0);
  const double phid = std::acos(u);
  const double cstar = std::min(r, d * std::sqrt(std::max(0.0, 1.0 - 0.25 * (d / r) * (d / r))));
  if (cstar <= 0.0) return term1;

  QuadratureSpec inner = spec;
  inner.absolute_tolerance = std::max(0.1 * spec.absolute_tolerance, 1e-13);
  inner.max_subdivisions = std::min<std::size_t>(inner.max_subdivisions, 4096);
  const double b = beta(a, 0.5);

  // Ring angles below psi1 = pi/2 - phic see a ring entirely above the
  // equator (fraction 1); that stretch integrates in closed form. The rest
  // is quadrature in s with psi = psi1 + s^2, which turns the half-power
  // behaviour of the ring fraction at psi1 into a polynomial one.
  const auto clipped_cap = [&](double c) {
    const double phic = std::acos(std::clamp(c / r, -1.0, 1.0));
    const double psi1 = std::clamp(0.5 * pi - phic, 0.0, phid);
    const double s1 = std::sin(psi1);
    double mass = 0.5 * b * regularized_incomplete_beta(std::clamp(s1 * s1, 0.0, 1.0), a, 0.5);
    if (phid > psi1) {
      const auto ring = [&](double s) {
        const double psi = psi1 + s * s;
        return 2.0 * s * std::pow(std::sin(psi), n - 2) * ring_fraction(n, psi, phic);
      };
      mass += integrate(ring, 0.0, std::sqrt(phid - psi1), inner);
    }
    return mass;
  };
  const auto height_weighted = [&](double c) {
    const double w = std::max(0.0, 1.0 - (c / r) * (c / r));
    return std::pow(w, 0.5 * (n - 3)) * clipped_cap(c);
  };
  const double term2 = 4.0 / (b * b * r) * integrate(height_weighted, 0.0, cstar, spec);
  return term1 + term2;
}

double hemisphere_lower_closed_n4(double r, double d) {
  if (!(d > 0.0)) return 0.0;
  const double u = std::clamp(1.0 - 0.5 * (d / r) * (d / r), 0.0, 1.0);
  const double x = chord_x(d, r);
  const double ix_a = regularized_incomplete_beta(x, 1.5, 0.5);
  const double ix_b = regularized_incomplete_beta(x, 0.5, 1.5);
  const double p1 = ix_a * (1.0 - 0.5 * ix_b);
  const double p2 = 2.0 * (u * u * x) / (pi * pi);
  const double theta0 = std::asin(std::min(1.0, std::sqrt(x)));
  const double p3 =
      4.0 / (pi * pi) *
      integrate([](double t) { return t * std::cos(t) * std::cos(t); }, 0.0, theta0,
                QuadratureSpec{1e-12, std::size_t{1} << 20});
  return p1 - p2 + p3;
}

template <typename Lower>
double hemisphere_cdf_dispatch(const HemisphereChordDistribution& dist, double d,
                               Lower&& lower) {
  const double r = dist.radius;
  if (!(d > 0.0)) return 0.0;
  if (d >= 2.0 * r) return 1.0;
  if (d * d <= 2.0 * r * r) return lower(d);
  const double mirrored = std::sqrt(std::max(0.0, 4.0 * r * r - d * d));
  const SphereChordDistribution full(dist.dimension, r);
  return 2.0 * sphere_cdf(full, d) + lower(mirrored) - 1.0;
}

}  // namespace

double hemisphere_cdf_closed_form_n4(const HemisphereChordDistribution& dist, double d) {
  if (dist.dimension != 4)
    throw std::domain_error("hemisphere_cdf_closed_form_n4: dimension must be 4");
  return hemisphere_cdf_dispatch(dist, d,
                                 [&](double dd) { return hemisphere_lower_closed_n4(dist.radius, dd); });
}

double hemisphere_cdf_numeric(const HemisphereChordDistribution& dist, double d,
                              const QuadratureSpec& spec) {
  return hemisphere_cdf_dispatch(dist, d, [&](double dd) {
    return hemisphere_lower_numeric(dist.dimension, dist.radius, dd, spec);
  });
}

double hemisphere_cdf(const HemisphereChordDistribution& dist, double d,
                      const QuadratureSpec& spec) {
  if (dist.dimension == 4) return hemisphere_cdf_closed_form_n4(dist, d);
  return hemisphere_cdf_numeric(dist, d, spec);
}

double hemisphere_pdf(const HemisphereChordDistribution& dist, double d,
                      const QuadratureSpec& spec) {
  const double r = dist.radius;
  if (d < 0.0 || d > 2.0 * r) return 0.0;
  const double h = 1e-5 * r;
  const double lo = std::max(0.0, d - h);
  const double hi = std::min(2.0 * r, d + h);
  const double df = hemisphere_cdf(dist, hi, spec) - hemisphere_cdf(dist, lo, spec);
  return std::max(0.0, df / (hi - lo));
}

HemisphereStats hemisphere_stats(const HemisphereChordDistribution& dist) {
  const int n = dist.dimension;
  if (n > 12) throw std::domain_error("hemisphere_stats: supported for dimension <= 12");
  const double r = dist.radius;
  // Stats targets sit at 1e-3 scale; a 1e-8 cdf with 1e-6 quadrature leaves
  // plenty of headroom without paying for the full default tolerance.
  const QuadratureSpec cdf_spec{1e-8, std::size_t{1} << 20};
  const QuadratureSpec stat_spec{1e-6 * std::max(1.0, r * r), std::size_t{1} << 16};

  const auto survival = [&](double d) { return 1.0 - hemisphere_cdf(dist, d, cdf_spec); };
  const double mean = integrate(survival, 0.0, 2.0 * r, stat_spec);
  const double second =
      integrate([&](double d) { return 2.0 * d * survival(d); }, 0.0, 2.0 * r, stat_spec);
  const double variance = second - mean * mean;

  double lo = 0.0;
  double hi = 2.0 * r;
  for (int it = 0; it < 200 && hi - lo > 1e-7 * r; ++it) {
    const double mid = 0.5 * (lo + hi);
    (hemisphere_cdf(dist, mid, cdf_spec) < 0.5 ? lo : hi) = mid;
  }
  return {mean, 0.5 * (lo + hi), variance};
}

}  // namespace hyperchord
