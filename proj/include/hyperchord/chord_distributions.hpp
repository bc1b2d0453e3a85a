#pragma once

#include "hyperchord/special_functions.hpp"

namespace hyperchord {

// Chord length distribution of a uniform point pair on the full sphere
// S^(N-1) of radius R embedded in R^N. Support is [0, 2R].
struct SphereChordDistribution {
  int dimension;
  double radius;

  SphereChordDistribution(int dimension_, double radius_);
};

// Same quantity when both endpoints are uniform on a closed half-sphere.
struct HemisphereChordDistribution {
  int dimension;
  double radius;

  HemisphereChordDistribution(int dimension_, double radius_);
};

// Fraction of the sphere's surface inside a cap of the given colatitude
// (angle from the cap's pole, in [0, pi]).
double cap_surface_fraction(const SphereChordDistribution& dist, double colatitude);

double sphere_cdf(const SphereChordDistribution& dist, double d);
double sphere_pdf(const SphereChordDistribution& dist, double d);

// Raw moment E[D^k], k >= 0.
double sphere_moment(const SphereChordDistribution& dist, int k);
double sphere_mean(const SphereChordDistribution& dist);
double sphere_variance(const SphereChordDistribution& dist);

// Inverse of sphere_cdf, bisection to 1e-10 absolute in d.
double sphere_quantile(const SphereChordDistribution& dist, double p);

// Probability that a uniform random chord is longer than the side of the
// inscribed regular triangle (the classical random-chord puzzle, extended
// to N dimensions).
double bertrand_probability(const SphereChordDistribution& dist);

QuadratureSpec default_hemisphere_quadrature();

// CDF of the hemisphere chord length. Closed form for N = 4, numeric
// construction otherwise.
double hemisphere_cdf(const HemisphereChordDistribution& dist, double d,
                      const QuadratureSpec& spec = default_hemisphere_quadrature());

// Closed-form CDF, only valid for N = 4.
double hemisphere_cdf_closed_form_n4(const HemisphereChordDistribution& dist, double d);

// Numeric CDF via the cap decomposition, any N >= 3.
double hemisphere_cdf_numeric(const HemisphereChordDistribution& dist, double d,
                              const QuadratureSpec& spec = default_hemisphere_quadrature());

// Central-difference density, step 1e-5 * R, clamped at the support ends.
double hemisphere_pdf(const HemisphereChordDistribution& dist, double d,
                      const QuadratureSpec& spec = default_hemisphere_quadrature());

struct HemisphereStats {
  double mean;
  double median;
  double variance;
};

// Mean, median and variance by quadrature and root finding, 3 <= N <= 12.
HemisphereStats hemisphere_stats(const HemisphereChordDistribution& dist);

}  // namespace hyperchord
