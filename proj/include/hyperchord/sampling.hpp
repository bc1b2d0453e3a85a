#pragma once

#include <cstddef>

#include "hyperchord/point_set.hpp"

namespace hyperchord {

PointSet sample_sphere_uniform(int dimension, double radius, std::size_t count,
                               RandomSeed seed);

// Uniform on the closed half-sphere with last coordinate >= 0.
PointSet sample_hemisphere_uniform(int dimension, double radius, std::size_t count,
                                   RandomSeed seed);

PointSet sample_uniform(Geometry geometry, int dimension, double radius,
                        std::size_t count, RandomSeed seed);

// Uniform draws from the cube [-1, 1]^N, no projection.
PointSet sample_cube_uniform(int dimension, std::size_t count, RandomSeed seed);

// Deliberately wrong sphere generator: cube draws projected radially. The
// corners get extra density, so the output is detectably non-uniform.
PointSet sample_faulty_cube_projection(int dimension, double radius, std::size_t count,
                                       RandomSeed seed);

// Background points uniform on the sphere plus an informational fraction
// drawn uniformly from a polar cap covering cap_fraction of the surface.
// Labels mark the two populations.
PointSet sample_cap_mixture(int dimension, double radius, std::size_t count,
                            double cap_fraction, double informational_fraction,
                            RandomSeed seed);

// Superset uniform on the chosen geometry in R^N plus subset_count points
// uniform on the equatorial sub-sphere S^(subset_dimension - 1), zero-padded
// to N coordinates. Labels mark the embedded subset.
PointSet sample_embedded_uniform(int subset_dimension, int dimension, double radius,
                                 std::size_t subset_count, std::size_t total_count,
                                 Geometry superset_geometry, RandomSeed seed);

// Colatitude of the polar cap that covers the given surface fraction.
double cap_colatitude_for_fraction(int dimension, double fraction);

}  // namespace hyperchord
