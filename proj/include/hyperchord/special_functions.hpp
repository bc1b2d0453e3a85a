#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace hyperchord {

// Thrown when a numeric routine cannot reach its requested accuracy.
// best_estimate() carries the value computed so far.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double best_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate) {}

  double best_estimate() const { return best_estimate_; }

 private:
  double best_estimate_;
};

struct QuadratureSpec {
  double absolute_tolerance = 1e-10;
  std::size_t max_subdivisions = std::size_t{1} << 20;
};

// log Gamma(x) for x > 0.
double log_gamma(double x);

double log_beta(double a, double b);
double beta(double a, double b);

// Regularized incomplete beta I_x(a, b), a > 0, b > 0, x in [0, 1].
double regularized_incomplete_beta(double x, double a, double b);

// Adaptive quadrature of f over [lower, upper]. Open panels, so integrable
// endpoint singularities are fine. Throws accuracy_error if the subdivision
// budget runs out before the tolerance is met.
double integrate(const std::function<double(double)>& f, double lower,
                 double upper, const QuadratureSpec& spec = {});

}  // namespace hyperchord
