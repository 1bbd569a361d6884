#pragma once

#include <functional>

#include "casimir/errors.hpp"

namespace casimir {

struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  // Truncation point for exponentially damped semi-infinite integrands,
  // in units of the integrand's decay scale.
  double tail_cutoff_scale = 50.0;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

// Subdivision budget exhausted before the tolerance was met.  `best` holds
// the estimate accumulated so far.
struct ConvergenceError : Error {
  QuadratureResult best;
  ConvergenceError(const std::string& msg, QuadratureResult partial)
      : Error(msg), best(partial) {}
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) over [a, b].  Panels are split largest
// estimated error first; the final sum runs left to right so identical
// inputs give bit-identical results.  Endpoints are never evaluated.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg);

// How integrate_semi_infinite reaches infinity.
enum class SemiInfiniteMap {
  // x = a + scale*t/(1-t), t in (0,1); works for any decaying integrand.
  RationalMap,
  // Truncate at a + tail_cutoff_scale*scale; only valid when the integrand
  // is exponentially damped beyond the scale.
  ExponentialTruncation,
};

QuadratureResult integrate_semi_infinite(
    const Integrand& f, double a, double scale, const QuadratureConfig& cfg,
    SemiInfiniteMap map = SemiInfiniteMap::RationalMap);

}  // namespace casimir
