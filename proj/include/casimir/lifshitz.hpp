#pragma once

#include <string>
#include <vector>

#include "casimir/optics.hpp"

namespace casimir {

struct PlateConfig {
  LayerStack stack;
  ImagAxisMode imag_axis_mode = ImagAxisMode::Substitute;
};

struct EtaResult {
  double separation = 0.0;      // m
  double eta = 0.0;             // dimensionless, eta = eta_s + eta_p
  double eta_s = 0.0;
  double eta_p = 0.0;
  double error_estimate = 0.0;  // dimensionless
  long long evaluations = 0;    // kernel evaluations
};

// Quadrature ran out of budget somewhere inside the double integral; the
// best available result is attached.
struct EtaConvergenceError : Error {
  EtaResult partial;
  EtaConvergenceError(const std::string& message, EtaResult partial_result)
      : Error(message), partial(partial_result) {}
};

struct SweepSpec {
  enum class Spacing { Linear, Log };

  double L_min = 0.0;  // m
  double L_max = 0.0;  // m
  int points = 0;
  Spacing spacing = Spacing::Log;

  void validate() const;
  std::vector<double> grid() const;
};

struct SweepPoint {
  EtaResult result;
  bool converged = false;
  std::string message;  // empty when converged
};

struct DeltaPoint {
  double separation = 0.0;  // m
  double delta_percent = 0.0;
};

// Ideal Casimir pressure magnitude pi^2 hbar c / (240 L^4).
double perfect_conductor_pressure(double separation);

// Reduction factor eta = F / F0 at zero temperature: the double integral
// over imaginary frequency and transverse wavevector of
//   kappa [r1^-1 r2^-1 e^{2 kappa L} - 1]^-1
// summed over polarizations and normalized by the ideal pressure.
EtaResult reduction_factor(const PlateConfig& plate1, const PlateConfig& plate2,
                           double separation, const QuadratureConfig& quad);

// eta times the ideal pressure, N/m^2.
double force_pressure(const PlateConfig& plate1, const PlateConfig& plate2,
                      double separation, const QuadratureConfig& quad);

// One result per grid point, in ascending separation order.  Failed points
// carry their partial result and a message instead of aborting the sweep.
// Points are evaluated on a small thread pool; LIFSHITZ_THREADS caps it.
std::vector<SweepPoint> eta_sweep(const PlateConfig& plate1,
                                  const PlateConfig& plate2,
                                  const SweepSpec& sweep,
                                  const QuadratureConfig& quad);

// Delta(L) = 100 |eta_A - eta_B| / eta_B on a shared separation grid.
std::vector<DeltaPoint> percent_difference(const std::vector<EtaResult>& a,
                                           const std::vector<EtaResult>& b);

// Worker count for sweeps: LIFSHITZ_THREADS if set, hardware concurrency
// otherwise.
int sweep_thread_count();

}  // namespace casimir
