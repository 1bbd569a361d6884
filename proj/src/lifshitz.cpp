#include "casimir/lifshitz.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace casimir {

void SweepSpec::validate() const {
  if (!(L_min > 0.0) || !(L_max >= L_min) || !std::isfinite(L_max)) {
    throw ConfigError("sweep: require 0 < L_min <= L_max");
  }
  if (points < 1) {
    throw ConfigError("sweep: points must be >= 1");
  }
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> g(static_cast<size_t>(points));
  if (points == 1) {
    g[0] = L_min;
    return g;
  }
  if (spacing == Spacing::Linear) {
    const double step = (L_max - L_min) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = L_min + step * i;
  } else {
    const double step = (std::log(L_max) - std::log(L_min)) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = L_min * std::exp(step * i);
  }
  g.back() = L_max;
  return g;
}

double perfect_conductor_pressure(double separation) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("perfect_conductor_pressure: separation must be > 0");
  }
  const double L2 = separation * separation;
  return std::numbers::pi * std::numbers::pi * units::hbar *
         units::speed_of_light / (240.0 * L2 * L2);
}

namespace {

enum class Polarization { S, P };

// In the scaled coordinates zeta = 2 L xi / c, u = 2 L Q the reduction
// factor is
//   eta = 15/(2 pi^4) Sum_pol Int dzeta Int du  u y g,
//   y = sqrt(zeta^2 + u^2),  g = rho e^{-y} / (1 - rho e^{-y}),
// with rho the product of the two mirrors' amplitudes.  Perfect mirrors
// give Int Int u y e^{-y}/(1-e^{-y}) = pi^4/15 per polarization, so the
// normalization closes to eta = 1.
constexpr double kEtaPrefactor = 0.5 * 15.0 / (std::numbers::pi *
                                               std::numbers::pi *
                                               std::numbers::pi *
                                               std::numbers::pi);

struct PolarizationIntegral {
  QuadratureResult outer;
  long long kernel_evaluations = 0;
  bool failed = false;
  std::string message;
};

PolarizationIntegral integrate_polarization(const PlateConfig& plate1,
                                            const PlateConfig& plate2,
                                            double L, Polarization pol,
                                            const QuadratureConfig& quad) {
  PolarizationIntegral out;
  long long evals = 0;
  bool inner_failed = false;
  std::string inner_message;

  auto outer_integrand = [&](double zeta) {
    const Frequency xi(zeta * units::speed_of_light / (2.0 * L));
    const StackAtXi stack1(plate1.stack, xi, quad, plate1.imag_axis_mode);
    const StackAtXi stack2(plate2.stack, xi, quad, plate2.imag_axis_mode);

    auto inner_integrand = [&](double u) {
      ++evals;
      const TransverseWavevector Q(u / (2.0 * L));
      const ReflectionPair r1 = stack1.reflect(Q);
      const ReflectionPair r2 = stack2.reflect(Q);
      const double rho =
          pol == Polarization::S ? r1.rs * r2.rs : r1.rp * r2.rp;
      const double y = std::sqrt(zeta * zeta + u * u);
      const double damped = rho * std::exp(-y);
      return u * y * damped / (1.0 - damped);
    };

    try {
      return integrate_semi_infinite(inner_integrand, 0.0, 1.0, quad).value;
    } catch (const ConvergenceError& e) {
      inner_failed = true;
      if (inner_message.empty()) inner_message = e.what();
      return e.best.value;
    }
  };

  try {
    out.outer = integrate_semi_infinite(outer_integrand, 0.0, 1.0, quad);
  } catch (const ConvergenceError& e) {
    out.outer = e.best;
    out.failed = true;
    out.message = e.what();
  }
  if (inner_failed && !out.failed) {
    out.failed = true;
    out.message = "inner integral: " + inner_message;
  }
  out.kernel_evaluations = evals;
  return out;
}

}  // namespace

EtaResult reduction_factor(const PlateConfig& plate1, const PlateConfig& plate2,
                           double separation, const QuadratureConfig& quad) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("reduction_factor: separation must be > 0");
  }
  plate1.stack.validate();
  plate2.stack.validate();
  quad.validate();

  const PolarizationIntegral s = integrate_polarization(
      plate1, plate2, separation, Polarization::S, quad);
  const PolarizationIntegral p = integrate_polarization(
      plate1, plate2, separation, Polarization::P, quad);

  EtaResult result;
  result.separation = separation;
  result.eta_s = kEtaPrefactor * s.outer.value;
  result.eta_p = kEtaPrefactor * p.outer.value;
  result.eta = result.eta_s + result.eta_p;
  result.error_estimate =
      kEtaPrefactor * (s.outer.error_estimate + p.outer.error_estimate) +
      quad.rel_tol * std::abs(result.eta);
  result.evaluations = s.kernel_evaluations + p.kernel_evaluations;

  if (s.failed || p.failed) {
    throw EtaConvergenceError(
        "reduction_factor: " + (s.failed ? s.message : p.message), result);
  }
  return result;
}

double force_pressure(const PlateConfig& plate1, const PlateConfig& plate2,
                      double separation, const QuadratureConfig& quad) {
  return reduction_factor(plate1, plate2, separation, quad).eta *
         perfect_conductor_pressure(separation);
}

int sweep_thread_count() {
  const char* env = std::getenv("LIFSHITZ_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || n < 1) {
      throw ConfigError("LIFSHITZ_THREADS must be a positive integer");
    }
    return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SweepPoint> eta_sweep(const PlateConfig& plate1,
                                  const PlateConfig& plate2,
                                  const SweepSpec& sweep,
                                  const QuadratureConfig& quad) {
  const std::vector<double> grid = sweep.grid();
  std::vector<SweepPoint> points(grid.size());

  auto compute_one = [&](size_t i) {
    SweepPoint& point = points[i];
    try {
      point.result = reduction_factor(plate1, plate2, grid[i], quad);
      point.converged = true;
    } catch (const EtaConvergenceError& e) {
      point.result = e.partial;
      point.converged = false;
      point.message = e.what();
    } catch (const std::exception& e) {
      point.result.separation = grid[i];
      point.converged = false;
      point.message = e.what();
    }
  };

  const int workers =
      std::min<int>(sweep_thread_count(), static_cast<int>(grid.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) compute_one(i);
    return points;
  }

  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < grid.size();
           i = next.fetch_add(1)) {
        compute_one(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return points;
}

std::vector<DeltaPoint> percent_difference(const std::vector<EtaResult>& a,
                                           const std::vector<EtaResult>& b) {
  if (a.size() != b.size()) {
    throw DomainError("percent_difference: sweeps have different lengths");
  }
  std::vector<DeltaPoint> deltas(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    const double La = a[i].separation;
    const double Lb = b[i].separation;
    if (!(std::abs(La - Lb) <= 1e-12 * std::max(std::abs(La), std::abs(Lb)))) {
      throw DomainError("percent_difference: separation grids differ");
    }
    deltas[i].separation = Lb;
    deltas[i].delta_percent = 100.0 * std::abs(a[i].eta - b[i].eta) / b[i].eta;
  }
  return deltas;
}

}  // namespace casimir
