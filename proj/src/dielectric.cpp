#include "casimir/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace casimir {

Frequency::Frequency(double value) : rad_s(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("frequency must be finite and non-negative");
  }
}

void DrudeParams::validate() const {
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw ConfigError("drude: omega_p must be positive");
  }
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw ConfigError("drude: gamma0 must be positive");
  }
}

void TheyeParams::validate() const {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw ConfigError("theye: gamma0 must be positive");
  }
  if (quad_coeff < 0.0 || !std::isfinite(quad_coeff)) {
    throw ConfigError("theye: quad_coeff must be non-negative");
  }
}

void TwoCarrierParams::validate() const {
  if (!(density_ratio > 0.0) || !std::isfinite(density_ratio)) {
    throw ConfigError("two-carrier: density_ratio must be positive");
  }
  if (!(gamma_a > 0.0) || !(gamma_b > 0.0) || !std::isfinite(gamma_a) ||
      !std::isfinite(gamma_b)) {
    throw ConfigError("two-carrier: damping rates must be positive");
  }
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw ConfigError("two-carrier: omega_p must be positive");
  }
}

void validate_model(const DielectricModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PlasmaModel>) {
          if (!(m.omega_p > 0.0) || !std::isfinite(m.omega_p)) {
            throw ConfigError("plasma: omega_p must be positive");
          }
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          m.params.validate();
        } else if constexpr (std::is_same_v<T, TheyeDrudeModel>) {
          if (!(m.omega_p > 0.0) || !std::isfinite(m.omega_p)) {
            throw ConfigError("theye-drude: omega_p must be positive");
          }
          m.damping.validate();
        } else if constexpr (std::is_same_v<T, TwoCarrierDrudeModel>) {
          m.params.validate();
        }
      },
      model);
}

bool is_vacuum(const DielectricModel& model) {
  return std::holds_alternative<VacuumModel>(model);
}

bool is_perfect_conductor(const DielectricModel& model) {
  return std::holds_alternative<PerfectConductorModel>(model);
}

double gamma_eff(const TwoCarrierParams& params, Frequency omega) {
  const double w2 = omega.rad_s * omega.rad_s;
  const double ratio =
      (w2 + params.gamma_a * params.gamma_a) / (w2 + params.gamma_b * params.gamma_b);
  const double rr = params.density_ratio * ratio;
  return params.gamma_a / (1.0 + rr) + params.gamma_b / (1.0 + 1.0 / rr);
}

double gamma_theye(const TheyeParams& params, Frequency omega) {
  return params.gamma0 + params.quad_coeff * omega.rad_s * omega.rad_s;
}

double damping_at(const DielectricModel& model, Frequency omega) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DrudeModel>) {
          return m.params.gamma0;
        } else if constexpr (std::is_same_v<T, TheyeDrudeModel>) {
          return gamma_theye(m.damping, omega);
        } else if constexpr (std::is_same_v<T, TwoCarrierDrudeModel>) {
          return gamma_eff(m.params, omega);
        } else if constexpr (std::is_same_v<T, PlasmaModel>) {
          return 0.0;
        } else {
          throw DomainError("damping_at: model has no damping rate");
        }
      },
      model);
}

namespace {

double plasma_frequency_of(const DielectricModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PlasmaModel>) {
          return m.omega_p;
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          return m.params.omega_p;
        } else if constexpr (std::is_same_v<T, TheyeDrudeModel>) {
          return m.omega_p;
        } else if constexpr (std::is_same_v<T, TwoCarrierDrudeModel>) {
          return m.params.omega_p;
        } else {
          return 0.0;
        }
      },
      model);
}

// eps(i xi) - 1 via the Kramers-Kronig transform of the Drude absorption:
//   (2/pi) Int_0^inf  wp^2 gamma(w) / ((w^2 + gamma(w)^2) (w^2 + xi^2)) dw.
// The integrand decays like 1/w^5 whenever gamma(w) approaches a constant,
// so integrate a head panel plus log-spaced decades up to a large cutoff
// and close with the analytic 1/w^5 tail.
double kk_imag_axis(const DielectricModel& model, double xi,
                    const QuadratureConfig& quad) {
  const double wp = plasma_frequency_of(model);
  const double gamma0 = damping_at(model, Frequency(0.0));
  auto integrand = [&](double w) {
    const double g = damping_at(model, Frequency(w));
    return (2.0 / std::numbers::pi) * wp * wp * g /
           ((w * w + g * g) * (w * w + xi * xi));
  };

  const double w_lo = 1e-4 * std::min(gamma0, xi);
  const double w_hi = 1e3 * std::max(wp, xi);

  double total = integrate_finite(integrand, 0.0, w_lo, quad).value;
  double left = w_lo;
  while (left < w_hi) {
    const double right = std::min(left * 10.0, w_hi);
    total += integrate_finite(integrand, left, right, quad).value;
    left = right;
  }
  // Past w_hi both denominators are ~w^2, so the integrand falls off as
  // (2/pi) wp^2 gamma(w_hi) / w^4; the remaining tail integrates to
  // (2/(3 pi)) wp^2 gamma(w_hi) / w_hi^3.
  const double g_hi = damping_at(model, Frequency(w_hi));
  total += (2.0 / (3.0 * std::numbers::pi)) * wp * wp * g_hi /
           (w_hi * w_hi * w_hi);
  return total;
}

}  // namespace

std::complex<double> eps_real_axis(const DielectricModel& model,
                                   Frequency omega) {
  validate_model(model);
  const double w = omega.rad_s;
  if (!(w > 0.0)) {
    throw DomainError("eps_real_axis: frequency must be positive");
  }
  return std::visit(
      [&](const auto& m) -> std::complex<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, VacuumModel>) {
          return {1.0, 0.0};
        } else if constexpr (std::is_same_v<T, PerfectConductorModel>) {
          throw DomainError(
              "eps_real_axis: perfect conductor has no finite permittivity");
        } else if constexpr (std::is_same_v<T, PlasmaModel>) {
          return {1.0 - m.omega_p * m.omega_p / (w * w), 0.0};
        } else {
          const double wp = plasma_frequency_of(model);
          const double g = damping_at(model, omega);
          const std::complex<double> denom =
              w * std::complex<double>(w, g);
          return 1.0 - wp * wp / denom;
        }
      },
      model);
}

double eps_imag_axis(const DielectricModel& model, Frequency xi,
                     ImagAxisMode mode, const QuadratureConfig& quad) {
  validate_model(model);
  const double x = xi.rad_s;
  if (!(x > 0.0)) {
    throw DomainError("eps_imag_axis: frequency must be positive");
  }
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, VacuumModel>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, PerfectConductorModel>) {
          throw DomainError(
              "eps_imag_axis: perfect conductor has no finite permittivity");
        } else if constexpr (std::is_same_v<T, PlasmaModel>) {
          // No absorption, so the transform degenerates; the analytic
          // continuation is exact in either mode.
          return 1.0 + m.omega_p * m.omega_p / (x * x);
        } else {
          if (mode == ImagAxisMode::Substitute) {
            const double wp = plasma_frequency_of(model);
            const double g = damping_at(model, xi);
            return 1.0 + wp * wp / (x * (x + g));
          }
          return 1.0 + kk_imag_axis(model, x, quad);
        }
      },
      model);
}

namespace {

const std::vector<std::string> kPresetIds = {
    "classical-au", "annealed-au", "nonannealed-au"};

}  // namespace

DielectricModel preset_model(std::string_view id) {
  if (id == "classical-au") {
    return DrudeModel{{units::ev_to_rad_s(9.0), units::ev_to_rad_s(0.02)}};
  }
  if (id == "annealed-au") {
    TwoCarrierParams p;
    p.density_ratio = 0.0077;
    p.gamma_a = 0.93e14;
    p.gamma_b = 25e14;
    p.omega_p = units::ev_to_rad_s(9.0);
    return TwoCarrierDrudeModel{p};
  }
  if (id == "nonannealed-au") {
    TwoCarrierParams p;
    p.density_ratio = 0.058;
    p.gamma_a = 1.18e14;
    p.gamma_b = 25e14;
    p.omega_p = units::ev_to_rad_s(9.0);
    return TwoCarrierDrudeModel{p};
  }
  throw ConfigError("unknown preset: " + std::string(id));
}

const std::vector<std::string>& preset_ids() { return kPresetIds; }

}  // namespace casimir
