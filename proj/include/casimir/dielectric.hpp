#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/units.hpp"

namespace casimir {

// Angular frequency, rad/s.  Also carries the imaginary-axis variable xi.
struct Frequency {
  double rad_s = 0.0;

  Frequency() = default;
  explicit Frequency(double value);
  static Frequency from_ev(double ev) {
    return Frequency(units::ev_to_rad_s(ev));
  }
};

struct DrudeParams {
  double omega_p = 0.0;  // plasma frequency, rad/s
  double gamma0 = 0.0;   // damping rate, rad/s
  void validate() const;
};

// gamma(w) = gamma0 + quad_coeff * w^2
struct TheyeParams {
  double gamma0 = 0.0;      // rad/s
  double quad_coeff = 0.0;  // s
  void validate() const;
};

// Two regions with distinct damping rates: crystallites (a) and the
// disordered material between them (b).  density_ratio is N_b/N_a.
struct TwoCarrierParams {
  double density_ratio = 0.0;
  double gamma_a = 0.0;  // rad/s
  double gamma_b = 0.0;  // rad/s
  double omega_p = 0.0;  // plasma frequency of the film as a whole, rad/s
  void validate() const;
};

struct VacuumModel {};
struct PlasmaModel {
  double omega_p = 0.0;
};
struct DrudeModel {
  DrudeParams params;
};
struct TheyeDrudeModel {
  double omega_p = 0.0;
  TheyeParams damping;
};
struct TwoCarrierDrudeModel {
  TwoCarrierParams params;
};
// Ideal mirror; usable only as a substrate.
struct PerfectConductorModel {};

using DielectricModel =
    std::variant<VacuumModel, PlasmaModel, DrudeModel, TheyeDrudeModel,
                 TwoCarrierDrudeModel, PerfectConductorModel>;

void validate_model(const DielectricModel& model);
bool is_vacuum(const DielectricModel& model);
bool is_perfect_conductor(const DielectricModel& model);

// How eps is continued to the imaginary frequency axis.
enum class ImagAxisMode {
  // gamma evaluated at real argument xi inside the analytic Drude form;
  // exact for constant damping.
  Substitute,
  // 1 + (2/pi) Int_0^inf w eps''(w) / (w^2 + xi^2) dw by quadrature.
  KramersKronig,
};

// Effective damping of the two-carrier film model:
//   gamma_a [1 + r R]^-1 + gamma_b [1 + (r R)^-1]^-1,
// r = N_b/N_a, R = (w^2 + gamma_a^2) / (w^2 + gamma_b^2).
double gamma_eff(const TwoCarrierParams& params, Frequency omega);

double gamma_theye(const TheyeParams& params, Frequency omega);

// Damping rate of any Drude-family model at a given frequency (zero for
// the plasma model).
double damping_at(const DielectricModel& model, Frequency omega);

// eps(w) = 1 - omega_p^2 / (w (w + i gamma(w))).  w must be positive.
std::complex<double> eps_real_axis(const DielectricModel& model,
                                   Frequency omega);

// eps(i xi) on the imaginary axis; real and > 1 for all Drude-family
// models.  xi must be positive.
double eps_imag_axis(const DielectricModel& model, Frequency xi,
                     ImagAxisMode mode, const QuadratureConfig& quad);

// Built-in parameter sets: "classical-au", "annealed-au", "nonannealed-au".
DielectricModel preset_model(std::string_view id);
const std::vector<std::string>& preset_ids();

}  // namespace casimir
