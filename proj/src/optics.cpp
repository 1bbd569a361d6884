#include "casimir/optics.hpp"

#include <cmath>

namespace casimir {

TransverseWavevector::TransverseWavevector(double value) : rad_m(value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError("transverse wavevector must be finite and non-negative");
  }
}

void LayerStack::validate() const {
  if (layers.size() > 8) {
    throw ConfigError("stack: more than 8 layers");
  }
  for (const Layer& layer : layers) {
    if (!(layer.thickness > 0.0) || !std::isfinite(layer.thickness)) {
      throw ConfigError("stack: layer thickness must be positive and finite");
    }
    if (is_perfect_conductor(layer.model)) {
      throw ConfigError("stack: perfect conductor allowed only as substrate");
    }
    validate_model(layer.model);
  }
  validate_model(substrate);
}

double kappa(double eps, Frequency xi, TransverseWavevector Q) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("kappa: eps must be positive");
  }
  const double qc = xi.rad_s / units::speed_of_light;
  return std::sqrt(eps * qc * qc + Q.rad_m * Q.rad_m);
}

namespace {

// Amplitudes at a single interface, medium i on the incidence side.
ReflectionPair interface_pair(double eps_i, double kappa_i, double eps_j,
                              double kappa_j) {
  ReflectionPair r;
  r.rs = (kappa_i - kappa_j) / (kappa_i + kappa_j);
  r.rp = (eps_j * kappa_i - eps_i * kappa_j) /
         (eps_j * kappa_i + eps_i * kappa_j);
  return r;
}

// Static limit of a vacuum / half-space interface.  For damped metals
// eps xi^2 -> 0 while eps -> inf, so r_s vanishes and r_p saturates; for
// the plasma model eps xi^2 -> omega_p^2 and the s response survives.
ReflectionPair static_limit_halfspace(const DielectricModel& model,
                                      TransverseWavevector Q) {
  if (is_vacuum(model)) {
    return {0.0, 0.0};
  }
  if (is_perfect_conductor(model)) {
    return {-1.0, 1.0};
  }
  if (!(Q.rad_m > 0.0)) {
    throw DomainError("fresnel_halfspace: xi = 0 requires Q > 0");
  }
  if (const auto* plasma = std::get_if<PlasmaModel>(&model)) {
    const double km = std::sqrt(
        plasma->omega_p * plasma->omega_p /
            (units::speed_of_light * units::speed_of_light) +
        Q.rad_m * Q.rad_m);
    return {(Q.rad_m - km) / (Q.rad_m + km), 1.0};
  }
  return {0.0, 1.0};
}

}  // namespace

StackAtXi::StackAtXi(const LayerStack& stack, Frequency xi,
                     const QuadratureConfig& quad, ImagAxisMode mode)
    : xi_rad_s_(xi.rad_s) {
  stack.validate();
  if (!(xi.rad_s > 0.0)) {
    throw DomainError("StackAtXi: xi must be positive");
  }
  slabs_.reserve(stack.layers.size());
  for (const Layer& layer : stack.layers) {
    slabs_.push_back({eps_imag_axis(layer.model, xi, mode, quad),
                      layer.thickness});
  }
  if (is_perfect_conductor(stack.substrate)) {
    perfect_substrate_ = true;
  } else {
    substrate_eps_ = eps_imag_axis(stack.substrate, xi, mode, quad);
  }
}

ReflectionPair StackAtXi::reflect(TransverseWavevector Q) const {
  const Frequency xi(xi_rad_s_);
  const size_t n = slabs_.size();

  // Innermost interface: last layer (or vacuum) against the substrate.
  const double eps_last = n > 0 ? slabs_[n - 1].eps : 1.0;
  const double kappa_last = kappa(eps_last, xi, Q);
  ReflectionPair r;
  if (perfect_substrate_) {
    r = {-1.0, 1.0};
  } else {
    r = interface_pair(eps_last, kappa_last, substrate_eps_,
                       kappa(substrate_eps_, xi, Q));
  }

  // Fold outward; all exponentials decay, so the recursion is stable.
  double kappa_inner = kappa_last;
  for (size_t i = n; i-- > 0;) {
    const double eps_outer = i > 0 ? slabs_[i - 1].eps : 1.0;
    const double kappa_outer = kappa(eps_outer, xi, Q);
    const ReflectionPair front =
        interface_pair(eps_outer, kappa_outer, slabs_[i].eps, kappa_inner);
    const double damp = std::exp(-2.0 * kappa_inner * slabs_[i].thickness);
    r.rs = (front.rs + r.rs * damp) / (1.0 + front.rs * r.rs * damp);
    r.rp = (front.rp + r.rp * damp) / (1.0 + front.rp * r.rp * damp);
    kappa_inner = kappa_outer;
  }
  return r;
}

ReflectionPair fresnel_halfspace(const DielectricModel& model, Frequency xi,
                                 TransverseWavevector Q,
                                 const QuadratureConfig& quad,
                                 ImagAxisMode mode) {
  validate_model(model);
  if (xi.rad_s == 0.0) {
    return static_limit_halfspace(model, Q);
  }
  LayerStack stack;
  stack.substrate = model;
  return StackAtXi(stack, xi, quad, mode).reflect(Q);
}

ReflectionPair reflect_stack(const LayerStack& stack, Frequency xi,
                             TransverseWavevector Q,
                             const QuadratureConfig& quad, ImagAxisMode mode) {
  stack.validate();
  if (xi.rad_s == 0.0) {
    if (!stack.layers.empty()) {
      throw DomainError("reflect_stack: xi = 0 supported for half-spaces only");
    }
    return static_limit_halfspace(stack.substrate, Q);
  }
  return StackAtXi(stack, xi, quad, mode).reflect(Q);
}

}  // namespace casimir
