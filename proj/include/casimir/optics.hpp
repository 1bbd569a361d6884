#pragma once

#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

struct TransverseWavevector {
  double rad_m = 0.0;

  TransverseWavevector() = default;
  explicit TransverseWavevector(double value);
};

struct Layer {
  double thickness = 0.0;  // m
  DielectricModel model;
};

// Layers ordered from the vacuum side inward, on a semi-infinite substrate.
struct LayerStack {
  std::vector<Layer> layers;
  DielectricModel substrate;

  void validate() const;
};

struct ReflectionPair {
  double rs = 0.0;
  double rp = 0.0;
};

// Decay constant sqrt(eps xi^2/c^2 + Q^2) of a medium on the imaginary
// frequency axis; real and positive there.
double kappa(double eps, Frequency xi, TransverseWavevector Q);

// Reflection amplitudes of a vacuum / half-space interface:
//   r_s = (k0 - km) / (k0 + km),  r_p = (eps k0 - km) / (eps k0 + km).
// Sign convention: a perfect mirror gives (-1, +1).  xi = 0 is handled as
// the limiting case (requires Q > 0 for damped metals).
ReflectionPair fresnel_halfspace(const DielectricModel& model, Frequency xi,
                                 TransverseWavevector Q,
                                 const QuadratureConfig& quad,
                                 ImagAxisMode mode);

// Reflection of the full stack, folding interfaces from the substrate
// outward:  r = (r_front + r_behind e^{-2 kappa d}) /
//               (1 + r_front r_behind e^{-2 kappa d}).
ReflectionPair reflect_stack(const LayerStack& stack, Frequency xi,
                             TransverseWavevector Q,
                             const QuadratureConfig& quad, ImagAxisMode mode);

// Stack with all permittivities resolved at a fixed xi, so that reflection
// at each Q costs plain arithmetic.  This is the hot path of the pressure
// integral, where one xi serves hundreds of Q nodes.
class StackAtXi {
 public:
  StackAtXi(const LayerStack& stack, Frequency xi,
            const QuadratureConfig& quad, ImagAxisMode mode);

  ReflectionPair reflect(TransverseWavevector Q) const;

 private:
  struct Slab {
    double eps = 1.0;
    double thickness = 0.0;  // m
  };
  double xi_rad_s_ = 0.0;
  std::vector<Slab> slabs_;      // vacuum side first
  double substrate_eps_ = 1.0;   // unused when the substrate is ideal
  bool perfect_substrate_ = false;
};

}  // namespace casimir
