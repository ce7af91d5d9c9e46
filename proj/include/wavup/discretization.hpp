#pragma once
// Semi-discrete right-hand side of u_t + f(u)_x = 0: upwind collocation
// derivatives from the tabulated basis pair, global Lax-Friedrichs flux
// splitting, uniform and adaptive assembly.  Euler is handled component-wise
// on the conservative variables.

#include <vector>

#include "wavup/field.hpp"
#include "wavup/grid.hpp"
#include "wavup/wavelet_basis.hpp"

namespace wavup {

struct FluxFunction {
  enum class Kind { advection, burgers, euler };

  Kind kind = Kind::advection;
  double advection_speed = 1.0;
  double gamma = 1.4;

  int components() const { return kind == Kind::euler ? 3 : 1; }
  void flux(const double* u, double* f) const;
  // max |f'(u)| for scalars, |u| + c for Euler; throws on rho <= 0 or p <= 0.
  double max_wave_speed(const double* u) const;
  double pressure(const double* u) const;
};

struct SplitFluxes {
  double alpha = 0.0;   // global wave-speed bound over the sampled states
  FieldState plus;      // f+ = (f + alpha u) / 2 per node per component
  FieldState minus;     // f- = (f - alpha u) / 2
};

// alpha_override >= 0 pins the wave-speed bound (the solver computes it once
// per time step so that transient mid-stage states never need a sound speed);
// otherwise the bound is taken over the sampled states.
SplitFluxes global_lf_split(const FluxFunction& flux, const FieldState& state,
                            double alpha_override = -1.0);

// Mirror signs of the reflective closure: the ghost of f+ is the sign-flipped
// f- at the mirrored node (and vice versa).
BoundaryClosure reflective_plus_spec(const FluxFunction& flux, const FieldState& minus);
BoundaryClosure reflective_minus_spec(const FluxFunction& flux, const FieldState& plus);

// Collocation derivative of a nodal scalar field on a single-level uniform
// grid: the banded stencil phi'(l - k) with the boundary closure.
FieldState wavelet_derivative_uniform(const AdaptiveGrid& grid, const ScalingTables& tables,
                                      const FieldState& values,
                                      const BoundaryClosure* closure = nullptr);
double wavelet_derivative(const AdaptiveGrid& grid, const ScalingTables& tables,
                          const FieldState& values, int slot, int component = 0,
                          const BoundaryClosure* closure = nullptr);

// du/dt on a single-level uniform grid (all active nodes at one level).  The
// state closure supplies far-field holds for fixed boundaries; the split
// fluxes inherit them with the current wave-speed bound.
FieldState rhs_uniform(const AdaptiveGrid& grid, const FieldState& state,
                       const FluxFunction& flux, const WaveletBasis& basis,
                       const BoundaryClosure* state_closure = nullptr, double alpha = -1.0);

// du/dt on an adaptive grid: split fluxes are transformed with the matching
// orientation's bank and the multiresolution derivative is assembled per
// active node.
FieldState rhs_adaptive(const AdaptiveGrid& grid, const FieldState& state,
                        const FluxFunction& flux, const WaveletBasis& basis,
                        const BoundaryClosure* state_closure = nullptr, double alpha = -1.0);

}  // namespace wavup
