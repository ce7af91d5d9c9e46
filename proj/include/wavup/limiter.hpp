#pragma once
// Gibbs suppression by integral-average reconstruction: each node's sliding
// mean over [x_i - h_i/2, x_i + h_i/2] is computed exactly from the primitive
// tables, and the nodal value is replaced by the mean when it deviates by
// more than M h_i^2.

#include "wavup/field.hpp"
#include "wavup/grid.hpp"
#include "wavup/wavelet_basis.hpp"

namespace wavup {

enum class LimiterMode { off, tvbu, tvbr, tvbc };

const char* to_string(LimiterMode m);
LimiterMode limiter_mode_from_string(const std::string& s);

struct LimiterConfig {
  LimiterMode mode = LimiterMode::off;
  double m_switch = 0.0;  // M
  double eps0 = 1e-2;     // tvbc coefficient thresholds, eps1 <= eps0
  double eps1 = 1e-4;
  int char_component = 0;  // coefficient component driving the tvbc rule
};

// Mean of the expansion over the interval of physical length h centered at
// the node; the interval is shifted inward when it overhangs a non-periodic
// domain and wraps under periodic boundaries.
double integral_average(const AdaptiveGrid& grid, const CoefficientSet& coeffs,
                        const ScalingTables& tables, int slot, double h, int component = 0,
                        const BoundaryClosure* closure = nullptr);

double tvb_switch(double u_i, double mean, double m, double h);

// Length of the averaging interval per the reconstruction mode.  tvbu/tvbr
// use the finest spacing uniformly; tvbc picks between the three dyadic
// lengths based on the node's level and its characteristic coefficient.
double interval_length(const AdaptiveGrid& grid, const CoefficientSet& coeffs, int slot,
                       const LimiterConfig& config);

// Single reconstruction pass over all components.
FieldState apply_limiter(const AdaptiveGrid& grid, const FieldState& state,
                         const WaveletBasis& basis, const LimiterConfig& config,
                         const BoundaryClosure* closure = nullptr);

}  // namespace wavup
