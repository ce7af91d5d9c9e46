#pragma once
// Dynamic node generation: smoothness detection at the basic level, wavelet
// coefficient thresholding above it, adjacent-zone growth around trouble
// nodes, and the per-step update of the active set with state reconstruction.

#include <functional>

#include "wavup/field.hpp"
#include "wavup/grid.hpp"
#include "wavup/wavelet_basis.hpp"

namespace wavup {

struct AdaptConfig {
  double eps = 1e-5;       // coefficient threshold
  double m0 = 100.0;       // smoothness-detection multiplier of dx^2
  int level_reach = 1;     // L
  int zone_width = 2;      // Kw, in units of the trouble node's spacing
  int insertion_depth = 1; // L0: levels inserted above j0 around basic-level trouble
  int char_component = 0;  // detection variable (density for Euler)
};

// Jiang-Shu style indicator on three consecutive basic-level samples.
double smoothness_indicator(double f_prev, double f_mid, double f_next);

// Basic-level slots whose indicator exceeds m0 * dx^2 (dx = physical basic
// spacing); boundary nodes use a one-sided shifted window.
std::vector<int> detect_trouble_j0(const AdaptiveGrid& grid, const FieldState& values,
                                   int component, double m0);

// Candidate nodes of the adjacent zone of (level, index): levels within
// `level_reach` (capped to (j0, jmax]) and distance within
// zone_width * 2^-level in reference units.
std::vector<NodeKey> adjacent_zone(const AdaptiveGrid& grid, const NodeKey& node,
                                   const AdaptConfig& config);

struct AdaptResult {
  AdaptiveGrid grid;
  FieldState state;
  int added = 0;
  int removed = 0;
};

using InitialCondition = PointwiseFn;

// Builds the initial active set from a fresh uniform basic-level grid:
// detects the initial condition's localized structure, inserts nodes, and
// deepens until the coefficient test is quiet or jmax is reached; the state
// is sampled from the initial condition at every active node.
AdaptResult initialize_nodes(const AdaptiveGrid& base, const InitialCondition& initial, int ncomp,
                             const WaveletBasis& basis, const AdaptConfig& config,
                             const BoundaryClosure* closure = nullptr);

// One between-steps update: union of basic-level insertions and adjacent
// zones, removal of quiet nodes without active children, graded closure, and
// reconstruction of values at inserted nodes from the pre-update expansion.
AdaptResult adapt_step(const AdaptiveGrid& grid, const FieldState& state,
                       const WaveletBasis& basis, const AdaptConfig& config,
                       const BoundaryClosure* closure = nullptr);

}  // namespace wavup
