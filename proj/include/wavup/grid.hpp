#pragma once
// Sparse dyadic grid over [a, b] with the boundary-modified basic-level basis,
// the level-ascending fast wavelet transform, thresholding, and evaluation of
// the multiresolution interpolant (values, derivatives, definite integrals).
//
// Nodes are keyed by (level, index), index odd above the basic level so every
// physical point is stored exactly once.  All coordinate arithmetic runs on
// the integer lattice of level j0 + table depth; real-x entry points verify
// the query lands on that lattice.

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "wavup/field.hpp"
#include "wavup/wavelet_basis.hpp"

namespace wavup {

enum class BoundaryKind { periodic, reflective, fixed_inflow_outflow };

const char* to_string(BoundaryKind bc);

struct NodeKey {
  int level = 0;
  std::int64_t index = 0;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

// Boundary closure of one transform/evaluation.
//
// Reflective walls: per-component mirror signs and, when the ghost values
// come from a different array (the split-flux pairing), the source field.
//
// Fixed boundaries: a side with far-field values supplied holds its ghosts at
// those constants (inflow or static far field); a side left empty falls back
// to the Lagrange extension (outflow).
struct BoundaryClosure {
  std::vector<double> sign;                   // one entry per component
  const FieldState* mirror_source = nullptr;  // defaults to the array in use
  std::vector<double> fixed_left;             // per-component far-field values
  std::vector<double> fixed_right;
};
using ReflectiveSpec = BoundaryClosure;

class AdaptiveGrid {
 public:
  static AdaptiveGrid build_uniform(int j0, double a, double b, BoundaryKind bc, int jmax,
                                    int eta, int basis_order);

  int j0() const { return j0_; }
  int jmax() const { return jmax_; }
  double xmin() const { return a_; }
  double xmax() const { return b_; }
  double width() const { return b_ - a_; }
  BoundaryKind bc() const { return bc_; }
  int eta() const { return eta_; }
  int ghost_width() const { return ghost_width_; }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const NodeKey& node(int slot) const { return nodes_[static_cast<std::size_t>(slot)]; }
  double coordinate(int slot) const;
  int max_active_level() const;
  const std::vector<int>& level_slots(int level) const {
    return level_slots_[static_cast<std::size_t>(level - j0_)];
  }

  // Normalized lookup; accepts any (level, index) with j0 <= level <= jmax and
  // wraps the index first under periodic boundaries.  Returns -1 if inactive.
  int slot_of(int level, std::int64_t index) const;
  bool is_active(int level, std::int64_t index) const { return slot_of(level, index) >= 0; }

  NodeKey normalized(int level, std::int64_t index) const;

  // Replaces the set of above-basic-level nodes (basic level is always kept).
  // Keys may be unnormalized or duplicated; out-of-domain keys are rejected.
  void reset_active(const std::vector<NodeKey>& higher_nodes);

  // Number of basic-level intervals (2^j0); basic-level nodes run 0..count-1
  // under periodic bc and 0..count under the others.
  std::int64_t base_intervals() const { return std::int64_t(1) << j0_; }

  // Lagrange extension weights of one external basic-level index; empty when
  // the boundary kind does not extrapolate.
  struct GhostWeights {
    std::int64_t ghost_index = 0;
    std::vector<std::pair<std::int64_t, double>> terms;  // (interior index, weight)
  };
  const std::vector<GhostWeights>& extension() const { return extension_; }

 private:
  int j0_ = 0, jmax_ = 0;
  double a_ = 0.0, b_ = 1.0;
  BoundaryKind bc_ = BoundaryKind::periodic;
  int eta_ = 0;
  int ghost_width_ = 0;
  std::vector<NodeKey> nodes_;  // sorted by position
  std::vector<std::vector<int>> level_slots_;
  std::vector<std::unordered_map<std::int64_t, int>> level_map_;
  std::vector<GhostWeights> extension_;

  void rebuild_maps();
};

// One scalar coefficient array bound to its grid, tables and boundary
// closure; `coeff` walks slot-major with the given stride.
struct ExpansionView {
  const AdaptiveGrid* grid = nullptr;
  const ScalingTables* tables = nullptr;
  const double* coeff = nullptr;
  int stride = 1;
  int max_level = -1;  // include wavelet levels up to this one (-1: jmax)
  double mirror_sign = 1.0;
  const double* mirror_src = nullptr;   // reflective ghosts read here (same stride)
  const double* fixed_left = nullptr;   // fixed-bc far-field values, indexed per
  const double* fixed_right = nullptr;  // component in multi-component calls
};

// Binds one component of a coefficient array plus the closure to a view.
ExpansionView make_view(const AdaptiveGrid& grid, const ScalingTables& tables,
                        const CoefficientSet& coeffs, int component,
                        const BoundaryClosure* closure);

// p indexes the reference lattice of level j0 + tables->depth; it may land
// outside [0, 2^(j0+depth)] for non-periodic grids (natural extension).
double evaluate_lattice(const ExpansionView& v, std::int64_t p);
double evaluate_derivative_lattice(const ExpansionView& v, std::int64_t p);
// Multi-component variants; v.coeff points at component 0, v.stride = ncomp.
// `signs` (length ncomp) overrides v.mirror_sign per component when non-null.
void evaluate_components_lattice(const ExpansionView& v, std::int64_t p, int ncomp, double* out,
                                 const double* signs = nullptr);
void evaluate_derivative_components_lattice(const ExpansionView& v, std::int64_t p, int ncomp,
                                            double* out, const double* signs = nullptr);
// Definite integral of the expansion over [p1, p2] in physical units.
double integrate_lattice(const ExpansionView& v, std::int64_t p1, std::int64_t p2);

// Maps x to the evaluation lattice; throws when x is off-lattice.
std::int64_t lattice_point(const AdaptiveGrid& grid, int depth, double x);
std::int64_t lattice_of_node(const AdaptiveGrid& grid, int depth, const NodeKey& node);

// Spec-level entry points.
CoefficientSet forward_transform(const AdaptiveGrid& grid, const FieldState& values,
                                 const ScalingTables& tables,
                                 const BoundaryClosure* closure = nullptr);
double evaluate(const AdaptiveGrid& grid, const CoefficientSet& coeffs,
                const ScalingTables& tables, double x, int component = 0,
                const BoundaryClosure* closure = nullptr);
std::vector<NodeKey> threshold(const AdaptiveGrid& grid, const CoefficientSet& coeffs,
                               double eps, int component = 0);

// Snapshot rows `level,index,x,value[,...]`, sorted by x.
void write_snapshot_csv(const AdaptiveGrid& grid, const FieldState& state, std::ostream& out);

}  // namespace wavup
