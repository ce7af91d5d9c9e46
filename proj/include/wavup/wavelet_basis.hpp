#pragma once
// Asymmetric interpolating wavelet pairs for upwind collocation.
//
// A FilterBank holds the two-scale refinement mask of one upwind orientation.
// The mask is interpolating: h(0) = 1, h vanishes at even nonzero indices,
// and the odd-index entries are the Lagrange cardinal values of the upwind
// prediction stencil, so phi(m + 1/2) = h(2m + 1).  ScalingTables tabulate
// phi, phi' and the primitive Theta(x) = int_{N_L}^x phi on the dyadic
// lattice k/2^depth over the support; lookups take the argument
// premultiplied by 2^depth so they stay integer-exact.

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wavup {

enum class Orientation { positive_upwind, negative_upwind };

const char* to_string(Orientation o);

struct FilterBank {
  int n = 0;  // base-node count of the prediction stencil (odd, >= 3)
  Orientation orientation = Orientation::positive_upwind;
  int support_min = 0;  // N_L
  int support_max = 0;  // N_R
  std::vector<double> h;  // h[l - support_min]

  double coeff(int l) const {
    if (l < support_min || l > support_max) return 0.0;
    return h[static_cast<std::size_t>(l - support_min)];
  }
};

// Builds the mask for the n-node stencil of the given orientation.  For the
// positive orientation the stencil predicting the half-integer point m + 1/2
// spans the integer nodes {m - (n-1)/2, ..., m + (n-1)/2}; the negative
// orientation is its mirror, h_neg(l) = h_pos(-l).  Entries are computed in
// exact int64 rational arithmetic (they are dyadic rationals).
FilterBank compute_filter_coefficients(int n, Orientation orientation);

struct ScalingTables {
  FilterBank filter;
  int depth = 0;  // tables sampled at k/2^depth

  // All three arrays are indexed by t - support_min * 2^depth where the
  // argument is t / 2^depth.
  std::vector<double> values;
  std::vector<double> derivatives;
  std::vector<double> primitives;

  // Argument t is the reference coordinate premultiplied by 2^depth.
  double value_at(std::int64_t t) const;
  double derivative_at(std::int64_t t) const;
  double primitive_at(std::int64_t t) const;  // clamps to 0 / 1 outside support

  double value_at_integer(int k) const { return value_at(std::int64_t(k) << depth); }
  double derivative_at_integer(int k) const {
    return derivative_at(std::int64_t(k) << depth);
  }
};

// Runs the cascade: seeds phi(k) = delta_{0,k} at integers and refines to the
// requested depth.  Only the `values` array of the result is filled.
ScalingTables cascade_evaluate(const FilterBank& filter, int depth);

// phi' at integers is the eigenvalue-1/2 eigenvector of A_{ij} = h(2i - j)
// on the interior of the support, normalized by sum_k k phi'(k) = -1; finer
// dyadic values follow from the differentiated refinement relation.  Throws
// if the eigenspace is not one-dimensional.
std::vector<double> scaling_derivatives(const FilterBank& filter, int depth);

// Theta at integers solves the averaged refinement relation with
// Theta(N_L) = 0, Theta(N_R) = 1; finer values follow from
// Theta(x) = sum_k (h_k / 2) Theta(2x - k) with the out-of-support clamp.
std::vector<double> scaling_primitives(const FilterBank& filter, int depth);

ScalingTables build_scaling_tables(const FilterBank& filter, int depth);

// One order's upwind pair plus tables, shared read-only by solver instances.
struct WaveletBasis {
  int n = 0;
  int depth = 0;
  ScalingTables pos;
  ScalingTables neg;

  const ScalingTables& bank(Orientation o) const {
    return o == Orientation::positive_upwind ? pos : neg;
  }
};

WaveletBasis build_wavelet_basis(int n, int depth = 10);

// Plain-text export: header line "N orientation depth", then the h, values,
// derivatives and primitives arrays as "index value" lines under '#'-marked
// section names.
void export_basis_text(const ScalingTables& tables, std::ostream& out);

}  // namespace wavup
