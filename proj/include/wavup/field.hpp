#pragma once

#include <functional>
#include <vector>

namespace wavup {

// Pointwise evaluator filling one state vector (1 or 3 components) at x.
using PointwiseFn = std::function<void(double x, double* u)>;

// Per-node data, slot-major: data[slot * ncomp + c].  Slots follow the grid's
// x-sorted active node ordering.
struct FieldState {
  int ncomp = 1;
  std::vector<double> data;

  static FieldState zeros(int count, int ncomp) {
    FieldState f;
    f.ncomp = ncomp;
    f.data.assign(static_cast<std::size_t>(count) * ncomp, 0.0);
    return f;
  }

  int size() const { return ncomp == 0 ? 0 : static_cast<int>(data.size()) / ncomp; }
  double& at(int slot, int c = 0) { return data[static_cast<std::size_t>(slot) * ncomp + c]; }
  double at(int slot, int c = 0) const {
    return data[static_cast<std::size_t>(slot) * ncomp + c];
  }
  double* row(int slot) { return data.data() + static_cast<std::size_t>(slot) * ncomp; }
  const double* row(int slot) const {
    return data.data() + static_cast<std::size_t>(slot) * ncomp;
  }
};

// Same layout as FieldState: scaling coefficients at basic-level slots,
// wavelet coefficients at higher-level slots.
using CoefficientSet = FieldState;

}  // namespace wavup
