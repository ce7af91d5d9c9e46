#include "wavup/wavelet_basis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <ostream>

#include "wavup/common.hpp"

namespace wavup {

const char* to_string(Orientation o) {
  return o == Orientation::positive_upwind ? "positive" : "negative";
}

namespace {

// Exact value of the Lagrange cardinal polynomial centered at node 0 on the
// integer stencil [lo, hi], evaluated at the half-integer num/2.  The result
// is a dyadic rational, so the int64 fraction converts to double exactly.
double cardinal_at_half(int num, int lo, int hi) {
  std::int64_t p = 1, q = 1;
  for (int i = lo; i <= hi; ++i) {
    if (i == 0) continue;
    p *= num - 2 * i;  // (num/2 - i) * 2
    q *= -2 * i;       // (0 - i) * 2
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
  return double(p / g) / double(q / g);
}

}  // namespace

FilterBank compute_filter_coefficients(int n, Orientation orientation) {
  check_arg(n >= 3, "wavelet order must be at least 3");
  check_arg(n % 2 == 1, "even wavelet orders are not supported by the asymmetric stencil policy");

  // Positive orientation: the stencil for the point m + 1/2 is the n
  // integer nodes centered on m, which puts (n+1)/2 nodes on the left of the
  // new point.  Nonzero odd entries exist where node 0 is inside the stencil.
  const int half = (n - 1) / 2;
  FilterBank bank;
  bank.n = n;
  bank.orientation = orientation;
  bank.support_min = -(n - 2);
  bank.support_max = n;
  if (orientation == Orientation::negative_upwind) {
    bank.support_min = -n;
    bank.support_max = n - 2;
  }
  bank.h.assign(static_cast<std::size_t>(bank.support_max - bank.support_min + 1), 0.0);

  bank.h[static_cast<std::size_t>(0 - bank.support_min)] = 1.0;
  for (int m = -half; m <= half; ++m) {
    const double hv = cardinal_at_half(2 * m + 1, m - half, m + half);
    const int l = (orientation == Orientation::positive_upwind) ? 2 * m + 1 : -(2 * m + 1);
    bank.h[static_cast<std::size_t>(l - bank.support_min)] = hv;
  }
  return bank;
}

double ScalingTables::value_at(std::int64_t t) const {
  const std::int64_t lo = std::int64_t(filter.support_min) << depth;
  const std::int64_t hi = std::int64_t(filter.support_max) << depth;
  if (t <= lo || t >= hi) return 0.0;
  return values[static_cast<std::size_t>(t - lo)];
}

double ScalingTables::derivative_at(std::int64_t t) const {
  const std::int64_t lo = std::int64_t(filter.support_min) << depth;
  const std::int64_t hi = std::int64_t(filter.support_max) << depth;
  if (t <= lo || t >= hi) return 0.0;
  return derivatives[static_cast<std::size_t>(t - lo)];
}

double ScalingTables::primitive_at(std::int64_t t) const {
  const std::int64_t lo = std::int64_t(filter.support_min) << depth;
  const std::int64_t hi = std::int64_t(filter.support_max) << depth;
  if (t <= lo) return 0.0;
  if (t >= hi) return 1.0;
  return primitives[static_cast<std::size_t>(t - lo)];
}

namespace {

// Shared refinement driver: given the table at depth d-1, fills depth d.
// Even lattice points are copies; odd points combine the coarser table
// through the mask.  `scale` is 1 for values, 2 for derivatives, 1/2 for
// primitives; `clamp_right` = 1 turns the lookup into the primitive's
// right-side plateau.
std::vector<double> refine_once(const FilterBank& f, const std::vector<double>& prev,
                                int prev_depth, double scale, double clamp_right) {
  const int w = f.support_max - f.support_min;
  const std::int64_t stride = std::int64_t(1) << prev_depth;
  const std::int64_t prev_lo = std::int64_t(f.support_min) * stride;
  const std::int64_t prev_hi = std::int64_t(f.support_max) * stride;
  std::vector<double> out(static_cast<std::size_t>(w) * 2 * stride + 1, 0.0);

  auto prev_at = [&](std::int64_t t) -> double {
    if (t <= prev_lo) return 0.0;
    if (t >= prev_hi) return clamp_right;
    return prev[static_cast<std::size_t>(t - prev_lo)];
  };

  const std::int64_t lo = 2 * prev_lo;
  for (std::int64_t i = 0; i <= std::int64_t(w) * 2 * stride; ++i) {
    const std::int64_t t = lo + i;
    if (t % 2 == 0) {
      out[static_cast<std::size_t>(i)] = prev_at(t / 2);
      continue;
    }
    double s = 0.0;
    for (int l = f.support_min; l <= f.support_max; ++l) {
      const double hl = f.coeff(l);
      if (hl == 0.0) continue;
      s += hl * prev_at(t - l * stride);
    }
    out[static_cast<std::size_t>(i)] = scale * s;
  }
  return out;
}

std::vector<double> refine_to_depth(const FilterBank& f, std::vector<double> seed,
                                    int depth, double scale, double clamp_right) {
  for (int d = 1; d <= depth; ++d) seed = refine_once(f, seed, d - 1, scale, clamp_right);
  return seed;
}

}  // namespace

ScalingTables cascade_evaluate(const FilterBank& filter, int depth) {
  check_arg(depth >= 1, "cascade depth must be at least 1");
  const int w = filter.support_max - filter.support_min;
  std::vector<double> seed(static_cast<std::size_t>(w) + 1, 0.0);
  seed[static_cast<std::size_t>(0 - filter.support_min)] = 1.0;

  ScalingTables t;
  t.filter = filter;
  t.depth = depth;
  t.values = refine_to_depth(filter, std::move(seed), depth, 1.0, 0.0);
  return t;
}

std::vector<double> scaling_derivatives(const FilterBank& filter, int depth) {
  check_arg(depth >= 0, "depth must be nonnegative");
  const int lo = filter.support_min + 1;
  const int hi = filter.support_max - 1;
  const int m = hi - lo + 1;

  // A v = v / 2 with A_{ij} = h(2i - j) on the interior integers.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = filter.coeff(2 * (lo + i) - (lo + j));
  Eigen::MatrixXd shifted = a - 0.5 * Eigen::MatrixXd::Identity(m, m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(shifted);
  lu.setThreshold(1e-9);
  check_run(lu.dimensionOfKernel() == 1,
            "derivative eigenspace is not one-dimensional (degenerate filter)");
  Eigen::VectorXd v = lu.kernel().col(0);

  double moment = 0.0;
  for (int i = 0; i < m; ++i) moment += (lo + i) * v(i);
  check_run(std::abs(moment) > 1e-12, "derivative normalization is singular");
  v *= -1.0 / moment;

  std::vector<double> seed(static_cast<std::size_t>(filter.support_max - filter.support_min) + 1,
                           0.0);
  for (int i = 0; i < m; ++i) seed[static_cast<std::size_t>(lo + i - filter.support_min)] = v(i);
  return refine_to_depth(filter, std::move(seed), depth, 2.0, 0.0);
}

std::vector<double> scaling_primitives(const FilterBank& filter, int depth) {
  const int lo = filter.support_min + 1;
  const int hi = filter.support_max - 1;
  const int m = hi - lo + 1;

  // theta_i = sum_k (h_k / 2) Theta(2i - k), Theta clamped to {0, 1} outside.
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    for (int k = filter.support_min; k <= filter.support_max; ++k) {
      const double hk = filter.coeff(k);
      if (hk == 0.0) continue;
      const int arg = 2 * (lo + i) - k;
      if (arg >= filter.support_max)
        rhs(i) += 0.5 * hk;
      else if (arg > filter.support_min)
        a(i, arg - lo) -= 0.5 * hk;
    }
  }
  Eigen::VectorXd theta = a.fullPivLu().solve(rhs);

  std::vector<double> seed(static_cast<std::size_t>(filter.support_max - filter.support_min) + 1,
                           0.0);
  seed.back() = 1.0;
  for (int i = 0; i < m; ++i) seed[static_cast<std::size_t>(lo + i - filter.support_min)] = theta(i);
  return refine_to_depth(filter, std::move(seed), depth, 0.5, 1.0);
}

ScalingTables build_scaling_tables(const FilterBank& filter, int depth) {
  ScalingTables t = cascade_evaluate(filter, depth);
  t.derivatives = scaling_derivatives(filter, depth);
  t.primitives = scaling_primitives(filter, depth);
  return t;
}

WaveletBasis build_wavelet_basis(int n, int depth) {
  check_arg(depth >= 1, "table depth must be at least 1");
  WaveletBasis b;
  b.n = n;
  b.depth = depth;
  b.pos = build_scaling_tables(compute_filter_coefficients(n, Orientation::positive_upwind), depth);
  b.neg = build_scaling_tables(compute_filter_coefficients(n, Orientation::negative_upwind), depth);
  return b;
}

void export_basis_text(const ScalingTables& tables, std::ostream& out) {
  const FilterBank& f = tables.filter;
  out.precision(17);
  out << f.n << ' ' << to_string(f.orientation) << ' ' << tables.depth << '\n';
  out << "# h\n";
  for (int l = f.support_min; l <= f.support_max; ++l)
    if (f.coeff(l) != 0.0) out << l << ' ' << f.coeff(l) << '\n';
  auto dump = [&](const char* name, const std::vector<double>& arr) {
    out << "# " << name << '\n';
    const std::int64_t lo = std::int64_t(f.support_min) << tables.depth;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out << lo + std::int64_t(i) << ' ' << arr[i] << '\n';
  };
  dump("values", tables.values);
  dump("derivatives", tables.derivatives);
  dump("primitives", tables.primitives);
}

}  // namespace wavup
