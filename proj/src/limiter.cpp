#include "wavup/limiter.hpp"

#include <cmath>

#include "wavup/common.hpp"

namespace wavup {

const char* to_string(LimiterMode m) {
  switch (m) {
    case LimiterMode::off: return "off";
    case LimiterMode::tvbu: return "tvbu";
    case LimiterMode::tvbr: return "tvbr";
    default: return "tvbc";
  }
}

LimiterMode limiter_mode_from_string(const std::string& s) {
  if (s == "off") return LimiterMode::off;
  if (s == "tvbu") return LimiterMode::tvbu;
  if (s == "tvbr") return LimiterMode::tvbr;
  if (s == "tvbc") return LimiterMode::tvbc;
  throw std::invalid_argument("unknown limiter mode: " + s);
}

double integral_average(const AdaptiveGrid& grid, const CoefficientSet& coeffs,
                        const ScalingTables& tables, int slot, double h, int component,
                        const BoundaryClosure* closure) {
  check_arg(h > 0.0, "averaging interval must have positive length");
  check_arg(h <= grid.width(), "averaging interval exceeds the domain");

  const int depth = tables.depth;
  const std::int64_t span = std::int64_t(1) << (grid.j0() + depth);
  const double half_units = 0.5 * h / grid.width() * double(span);
  const std::int64_t half = std::llround(half_units);
  check_arg(std::abs(half_units - double(half)) <= 1e-6 * std::max(1.0, half_units),
            "averaging interval endpoint is off the tabulation lattice");

  std::int64_t p1 = lattice_of_node(grid, depth, grid.node(slot)) - half;
  std::int64_t p2 = p1 + 2 * half;
  if (grid.bc() != BoundaryKind::periodic) {
    // shift inward to fit
    if (p1 < 0) {
      p2 -= p1;
      p1 = 0;
    } else if (p2 > span) {
      p1 -= p2 - span;
      p2 = span;
    }
    check_arg(p1 >= 0 && p2 <= span, "averaging interval cannot fit in the domain");
  }

  const ExpansionView v = make_view(grid, tables, coeffs, component, closure);
  return integrate_lattice(v, p1, p2) / h;
}

double tvb_switch(double u_i, double mean, double m, double h) {
  return std::abs(mean - u_i) <= m * h * h ? u_i : mean;
}

double interval_length(const AdaptiveGrid& grid, const CoefficientSet& coeffs, int slot,
                       const LimiterConfig& config) {
  check_arg(config.mode != LimiterMode::off, "interval length undefined with the limiter off");
  const double w = grid.width();
  const double fine = w * std::ldexp(1.0, -(grid.jmax() - 1));
  if (config.mode != LimiterMode::tvbc) return w * std::ldexp(1.0, -grid.jmax());

  const double mid = w * std::ldexp(1.0, -(grid.jmax() + grid.j0()) / 2);
  const NodeKey& n = grid.node(slot);
  if (n.level > grid.j0()) {
    const double d = std::abs(coeffs.at(slot, config.char_component));
    if (d >= config.eps0) return mid;
    if (d >= config.eps1) return 0.5 * (mid + fine);
    return fine;
  }
  const int next = slot + 1 < grid.node_count() ? slot + 1 : 0;
  if (grid.node(next).level > grid.j0()) return 0.5 * (mid + fine);
  return fine;
}

FieldState apply_limiter(const AdaptiveGrid& grid, const FieldState& state,
                         const WaveletBasis& basis, const LimiterConfig& config,
                         const BoundaryClosure* closure) {
  if (config.mode == LimiterMode::off) return state;
  check_arg(config.m_switch >= 0.0, "switch parameter must be nonnegative");
  check_arg(config.mode != LimiterMode::tvbc || config.eps1 <= config.eps0,
            "tvbc requires eps1 <= eps0");

  const CoefficientSet co = forward_transform(grid, state, basis.pos, closure);
  FieldState out = state;
  for (int slot = 0; slot < grid.node_count(); ++slot) {
    const double h = interval_length(grid, co, slot, config);
    for (int c = 0; c < state.ncomp; ++c) {
      const double mean = integral_average(grid, co, basis.pos, slot, h, c, closure);
      out.at(slot, c) = tvb_switch(state.at(slot, c), mean, config.m_switch, h);
    }
  }
  return out;
}

}  // namespace wavup
