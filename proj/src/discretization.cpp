#include "wavup/discretization.hpp"

#include <cmath>

#include "wavup/common.hpp"

namespace wavup {

void FluxFunction::flux(const double* u, double* f) const {
  switch (kind) {
    case Kind::advection:
      f[0] = advection_speed * u[0];
      return;
    case Kind::burgers:
      f[0] = 0.5 * u[0] * u[0];
      return;
    case Kind::euler: {
      const double rho = u[0];
      const double vel = u[1] / rho;
      const double p = pressure(u);
      f[0] = u[1];
      f[1] = u[1] * vel + p;
      f[2] = vel * (u[2] + p);
      return;
    }
  }
}

double FluxFunction::pressure(const double* u) const {
  return (gamma - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0]);
}

double FluxFunction::max_wave_speed(const double* u) const {
  switch (kind) {
    case Kind::advection:
      return std::abs(advection_speed);
    case Kind::burgers:
      return std::abs(u[0]);
    case Kind::euler: {
      const double rho = u[0];
      check_run(rho > 0.0, "nonpositive density");
      const double p = pressure(u);
      check_run(p > 0.0, "nonpositive pressure");
      return std::abs(u[1] / rho) + std::sqrt(gamma * p / rho);
    }
  }
  return 0.0;
}

SplitFluxes global_lf_split(const FluxFunction& flux, const FieldState& state,
                            double alpha_override) {
  const int nc = flux.components();
  check_arg(state.ncomp == nc, "state component count does not match the flux");
  const int n = state.size();

  SplitFluxes s;
  if (alpha_override >= 0.0)
    s.alpha = alpha_override;
  else
    for (int i = 0; i < n; ++i) s.alpha = std::max(s.alpha, flux.max_wave_speed(state.row(i)));

  s.plus = FieldState::zeros(n, nc);
  s.minus = FieldState::zeros(n, nc);
  double f[3];
  for (int i = 0; i < n; ++i) {
    flux.flux(state.row(i), f);
    for (int c = 0; c < nc; ++c) {
      const double u = state.at(i, c);
      s.plus.at(i, c) = 0.5 * (f[c] + s.alpha * u);
      s.minus.at(i, c) = 0.5 * (f[c] - s.alpha * u);
    }
  }
  return s;
}

namespace {

std::vector<double> mirror_signs(const FluxFunction& flux) {
  if (flux.kind == FluxFunction::Kind::euler) return {-1.0, 1.0, -1.0};
  return {1.0};
}

}  // namespace

BoundaryClosure reflective_plus_spec(const FluxFunction& flux, const FieldState& minus) {
  BoundaryClosure r;
  r.sign = mirror_signs(flux);
  r.mirror_source = &minus;
  return r;
}

BoundaryClosure reflective_minus_spec(const FluxFunction& flux, const FieldState& plus) {
  BoundaryClosure r;
  r.sign = mirror_signs(flux);
  r.mirror_source = &plus;
  return r;
}

namespace {

// Ghost nodal values outside a single-level uniform grid.
double uniform_ghost(const AdaptiveGrid& g, const FieldState& values, int c,
                     const BoundaryClosure* closure, std::int64_t n, std::int64_t m) {
  switch (g.bc()) {
    case BoundaryKind::periodic: {
      std::int64_t k = n % m;
      if (k < 0) k += m;
      return values.at(g.slot_of(g.j0(), k), c);
    }
    case BoundaryKind::reflective: {
      const std::int64_t mi = n < 0 ? -n : 2 * m - n;
      if (mi < 0 || mi > m) return 0.0;
      const double sign = (closure == nullptr || closure->sign.empty())
                              ? 1.0
                              : closure->sign[static_cast<std::size_t>(c)];
      const FieldState& src = (closure != nullptr && closure->mirror_source != nullptr)
                                  ? *closure->mirror_source
                                  : values;
      return sign * src.at(g.slot_of(g.j0(), mi), c);
    }
    default: {
      if (n < 0 && closure != nullptr && !closure->fixed_left.empty())
        return closure->fixed_left[static_cast<std::size_t>(c)];
      if (n > m && closure != nullptr && !closure->fixed_right.empty())
        return closure->fixed_right[static_cast<std::size_t>(c)];
      for (const auto& gw : g.extension()) {
        if (gw.ghost_index != n) continue;
        double acc = 0.0;
        for (const auto& [idx, w] : gw.terms) acc += w * values.at(g.slot_of(g.j0(), idx), c);
        return acc;
      }
      return 0.0;
    }
  }
}

// Far-field values of the split fluxes derived from the state closure.
void derive_split_closures(const FluxFunction& flux, double alpha,
                           const BoundaryClosure* state, BoundaryClosure& plus,
                           BoundaryClosure& minus) {
  if (state == nullptr) return;
  const int nc = flux.components();
  const auto split_side = [&](const std::vector<double>& ub, std::vector<double>& p,
                              std::vector<double>& q) {
    if (ub.empty()) return;
    double f[3];
    flux.flux(ub.data(), f);
    p.resize(static_cast<std::size_t>(nc));
    q.resize(static_cast<std::size_t>(nc));
    for (int c = 0; c < nc; ++c) {
      p[static_cast<std::size_t>(c)] = 0.5 * (f[c] + alpha * ub[static_cast<std::size_t>(c)]);
      q[static_cast<std::size_t>(c)] = 0.5 * (f[c] - alpha * ub[static_cast<std::size_t>(c)]);
    }
  };
  split_side(state->fixed_left, plus.fixed_left, minus.fixed_left);
  split_side(state->fixed_right, plus.fixed_right, minus.fixed_right);
}

}  // namespace

FieldState wavelet_derivative_uniform(const AdaptiveGrid& grid, const ScalingTables& tables,
                                      const FieldState& values, const BoundaryClosure* closure) {
  check_arg(grid.max_active_level() == grid.j0(), "derivative stencil requires a uniform grid");
  check_arg(values.size() == grid.node_count(), "value array does not match the active set");
  const int nc = values.ncomp;
  const int n = grid.node_count();
  const std::int64_t m = grid.base_intervals();
  const double scale = double(m) / grid.width();

  const int nl = tables.filter.support_min;
  const int nr = tables.filter.support_max;
  std::vector<double> w(static_cast<std::size_t>(nr - nl + 1), 0.0);
  for (int j = nl; j <= nr; ++j) w[static_cast<std::size_t>(j - nl)] = tables.derivative_at_integer(j);

  FieldState out = FieldState::zeros(n, nc);
  for (int slot = 0; slot < n; ++slot) {
    const std::int64_t l = grid.node(slot).index;
    for (int j = nl + 1; j <= nr - 1; ++j) {
      const double wj = w[static_cast<std::size_t>(j - nl)];
      if (wj == 0.0) continue;
      const std::int64_t k = l - j;
      const bool interior = k >= 0 && k <= (grid.bc() == BoundaryKind::periodic ? m - 1 : m);
      if (interior) {
        const int ks = grid.slot_of(grid.j0(), k);
        for (int c = 0; c < nc; ++c) out.at(slot, c) += wj * values.at(ks, c);
      } else {
        for (int c = 0; c < nc; ++c)
          out.at(slot, c) += wj * uniform_ghost(grid, values, c, closure, k, m);
      }
    }
    for (int c = 0; c < nc; ++c) out.at(slot, c) *= scale;
  }
  return out;
}

double wavelet_derivative(const AdaptiveGrid& grid, const ScalingTables& tables,
                          const FieldState& values, int slot, int component,
                          const BoundaryClosure* closure) {
  const FieldState d = wavelet_derivative_uniform(grid, tables, values, closure);
  return d.at(slot, component);
}

namespace {

void pin_fixed_endpoints(const AdaptiveGrid& grid, FieldState& rhs) {
  if (grid.bc() != BoundaryKind::fixed_inflow_outflow) return;
  for (int c = 0; c < rhs.ncomp; ++c) {
    rhs.at(grid.slot_of(grid.j0(), 0), c) = 0.0;
    rhs.at(grid.slot_of(grid.j0(), grid.base_intervals()), c) = 0.0;
  }
}

}  // namespace

FieldState rhs_uniform(const AdaptiveGrid& grid, const FieldState& state, const FluxFunction& flux,
                       const WaveletBasis& basis, const BoundaryClosure* state_closure,
                       double alpha) {
  const SplitFluxes s = global_lf_split(flux, state, alpha);
  BoundaryClosure rp = reflective_plus_spec(flux, s.minus);
  BoundaryClosure rm = reflective_minus_spec(flux, s.plus);
  derive_split_closures(flux, s.alpha, state_closure, rp, rm);
  const bool closed = grid.bc() != BoundaryKind::periodic;
  const FieldState dp = wavelet_derivative_uniform(grid, basis.pos, s.plus, closed ? &rp : nullptr);
  const FieldState dm =
      wavelet_derivative_uniform(grid, basis.neg, s.minus, closed ? &rm : nullptr);

  FieldState out = FieldState::zeros(grid.node_count(), state.ncomp);
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = -(dp.data[i] + dm.data[i]);
  pin_fixed_endpoints(grid, out);
  return out;
}

FieldState rhs_adaptive(const AdaptiveGrid& grid, const FieldState& state, const FluxFunction& flux,
                        const WaveletBasis& basis, const BoundaryClosure* state_closure,
                        double alpha) {
  const SplitFluxes s = global_lf_split(flux, state, alpha);
  const bool refl = grid.bc() == BoundaryKind::reflective;
  const bool closed = grid.bc() != BoundaryKind::periodic;
  BoundaryClosure rp = reflective_plus_spec(flux, s.minus);
  BoundaryClosure rm = reflective_minus_spec(flux, s.plus);
  derive_split_closures(flux, s.alpha, state_closure, rp, rm);

  const CoefficientSet cp = forward_transform(grid, s.plus, basis.pos, closed ? &rp : nullptr);
  const CoefficientSet cm = forward_transform(grid, s.minus, basis.neg, closed ? &rm : nullptr);

  const int nc = state.ncomp;
  FieldState out = FieldState::zeros(grid.node_count(), nc);

  ExpansionView vp;
  vp.grid = &grid;
  vp.tables = &basis.pos;
  vp.coeff = cp.data.data();
  vp.stride = nc;
  ExpansionView vm = vp;
  vm.tables = &basis.neg;
  vm.coeff = cm.data.data();
  if (refl) {
    vp.mirror_src = s.minus.data.data();
    vm.mirror_src = s.plus.data.data();
  }
  if (!rp.fixed_left.empty()) vp.fixed_left = rp.fixed_left.data();
  if (!rp.fixed_right.empty()) vp.fixed_right = rp.fixed_right.data();
  if (!rm.fixed_left.empty()) vm.fixed_left = rm.fixed_left.data();
  if (!rm.fixed_right.empty()) vm.fixed_right = rm.fixed_right.data();
  const double* signs = refl ? rp.sign.data() : nullptr;

  std::vector<double> accp(static_cast<std::size_t>(nc));
  std::vector<double> accm(static_cast<std::size_t>(nc));
  for (int slot = 0; slot < grid.node_count(); ++slot) {
    const std::int64_t p = lattice_of_node(grid, basis.depth, grid.node(slot));
    evaluate_derivative_components_lattice(vp, p, nc, accp.data(), signs);
    evaluate_derivative_components_lattice(vm, p, nc, accm.data(), signs);
    for (int c = 0; c < nc; ++c)
      out.at(slot, c) = -(accp[static_cast<std::size_t>(c)] + accm[static_cast<std::size_t>(c)]);
  }
  pin_fixed_endpoints(grid, out);
  return out;
}

}  // namespace wavup
