#include "wavup/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "wavup/common.hpp"

namespace wavup {

const char* to_string(BoundaryKind bc) {
  switch (bc) {
    case BoundaryKind::periodic: return "periodic";
    case BoundaryKind::reflective: return "reflective";
    default: return "fixed";
  }
}

namespace {

constexpr int kPosShift = 40;  // node ordering key: index << (kPosShift - level)

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t wrap_index(std::int64_t k, std::int64_t n) {
  std::int64_t r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace

AdaptiveGrid AdaptiveGrid::build_uniform(int j0, double a, double b, BoundaryKind bc, int jmax,
                                         int eta, int basis_order) {
  check_arg(j0 >= 2, "basic level must be at least 2");
  check_arg(jmax >= j0, "maximum level must not be below the basic level");
  check_arg(jmax <= 22, "maximum level too large");
  check_arg(b > a, "domain must have positive width");
  check_arg(eta >= 2, "extension order must be at least 2");
  check_arg(bc != BoundaryKind::fixed_inflow_outflow || (std::int64_t(1) << j0) + 1 >= eta,
            "basic level too coarse for the extension order");

  AdaptiveGrid g;
  g.j0_ = j0;
  g.jmax_ = jmax;
  g.a_ = a;
  g.b_ = b;
  g.bc_ = bc;
  g.eta_ = eta;
  g.ghost_width_ = basis_order;

  const std::int64_t m = g.base_intervals();
  const std::int64_t last = (bc == BoundaryKind::periodic) ? m - 1 : m;
  for (std::int64_t k = 0; k <= last; ++k) g.nodes_.push_back({j0, k});
  g.rebuild_maps();

  if (bc == BoundaryKind::fixed_inflow_outflow) {
    // eta-point Lagrange extrapolation weights for each external basic-level
    // index, anchored on the nearest interior nodes of that boundary.
    auto add_ghost = [&](std::int64_t n, std::int64_t first) {
      GhostWeights gw;
      gw.ghost_index = n;
      for (std::int64_t j = first; j < first + eta; ++j) {
        double w = 1.0;
        for (std::int64_t i = first; i < first + eta; ++i) {
          if (i == j) continue;
          w *= double(n - i) / double(j - i);
        }
        gw.terms.emplace_back(j, w);
      }
      g.extension_.push_back(std::move(gw));
    };
    for (std::int64_t n = -g.ghost_width_; n <= -1; ++n) add_ghost(n, 0);
    for (std::int64_t n = m + 1; n <= m + g.ghost_width_; ++n) add_ghost(n, m - eta + 1);
  }
  return g;
}

void AdaptiveGrid::rebuild_maps() {
  std::sort(nodes_.begin(), nodes_.end(), [](const NodeKey& x, const NodeKey& y) {
    return (x.index << (kPosShift - x.level)) < (y.index << (kPosShift - y.level));
  });
  level_slots_.assign(static_cast<std::size_t>(jmax_ - j0_ + 1), {});
  level_map_.assign(static_cast<std::size_t>(jmax_ - j0_ + 1), {});
  for (int j = j0_; j <= jmax_; ++j) {
    auto& m = level_map_[static_cast<std::size_t>(j - j0_)];
    m.reserve(64);
  }
  for (int slot = 0; slot < node_count(); ++slot) {
    const NodeKey& n = nodes_[static_cast<std::size_t>(slot)];
    level_slots_[static_cast<std::size_t>(n.level - j0_)].push_back(slot);
    level_map_[static_cast<std::size_t>(n.level - j0_)].emplace(n.index, slot);
  }
}

double AdaptiveGrid::coordinate(int slot) const {
  const NodeKey& n = nodes_[static_cast<std::size_t>(slot)];
  return a_ + (b_ - a_) * double(n.index) / double(std::int64_t(1) << n.level);
}

int AdaptiveGrid::max_active_level() const {
  for (int j = jmax_; j > j0_; --j)
    if (!level_slots_[static_cast<std::size_t>(j - j0_)].empty()) return j;
  return j0_;
}

NodeKey AdaptiveGrid::normalized(int level, std::int64_t index) const {
  if (bc_ == BoundaryKind::periodic) index = wrap_index(index, std::int64_t(1) << level);
  while (level > j0_ && index % 2 == 0) {
    index /= 2;
    --level;
  }
  return {level, index};
}

int AdaptiveGrid::slot_of(int level, std::int64_t index) const {
  const NodeKey n = normalized(level, index);
  if (n.level < j0_ || n.level > jmax_) return -1;
  const auto& m = level_map_[static_cast<std::size_t>(n.level - j0_)];
  const auto it = m.find(n.index);
  return it == m.end() ? -1 : it->second;
}

void AdaptiveGrid::reset_active(const std::vector<NodeKey>& higher_nodes) {
  std::vector<NodeKey> keep;
  const std::int64_t m = base_intervals();
  const std::int64_t last = (bc_ == BoundaryKind::periodic) ? m - 1 : m;
  for (std::int64_t k = 0; k <= last; ++k) keep.push_back({j0_, k});
  for (const NodeKey& raw : higher_nodes) {
    if (raw.level < j0_ || raw.level > jmax_) continue;
    NodeKey n = normalized(raw.level, raw.index);
    if (n.level == j0_) continue;  // always active
    if (n.index < 0 || n.index > (std::int64_t(1) << n.level)) continue;  // external
    keep.push_back(n);
  }
  std::sort(keep.begin(), keep.end(), [](const NodeKey& x, const NodeKey& y) {
    return (x.index << (kPosShift - x.level)) < (y.index << (kPosShift - y.level));
  });
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  nodes_ = std::move(keep);
  rebuild_maps();
}

namespace {

enum class Mode { value, derivative };

// Basic-level ghost coefficient for out-of-range index n (component 0 of the
// view; `c` shifts into the closure arrays for multi-component callers).
double ghost_coefficient(const ExpansionView& v, std::int64_t n, int c = 0) {
  const AdaptiveGrid& g = *v.grid;
  const std::int64_t m = g.base_intervals();
  if (g.bc() == BoundaryKind::reflective) {
    const std::int64_t mi = n < 0 ? -n : 2 * m - n;
    if (mi < 0 || mi > m) return 0.0;
    const double* src = v.mirror_src ? v.mirror_src : v.coeff;
    const int slot = g.slot_of(g.j0(), mi);
    return slot < 0 ? 0.0
                    : v.mirror_sign * src[static_cast<std::size_t>(slot) * v.stride + c];
  }
  if (n < 0 && v.fixed_left != nullptr) return v.fixed_left[c];
  if (n > m && v.fixed_right != nullptr) return v.fixed_right[c];
  for (const auto& gw : g.extension()) {
    if (gw.ghost_index != n) continue;
    double acc = 0.0;
    for (const auto& [idx, w] : gw.terms) {
      const int slot = g.slot_of(g.j0(), idx);
      acc += w * v.coeff[static_cast<std::size_t>(slot) * v.stride + c];
    }
    return acc;
  }
  return 0.0;  // beyond the covered ghost strip: no basis support reaches here
}

// Shared cover loop: accumulates ncomp components of the expansion (or its
// x-derivative) at lattice point p into out[].  v.coeff points at component 0;
// `signs` overrides v.mirror_sign per component when non-null.
void accumulate(const ExpansionView& v, std::int64_t p, Mode mode, int ncomp, double* out,
                const double* signs = nullptr) {
  const AdaptiveGrid& g = *v.grid;
  const ScalingTables& t = *v.tables;
  const int d = t.depth;
  const std::int64_t pd = std::int64_t(1) << d;
  const int nl = t.filter.support_min;
  const int nr = t.filter.support_max;
  const int top = v.max_level < 0 ? g.jmax() : v.max_level;
  const bool periodic = g.bc() == BoundaryKind::periodic;
  const double inv_w = 1.0 / g.width();

  for (int c = 0; c < ncomp; ++c) out[c] = 0.0;

  for (int j = g.j0(); j <= top; ++j) {
    const std::int64_t q = p << (j - g.j0());
    const std::int64_t base = floor_div(q, pd);
    const double level_scale =
        (mode == Mode::derivative) ? double(std::int64_t(1) << j) * inv_w : 1.0;
    const std::int64_t m = std::int64_t(1) << j;
    for (std::int64_t k = base - nr; k <= base - nl + 1; ++k) {
      const std::int64_t arg = q - (k << d);
      const double w = (mode == Mode::derivative) ? t.derivative_at(arg) : t.value_at(arg);
      if (w == 0.0) continue;
      const double ws = w * level_scale;
      const std::int64_t kk = periodic ? wrap_index(k, m) : k;
      if (j == g.j0()) {
        if (kk >= 0 && kk <= (periodic ? m - 1 : m)) {
          const int slot = g.slot_of(j, kk);
          const double* src = v.coeff + static_cast<std::size_t>(slot) * v.stride;
          for (int c = 0; c < ncomp; ++c) out[c] += ws * src[c];
        } else if (g.bc() == BoundaryKind::reflective) {
          const std::int64_t mi = kk < 0 ? -kk : 2 * m - kk;
          if (mi >= 0 && mi <= m) {
            const int slot = g.slot_of(j, mi);
            const double* src =
                (v.mirror_src ? v.mirror_src : v.coeff) + static_cast<std::size_t>(slot) * v.stride;
            for (int c = 0; c < ncomp; ++c)
              out[c] += ws * (signs ? signs[c] : v.mirror_sign) * src[c];
          }
        } else if (kk < 0 && v.fixed_left != nullptr) {
          for (int c = 0; c < ncomp; ++c) out[c] += ws * v.fixed_left[c];
        } else if (kk > m && v.fixed_right != nullptr) {
          for (int c = 0; c < ncomp; ++c) out[c] += ws * v.fixed_right[c];
        } else {
          for (const auto& gw : g.extension()) {
            if (gw.ghost_index != kk) continue;
            for (const auto& [idx, wgt] : gw.terms) {
              const double* src =
                  v.coeff + static_cast<std::size_t>(g.slot_of(j, idx)) * v.stride;
              for (int c = 0; c < ncomp; ++c) out[c] += ws * wgt * src[c];
            }
            break;
          }
        }
        continue;
      }
      if (kk % 2 == 0 || kk < 0 || kk > m) continue;  // not a stored node of level j
      const int slot = g.slot_of(j, kk);
      if (slot < 0) continue;
      const double* src = v.coeff + static_cast<std::size_t>(slot) * v.stride;
      for (int c = 0; c < ncomp; ++c) out[c] += ws * src[c];
    }
  }
}

}  // namespace

void evaluate_components_lattice(const ExpansionView& v, std::int64_t p, int ncomp, double* out,
                                 const double* signs) {
  accumulate(v, p, Mode::value, ncomp, out, signs);
}

void evaluate_derivative_components_lattice(const ExpansionView& v, std::int64_t p, int ncomp,
                                            double* out, const double* signs) {
  accumulate(v, p, Mode::derivative, ncomp, out, signs);
}

double evaluate_lattice(const ExpansionView& v, std::int64_t p) {
  double out;
  accumulate(v, p, Mode::value, 1, &out);
  return out;
}

double evaluate_derivative_lattice(const ExpansionView& v, std::int64_t p) {
  double out;
  accumulate(v, p, Mode::derivative, 1, &out);
  return out;
}

double integrate_lattice(const ExpansionView& v, std::int64_t p1, std::int64_t p2) {
  const AdaptiveGrid& g = *v.grid;
  const ScalingTables& t = *v.tables;
  const int d = t.depth;
  const std::int64_t pd = std::int64_t(1) << d;
  const int nl = t.filter.support_min;
  const int nr = t.filter.support_max;
  const int top = v.max_level < 0 ? g.jmax() : v.max_level;
  const bool periodic = g.bc() == BoundaryKind::periodic;
  if (periodic) {
    // shift the window so its left end sits inside the principal period
    const std::int64_t period = std::int64_t(1) << (g.j0() + d);
    const std::int64_t shift = floor_div(p1, period) * period;
    p1 -= shift;
    p2 -= shift;
  }

  double acc = 0.0;
  for (int j = g.j0(); j <= top; ++j) {
    const std::int64_t q1 = p1 << (j - g.j0());
    const std::int64_t q2 = p2 << (j - g.j0());
    const double cell = g.width() / double(std::int64_t(1) << j);
    const std::int64_t m = std::int64_t(1) << j;
    for (std::int64_t k = floor_div(q1, pd) - nr; k <= floor_div(q2, pd) - nl + 1; ++k) {
      const double dtheta = t.primitive_at(q2 - (k << d)) - t.primitive_at(q1 - (k << d));
      if (dtheta == 0.0) continue;
      double coeff = 0.0;
      std::int64_t kk = periodic ? wrap_index(k, m) : k;
      if (j == g.j0()) {
        if (kk >= 0 && kk <= (periodic ? m - 1 : m)) {
          const int slot = g.slot_of(j, kk);
          coeff = v.coeff[static_cast<std::size_t>(slot) * v.stride];
        } else {
          coeff = ghost_coefficient(v, kk);
        }
      } else {
        if (kk % 2 == 0 || kk < 0 || kk > m) continue;
        const int slot = g.slot_of(j, kk);
        if (slot < 0) continue;
        coeff = v.coeff[static_cast<std::size_t>(slot) * v.stride];
      }
      acc += coeff * cell * dtheta;
    }
  }
  return acc;
}

std::int64_t lattice_point(const AdaptiveGrid& grid, int depth, double x) {
  const double xi = (x - grid.xmin()) / grid.width();
  const double t = std::ldexp(xi, grid.j0() + depth);
  const double r = std::round(t);
  check_arg(std::abs(t - r) <= 1e-6 * std::max(1.0, std::abs(t)),
            "evaluation point is off the tabulation lattice");
  return static_cast<std::int64_t>(r);
}

std::int64_t lattice_of_node(const AdaptiveGrid& grid, int depth, const NodeKey& node) {
  return node.index << (grid.j0() + depth - node.level);
}

ExpansionView make_view(const AdaptiveGrid& grid, const ScalingTables& tables,
                        const CoefficientSet& coeffs, int component,
                        const BoundaryClosure* closure) {
  ExpansionView v;
  v.grid = &grid;
  v.tables = &tables;
  v.coeff = coeffs.data.data() + component;
  v.stride = coeffs.ncomp;
  if (closure != nullptr) {
    if (!closure->sign.empty())
      v.mirror_sign = closure->sign[static_cast<std::size_t>(component)];
    if (closure->mirror_source != nullptr)
      v.mirror_src = closure->mirror_source->data.data() + component;
    if (!closure->fixed_left.empty()) v.fixed_left = closure->fixed_left.data() + component;
    if (!closure->fixed_right.empty()) v.fixed_right = closure->fixed_right.data() + component;
  }
  return v;
}

CoefficientSet forward_transform(const AdaptiveGrid& grid, const FieldState& values,
                                 const ScalingTables& tables, const BoundaryClosure* closure) {
  check_arg(values.size() == grid.node_count(), "value array does not match the active set");
  const int ncomp = values.ncomp;
  CoefficientSet out = values;  // basic-level slots keep their nodal values

  const FilterBank& f = tables.filter;
  const int d = tables.depth;

  for (int c = 0; c < ncomp; ++c) {
    std::unordered_map<std::int64_t, double> memo;  // keyed by lattice position
    ExpansionView view = make_view(grid, tables, out, c, closure);
    if (closure != nullptr && closure->mirror_source == nullptr &&
        grid.bc() == BoundaryKind::reflective)
      view.mirror_src = values.data.data() + c;

    // Value of the partial expansion at basic-level parent index m (possibly
    // external) or at a coarser normalized point.
    auto parent_value = [&](int jp, std::int64_t m) -> double {
      NodeKey n = grid.normalized(jp, m);
      const int slot = grid.slot_of(n.level, n.index);
      if (slot >= 0) return values.at(slot, c);
      if (n.level == grid.j0()) return ghost_coefficient(view, n.index);
      const std::int64_t p = n.index << (grid.j0() + d - n.level);
      const auto it = memo.find(p);
      if (it != memo.end()) return it->second;
      ExpansionView pv = view;
      pv.max_level = n.level;
      const double val = evaluate_lattice(pv, p);
      memo.emplace(p, val);
      return val;
    };

    for (int j = grid.j0() + 1; j <= grid.jmax(); ++j) {
      for (int slot : grid.level_slots(j)) {
        const std::int64_t k = grid.node(slot).index;
        double pred = 0.0;
        // taps h(k - 2m) over the mask support
        const std::int64_t m_lo = floor_div(k - f.support_max, 2);
        const std::int64_t m_hi = floor_div(k - f.support_min, 2) + 1;
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
          const double h = f.coeff(static_cast<int>(k - 2 * m));
          if (h == 0.0) continue;
          pred += h * parent_value(j - 1, m);
        }
        out.at(slot, c) = values.at(slot, c) - pred;
      }
    }
  }
  return out;
}

double evaluate(const AdaptiveGrid& grid, const CoefficientSet& coeffs,
                const ScalingTables& tables, double x, int component,
                const BoundaryClosure* closure) {
  check_arg(x >= grid.xmin() - 1e-12 && x <= grid.xmax() + 1e-12,
            "evaluation point outside the domain");
  const ExpansionView v = make_view(grid, tables, coeffs, component, closure);
  return evaluate_lattice(v, lattice_point(grid, tables.depth, x));
}

std::vector<NodeKey> threshold(const AdaptiveGrid& grid, const CoefficientSet& coeffs,
                               double eps, int component) {
  check_arg(eps > 0.0, "threshold must be positive");
  std::vector<NodeKey> out;
  for (int j = grid.j0() + 1; j <= grid.jmax(); ++j)
    for (int slot : grid.level_slots(j))
      if (std::abs(coeffs.at(slot, component)) > eps) out.push_back(grid.node(slot));
  return out;
}

void write_snapshot_csv(const AdaptiveGrid& grid, const FieldState& state, std::ostream& out) {
  out.precision(17);
  out << "level,index,x,value";
  for (int c = 1; c < state.ncomp; ++c) out << ",value" << c;
  out << '\n';
  for (int slot = 0; slot < grid.node_count(); ++slot) {
    const NodeKey& n = grid.node(slot);
    out << n.level << ',' << n.index << ',' << grid.coordinate(slot);
    for (int c = 0; c < state.ncomp; ++c) out << ',' << state.at(slot, c);
    out << '\n';
  }
}

}  // namespace wavup
