#include "wavup/adaptivity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wavup/common.hpp"

namespace wavup {

double smoothness_indicator(double f_prev, double f_mid, double f_next) {
  const double d2 = f_prev - 2.0 * f_mid + f_next;
  const double d1 = f_prev - f_next;
  return 13.0 / 12.0 * d2 * d2 + 0.25 * d1 * d1;
}

std::vector<int> detect_trouble_j0(const AdaptiveGrid& grid, const FieldState& values,
                                   int component, double m0) {
  const std::int64_t m = grid.base_intervals();
  const double dx = grid.width() / double(m);
  const double cut = m0 * dx * dx;
  const bool periodic = grid.bc() == BoundaryKind::periodic;
  const std::int64_t last = periodic ? m - 1 : m;

  auto value_at = [&](std::int64_t k) {
    if (periodic) k = ((k % m) + m) % m;
    return values.at(grid.slot_of(grid.j0(), k), component);
  };

  std::vector<int> out;
  for (std::int64_t l = 0; l <= last; ++l) {
    std::int64_t c = l;
    if (!periodic) c = std::clamp<std::int64_t>(l, 1, last - 1);  // one-sided shift
    const double is = smoothness_indicator(value_at(c - 1), value_at(c), value_at(c + 1));
    if (is > cut) out.push_back(grid.slot_of(grid.j0(), l));
  }
  return out;
}

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a > 0) == (b > 0))) ++q;
  return q;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void zone_of(const AdaptiveGrid& grid, int level, std::int64_t index, int reach, int width,
             std::vector<NodeKey>& out) {
  const int j_lo = std::max(grid.j0() + 1, level - reach);
  const int j_hi = std::min(grid.jmax(), level + reach);
  for (int j1 = j_lo; j1 <= j_hi; ++j1) {
    std::int64_t k_lo, k_hi;
    if (j1 >= level) {
      const std::int64_t s = std::int64_t(1) << (j1 - level);
      k_lo = index * s - width * s;
      k_hi = index * s + width * s;
    } else {
      const std::int64_t s = std::int64_t(1) << (level - j1);
      k_lo = ceil_div(index - width, s);
      k_hi = floor_div(index + width, s);
    }
    for (std::int64_t k = k_lo | 1; k <= k_hi; k += 2) out.push_back({j1, k});
  }
}

// Graded closure: every inserted node drags its two nearest coarser
// neighbors in, recursively.
void close_parents(const AdaptiveGrid& grid, std::vector<NodeKey>& nodes) {
  std::set<std::pair<int, std::int64_t>> seen;
  for (const NodeKey& n : nodes) {
    const NodeKey c = grid.normalized(n.level, n.index);
    seen.insert({c.level, c.index});
  }
  std::vector<NodeKey> stack = nodes;
  while (!stack.empty()) {
    NodeKey n = grid.normalized(stack.back().level, stack.back().index);
    stack.pop_back();
    if (n.level <= grid.j0() + 1) continue;
    for (std::int64_t p : {(n.index - 1) / 2, (n.index + 1) / 2}) {
      const NodeKey q = grid.normalized(n.level - 1, p);
      if (q.level <= grid.j0()) continue;
      if (seen.insert({q.level, q.index}).second) {
        nodes.push_back(q);
        stack.push_back(q);
      }
    }
  }
}

CoefficientSet char_coefficients(const AdaptiveGrid& grid, const FieldState& state,
                                 const WaveletBasis& basis, int component,
                                 const BoundaryClosure* closure, FieldState& scratch,
                                 BoundaryClosure& one) {
  scratch = FieldState::zeros(grid.node_count(), 1);
  for (int i = 0; i < grid.node_count(); ++i) scratch.at(i) = state.at(i, component);
  const BoundaryClosure* r = nullptr;
  if (closure != nullptr) {
    one = BoundaryClosure{};
    if (!closure->sign.empty()) one.sign = {closure->sign[static_cast<std::size_t>(component)]};
    if (!closure->fixed_left.empty())
      one.fixed_left = {closure->fixed_left[static_cast<std::size_t>(component)]};
    if (!closure->fixed_right.empty())
      one.fixed_right = {closure->fixed_right[static_cast<std::size_t>(component)]};
    r = &one;
  }
  return forward_transform(grid, scratch, basis.pos, r);
}

}  // namespace

std::vector<NodeKey> adjacent_zone(const AdaptiveGrid& grid, const NodeKey& node,
                                   const AdaptConfig& config) {
  std::vector<NodeKey> out;
  if (config.level_reach == 0 && config.zone_width == 0) {
    if (node.level > grid.j0()) out.push_back(node);
    return out;
  }
  zone_of(grid, node.level, node.index, config.level_reach, config.zone_width, out);
  return out;
}

AdaptResult initialize_nodes(const AdaptiveGrid& base, const InitialCondition& initial, int ncomp,
                             const WaveletBasis& basis, const AdaptConfig& config,
                             const BoundaryClosure* closure) {
  check_arg(config.eps > 0.0, "coefficient threshold must be positive");
  AdaptResult r;
  r.grid = base;

  auto sample = [&](const AdaptiveGrid& g) {
    FieldState s = FieldState::zeros(g.node_count(), ncomp);
    for (int i = 0; i < g.node_count(); ++i) initial(g.coordinate(i), s.row(i));
    return s;
  };
  r.state = sample(r.grid);

  // Probe one finer layer per pass: every active node proposes its two
  // children, the initial condition is sampled there, and only candidates
  // whose coefficients pass the tests survive (plus detection zones and the
  // graded closure).  Smooth data prunes back to the uniform basic level.
  for (int pass = 0; pass <= base.jmax() - base.j0() + 1; ++pass) {
    std::vector<NodeKey> probe;
    for (int i = 0; i < r.grid.node_count(); ++i) {
      const NodeKey& n = r.grid.node(i);
      if (n.level >= r.grid.jmax()) continue;
      probe.push_back({n.level + 1, 2 * n.index - 1});
      probe.push_back({n.level + 1, 2 * n.index + 1});
    }
    for (int j = r.grid.j0() + 1; j <= r.grid.jmax(); ++j)
      for (int slot : r.grid.level_slots(j)) probe.push_back(r.grid.node(slot));

    AdaptiveGrid trial = r.grid;
    trial.reset_active(probe);
    const FieldState tstate = sample(trial);
    FieldState scratch;
    BoundaryClosure scalar_closure;
    const CoefficientSet co = char_coefficients(trial, tstate, basis, config.char_component,
                                                closure, scratch, scalar_closure);

    std::vector<NodeKey> keep = threshold(trial, co, config.eps, 0);
    for (const NodeKey& n : keep)
      zone_of(trial, n.level, n.index, config.level_reach, config.zone_width, keep);
    for (int slot : detect_trouble_j0(trial, tstate, config.char_component, config.m0)) {
      const NodeKey& n = trial.node(slot);
      zone_of(trial, n.level, n.index, config.insertion_depth, config.zone_width, keep);
    }
    close_parents(trial, keep);

    AdaptiveGrid next = r.grid;
    next.reset_active(keep);
    if (next.node_count() == r.grid.node_count()) {
      bool same = true;
      for (int i = 0; i < next.node_count() && same; ++i)
        same = next.node(i) == r.grid.node(i);
      if (same) break;
    }
    r.grid = std::move(next);
    r.state = sample(r.grid);
  }
  r.added = r.grid.node_count() - base.node_count();
  return r;
}

AdaptResult adapt_step(const AdaptiveGrid& grid, const FieldState& state,
                       const WaveletBasis& basis, const AdaptConfig& config,
                       const BoundaryClosure* closure) {
  FieldState scratch;
  BoundaryClosure scalar_closure;
  const CoefficientSet cochar = char_coefficients(grid, state, basis, config.char_component,
                                                  closure, scratch, scalar_closure);

  // zones around basic-level trouble (new steep regions) and around
  // above-threshold detail nodes
  std::vector<NodeKey> zones;
  for (int slot : detect_trouble_j0(grid, state, config.char_component, config.m0)) {
    const NodeKey& n = grid.node(slot);
    zone_of(grid, n.level, n.index, config.insertion_depth, config.zone_width, zones);
  }
  const std::vector<NodeKey> trouble = threshold(grid, cochar, config.eps, 0);
  for (const NodeKey& n : trouble)
    zone_of(grid, n.level, n.index, config.level_reach, config.zone_width, zones);

  std::set<std::pair<int, std::int64_t>> zone_set;
  for (const NodeKey& n : zones) {
    const NodeKey c = grid.normalized(n.level, n.index);
    zone_set.insert({c.level, c.index});
  }

  // retention sweep, finest level first: keep loud nodes, zone members, and
  // parents of kept children
  std::set<std::pair<int, std::int64_t>> kept;
  for (int j = grid.jmax(); j > grid.j0(); --j) {
    for (int slot : grid.level_slots(j)) {
      const NodeKey& n = grid.node(slot);
      bool keep = std::abs(cochar.at(slot)) > config.eps ||
                  zone_set.count({n.level, n.index}) > 0;
      if (!keep && j < grid.jmax()) {
        for (std::int64_t child : {2 * n.index - 1, 2 * n.index + 1})
          if (kept.count({j + 1, child}) > 0) keep = true;
      }
      if (keep) kept.insert({n.level, n.index});
    }
  }

  std::vector<NodeKey> next;
  next.reserve(kept.size() + zone_set.size());
  for (const auto& [lev, idx] : kept) next.push_back({lev, idx});
  for (const auto& [lev, idx] : zone_set) next.push_back({lev, idx});
  close_parents(grid, next);

  AdaptResult r;
  r.grid = grid;
  r.grid.reset_active(next);

  // full-state coefficients of the pre-update expansion for reconstruction
  const CoefficientSet co = forward_transform(grid, state, basis.pos, closure);
  r.state = FieldState::zeros(r.grid.node_count(), state.ncomp);
  int carried = 0;
  for (int i = 0; i < r.grid.node_count(); ++i) {
    const NodeKey& n = r.grid.node(i);
    const int old = grid.slot_of(n.level, n.index);
    if (old >= 0) {
      for (int c = 0; c < state.ncomp; ++c) r.state.at(i, c) = state.at(old, c);
      ++carried;
    } else {
      const std::int64_t p = lattice_of_node(r.grid, basis.depth, n);
      ExpansionView v = make_view(grid, basis.pos, co, 0, closure);
      v.stride = state.ncomp;
      const double* signs =
          (closure != nullptr && !closure->sign.empty()) ? closure->sign.data() : nullptr;
      evaluate_components_lattice(v, p, state.ncomp, r.state.row(i), signs);
    }
  }
  r.added = r.grid.node_count() - carried;
  r.removed = grid.node_count() - carried;
  return r;
}

}  // namespace wavup
