#include "wavup/reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wavup/common.hpp"

namespace wavup {

double exact_advection(const PointwiseFn& initial, double a, double xmin, double xmax, double x,
                       double t) {
  const double w = xmax - xmin;
  double y = x - a * t;
  y = y - w * std::floor((y - xmin) / w);  // wrap into [xmin, xmin + w)
  double u[3];
  initial(y, u);
  return u[0];
}

double burgers_exact(const std::function<double(double)>& u0,
                     const std::function<double(double)>& du0, double x, double t, double tol) {
  double u = u0(x);
  for (int it = 0; it < 200; ++it) {
    const double y = x - u * t;
    const double g = u - u0(y);
    if (std::abs(g) <= tol) return u;
    const double dg = 1.0 + t * du0(y);
    check_run(dg > 1e-12, "characteristic equation is degenerate (post-shock query?)");
    u -= g / dg;
  }
  throw std::runtime_error("characteristic iteration did not converge (post-shock query?)");
}

namespace {

double sound_speed(const PrimitiveState& s, double gamma) {
  return std::sqrt(gamma * s.p / s.rho);
}

// Toro's pressure function for one side: flux difference across a shock or
// rarefaction connecting the star region to state s.
double pressure_fn(double p, const PrimitiveState& s, double gamma, double* deriv) {
  const double c = sound_speed(s, gamma);
  if (p > s.p) {  // shock
    const double a = 2.0 / ((gamma + 1.0) * s.rho);
    const double b = (gamma - 1.0) / (gamma + 1.0) * s.p;
    const double q = std::sqrt(a / (p + b));
    if (deriv) *deriv = q * (1.0 - 0.5 * (p - s.p) / (p + b));
    return (p - s.p) * q;
  }
  const double pr = p / s.p;
  if (deriv) *deriv = std::pow(pr, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c);
  return 2.0 * c / (gamma - 1.0) * (std::pow(pr, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
}

}  // namespace

RiemannSolution solve_riemann(const PrimitiveState& left, const PrimitiveState& right,
                              double gamma) {
  check_arg(left.rho > 0.0 && right.rho > 0.0 && left.p > 0.0 && right.p > 0.0,
            "states must have positive density and pressure");
  const double cl = sound_speed(left, gamma);
  const double cr = sound_speed(right, gamma);
  check_run(2.0 * (cl + cr) / (gamma - 1.0) > right.u - left.u, "vacuum forms between the states");

  // two-rarefaction guess, positivity-clamped
  double p = std::pow((cl + cr - 0.5 * (gamma - 1.0) * (right.u - left.u)) /
                          (cl / std::pow(left.p, (gamma - 1.0) / (2.0 * gamma)) +
                           cr / std::pow(right.p, (gamma - 1.0) / (2.0 * gamma))),
                      2.0 * gamma / (gamma - 1.0));
  p = std::max(p, 1e-10 * std::min(left.p, right.p));

  for (int it = 0; it < 100; ++it) {
    double dl, dr;
    const double fl = pressure_fn(p, left, gamma, &dl);
    const double fr = pressure_fn(p, right, gamma, &dr);
    const double g = fl + fr + right.u - left.u;
    const double step = g / (dl + dr);
    const double pn = std::max(p - step, 1e-12 * p);
    if (std::abs(pn - p) <= 1e-13 * p) {
      p = pn;
      break;
    }
    p = pn;
  }

  RiemannSolution sol;
  sol.left = left;
  sol.right = right;
  sol.gamma = gamma;
  sol.p_star = p;
  const double fl = pressure_fn(p, left, gamma, nullptr);
  const double fr = pressure_fn(p, right, gamma, nullptr);
  sol.u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
  sol.left_shock = p > left.p;
  sol.right_shock = p > right.p;

  const double gm = (gamma - 1.0) / (gamma + 1.0);
  sol.rho_star_left = sol.left_shock
                          ? left.rho * (p / left.p + gm) / (gm * p / left.p + 1.0)
                          : left.rho * std::pow(p / left.p, 1.0 / gamma);
  sol.rho_star_right = sol.right_shock
                           ? right.rho * (p / right.p + gm) / (gm * p / right.p + 1.0)
                           : right.rho * std::pow(p / right.p, 1.0 / gamma);
  return sol;
}

double RiemannSolution::left_head() const {
  const double cl = sound_speed(left, gamma);
  if (left_shock)
    return left.u - cl * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p_star / left.p +
                                   (gamma - 1.0) / (2.0 * gamma));
  return left.u - cl;
}

double RiemannSolution::left_tail() const {
  if (left_shock) return left_head();
  const double cstar = std::sqrt(gamma * p_star / rho_star_left);
  return u_star - cstar;
}

double RiemannSolution::right_wave_speed() const {
  const double cr = sound_speed(right, gamma);
  if (right_shock)
    return right.u + cr * std::sqrt((gamma + 1.0) / (2.0 * gamma) * p_star / right.p +
                                    (gamma - 1.0) / (2.0 * gamma));
  return right.u + cr;  // rarefaction head
}

PrimitiveState RiemannSolution::sample(double xi) const {
  const double cl = sound_speed(left, gamma);
  const double cr = sound_speed(right, gamma);
  if (xi <= u_star) {
    if (left_shock) {
      return xi <= left_head() ? left : PrimitiveState{rho_star_left, u_star, p_star};
    }
    if (xi <= left.u - cl) return left;
    const double cstar = std::sqrt(gamma * p_star / rho_star_left);
    if (xi >= u_star - cstar) return {rho_star_left, u_star, p_star};
    // inside the left fan
    const double c = (2.0 * cl + (gamma - 1.0) * (left.u - xi)) / (gamma + 1.0);
    const double u = xi + c;
    const double rho = left.rho * std::pow(c / cl, 2.0 / (gamma - 1.0));
    return {rho, u, left.p * std::pow(rho / left.rho, gamma)};
  }
  if (right_shock) {
    return xi >= right_wave_speed() ? right : PrimitiveState{rho_star_right, u_star, p_star};
  }
  if (xi >= right.u + cr) return right;
  const double cstar = std::sqrt(gamma * p_star / rho_star_right);
  if (xi <= u_star + cstar) return {rho_star_right, u_star, p_star};
  // inside the right fan
  const double c = (2.0 * cr - (gamma - 1.0) * (right.u - xi)) / (gamma + 1.0);
  const double u = xi - c;
  const double rho = right.rho * std::pow(c / cr, 2.0 / (gamma - 1.0));
  return {rho, u, right.p * std::pow(rho / right.rho, gamma)};
}

double ReferenceTable::interpolate(double xq, int component) const {
  check_arg(!x.empty(), "empty reference table");
  if (xq <= x.front()) return value[static_cast<std::size_t>(component)];
  if (xq >= x.back())
    return value[(x.size() - 1) * static_cast<std::size_t>(ncomp) + component];
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t i = static_cast<std::size_t>(it - x.begin());
  const double w = (xq - x[i - 1]) / (x[i] - x[i - 1]);
  const double a = value[(i - 1) * ncomp + component];
  const double b = value[i * ncomp + component];
  return (1.0 - w) * a + w * b;
}

namespace {

// Classic fifth-order WENO reconstruction of the upwind-biased flux at the
// right cell face, stencil {i-2 .. i+2}.
double weno5_face(double fm2, double fm1, double f0, double fp1, double fp2) {
  const double eps = 1e-6;
  const double b0 = 13.0 / 12.0 * (fm2 - 2 * fm1 + f0) * (fm2 - 2 * fm1 + f0) +
                    0.25 * (fm2 - 4 * fm1 + 3 * f0) * (fm2 - 4 * fm1 + 3 * f0);
  const double b1 =
      13.0 / 12.0 * (fm1 - 2 * f0 + fp1) * (fm1 - 2 * f0 + fp1) + 0.25 * (fm1 - fp1) * (fm1 - fp1);
  const double b2 = 13.0 / 12.0 * (f0 - 2 * fp1 + fp2) * (f0 - 2 * fp1 + fp2) +
                    0.25 * (3 * f0 - 4 * fp1 + fp2) * (3 * f0 - 4 * fp1 + fp2);
  double w0 = 0.1 / ((eps + b0) * (eps + b0));
  double w1 = 0.6 / ((eps + b1) * (eps + b1));
  double w2 = 0.3 / ((eps + b2) * (eps + b2));
  const double ws = w0 + w1 + w2;
  w0 /= ws;
  w1 /= ws;
  w2 /= ws;
  const double q0 = (2 * fm2 - 7 * fm1 + 11 * f0) / 6.0;
  const double q1 = (-fm1 + 5 * f0 + 2 * fp1) / 6.0;
  const double q2 = (2 * f0 + 5 * fp1 - fp2) / 6.0;
  return w0 * q0 + w1 * q1 + w2 * q2;
}

struct WenoGrid {
  const ProblemSpec* prob;
  int n = 0;
  int nc = 1;
  double dx = 0.0;

  double xat(int i) const { return prob->xmin + (i + 0.5) * dx; }

  // ghost access with the problem's boundary treatment
  void state_at(const std::vector<double>& u, int i, double* out) const {
    if (i >= 0 && i < n) {
      for (int c = 0; c < nc; ++c) out[c] = u[static_cast<std::size_t>(i) * nc + c];
      return;
    }
    switch (prob->bc) {
      case BoundaryKind::periodic: {
        const int k = ((i % n) + n) % n;
        for (int c = 0; c < nc; ++c) out[c] = u[static_cast<std::size_t>(k) * nc + c];
        return;
      }
      case BoundaryKind::reflective: {
        const int k = i < 0 ? -1 - i : 2 * n - 1 - i;
        for (int c = 0; c < nc; ++c) out[c] = u[static_cast<std::size_t>(k) * nc + c];
        if (nc == 3) out[1] = -out[1];
        return;
      }
      default:  // fixed: hold the initial edge values
        prob->initial(i < 0 ? prob->xmin : prob->xmax, out);
        return;
    }
  }
};

std::vector<double> weno_rhs(const WenoGrid& g, const std::vector<double>& u, double alpha) {
  const int n = g.n, nc = g.nc;

  // split fluxes on an extended window
  const int gh = 3;
  std::vector<double> fp((n + 2 * gh) * nc), fm((n + 2 * gh) * nc);
  double s[3], f[3];
  for (int i = -gh; i < n + gh; ++i) {
    g.state_at(u, i, s);
    g.prob->flux.flux(s, f);
    for (int c = 0; c < nc; ++c) {
      fp[(i + gh) * nc + c] = 0.5 * (f[c] + alpha * s[c]);
      fm[(i + gh) * nc + c] = 0.5 * (f[c] - alpha * s[c]);
    }
  }

  // numerical flux at face i+1/2 for i = -1 .. n-1
  std::vector<double> face((n + 1) * nc);
  for (int i = -1; i < n; ++i) {
    for (int c = 0; c < nc; ++c) {
      const auto at = [&](const std::vector<double>& a, int j) { return a[(j + gh) * nc + c]; };
      const double hp = weno5_face(at(fp, i - 2), at(fp, i - 1), at(fp, i), at(fp, i + 1),
                                   at(fp, i + 2));
      const double hm = weno5_face(at(fm, i + 3), at(fm, i + 2), at(fm, i + 1), at(fm, i),
                                   at(fm, i - 1));
      face[(i + 1) * nc + c] = hp + hm;
    }
  }

  std::vector<double> rhs(static_cast<std::size_t>(n) * nc);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < nc; ++c)
      rhs[i * nc + c] = -(face[(i + 1) * nc + c] - face[i * nc + c]) / g.dx;
  return rhs;
}

}  // namespace

ReferenceTable weno5_reference(const ProblemSpec& problem, int points, double t_end, double cfl,
                               bool accuracy_mode) {
  check_arg(points >= 16, "reference grid too coarse");
  WenoGrid g;
  g.prob = &problem;
  g.n = points;
  g.nc = problem.flux.components();
  g.dx = (problem.xmax - problem.xmin) / points;

  std::vector<double> u(static_cast<std::size_t>(points) * g.nc);
  for (int i = 0; i < points; ++i) problem.initial(g.xat(i), &u[i * g.nc]);

  double t = 0.0;
  while (t < t_end - 1e-14 * t_end) {
    double alpha = 0.0;
    for (int i = 0; i < points; ++i) {
      const double* s = &u[i * g.nc];
      if (problem.flux.kind == FluxFunction::Kind::euler) {
        check_run(s[0] > 0.0, "reference solver lost density positivity");
        const double p = std::max(problem.flux.pressure(s), 0.0);
        alpha = std::max(alpha, std::abs(s[1] / s[0]) + std::sqrt(problem.flux.gamma * p / s[0]));
      } else {
        alpha = std::max(alpha, problem.flux.max_wave_speed(s));
      }
    }
    double dt = alpha > 0.0 ? cfl * g.dx / alpha : cfl * g.dx;
    if (accuracy_mode) dt = cfl * std::pow(g.dx, 5.0 / 3.0);
    dt = std::min(dt, t_end - t);

    // SSP-RK3 with the step's wave-speed bound held fixed
    const std::vector<double> k1 = weno_rhs(g, u, alpha);
    std::vector<double> u1(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) u1[i] = u[i] + dt * k1[i];
    const std::vector<double> k2 = weno_rhs(g, u1, alpha);
    std::vector<double> u2(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * k2[i]);
    const std::vector<double> k3 = weno_rhs(g, u2, alpha);
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] = u[i] / 3.0 + 2.0 / 3.0 * (u2[i] + dt * k3[i]);
    t += dt;
    for (double v : u) check_run(std::isfinite(v), "reference solver diverged");
  }

  ReferenceTable out;
  out.ncomp = g.nc;
  out.x.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out.x[static_cast<std::size_t>(i)] = g.xat(i);
  out.value = std::move(u);
  return out;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string table_payload(const ReferenceTable& t) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    os << t.x[i];
    for (int c = 0; c < t.ncomp; ++c) os << ',' << t.value[i * t.ncomp + c];
    os << '\n';
  }
  return os.str();
}

}  // namespace

ReferenceTable weno5_reference_cached(const ProblemSpec& problem, int points, double t_end,
                                      const std::string& cache_dir, bool force_refresh) {
  std::ostringstream name;
  name.precision(17);
  name << "weno5_" << problem.name << '_' << points << '_' << t_end << ".csv";
  const std::filesystem::path path = std::filesystem::path(cache_dir) / name.str();

  if (!force_refresh && std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    std::uint64_t stored = 0;
    if (line.rfind("# hash ", 0) == 0) stored = std::stoull(line.substr(7));
    std::getline(in, line);  // header row
    ReferenceTable t;
    t.ncomp = problem.flux.components();
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string cell;
      std::getline(ls, cell, ',');
      t.x.push_back(std::stod(cell));
      while (std::getline(ls, cell, ',')) t.value.push_back(std::stod(cell));
    }
    if (!t.x.empty() && static_cast<int>(t.value.size() / t.x.size()) == t.ncomp &&
        fnv1a(table_payload(t)) == stored)
      return t;
  }

  ReferenceTable t = weno5_reference(problem, points, t_end);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  out << "# hash " << fnv1a(table_payload(t)) << '\n';
  out << "x";
  for (int c = 0; c < t.ncomp; ++c) out << ",value" << (c == 0 ? std::string() : std::to_string(c));
  out << '\n';
  out << table_payload(t);
  return t;
}

}  // namespace wavup
