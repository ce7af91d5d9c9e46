#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "wavup/wavelet_basis.hpp"

using namespace wavup;

TEST_CASE("published filter entries, N=5 and N=7, both orientations") {
  const FilterBank p5 = compute_filter_coefficients(5, Orientation::positive_upwind);
  CHECK(p5.support_min == -3);
  CHECK(p5.support_max == 5);
  CHECK(p5.coeff(-3) == doctest::Approx(-0.0390625000).epsilon(1e-14));
  CHECK(p5.coeff(-1) == doctest::Approx(0.4687500000).epsilon(1e-14));
  CHECK(p5.coeff(0) == 1.0);
  CHECK(p5.coeff(1) == doctest::Approx(0.7031250000).epsilon(1e-14));
  CHECK(p5.coeff(3) == doctest::Approx(-0.1562500000).epsilon(1e-14));
  CHECK(p5.coeff(5) == doctest::Approx(0.0234375000).epsilon(1e-14));
  CHECK(p5.coeff(2) == 0.0);
  CHECK(p5.coeff(4) == 0.0);

  const FilterBank n5 = compute_filter_coefficients(5, Orientation::negative_upwind);
  CHECK(n5.support_min == -5);
  CHECK(n5.support_max == 3);
  CHECK(n5.coeff(-5) == doctest::Approx(0.0234375000).epsilon(1e-14));
  CHECK(n5.coeff(-1) == doctest::Approx(0.7031250000).epsilon(1e-14));
  CHECK(n5.coeff(1) == doctest::Approx(0.4687500000).epsilon(1e-14));
  CHECK(n5.coeff(3) == doctest::Approx(-0.0390625000).epsilon(1e-14));

  const FilterBank p7 = compute_filter_coefficients(7, Orientation::positive_upwind);
  CHECK(p7.coeff(-5) == doctest::Approx(0.0068359375).epsilon(1e-14));
  CHECK(p7.coeff(-3) == doctest::Approx(-0.0683593750).epsilon(1e-14));
  CHECK(p7.coeff(-1) == doctest::Approx(0.5126953125).epsilon(1e-14));
  CHECK(p7.coeff(1) == doctest::Approx(0.6835937500).epsilon(1e-14));
  CHECK(p7.coeff(3) == doctest::Approx(-0.1708984375).epsilon(1e-14));
  CHECK(p7.coeff(5) == doctest::Approx(0.0410156250).epsilon(1e-14));
  CHECK(p7.coeff(7) == doctest::Approx(-0.0048828125).epsilon(1e-14));

  const FilterBank n7 = compute_filter_coefficients(7, Orientation::negative_upwind);
  CHECK(n7.coeff(-1) == doctest::Approx(0.6835937500).epsilon(1e-14));
  CHECK(n7.coeff(-7) == doctest::Approx(-0.0048828125).epsilon(1e-14));
}

TEST_CASE("mask invariants: sum 2, mirror symmetry, even zeros") {
  for (int n : {3, 5, 7, 9}) {
    const FilterBank p = compute_filter_coefficients(n, Orientation::positive_upwind);
    const FilterBank q = compute_filter_coefficients(n, Orientation::negative_upwind);
    double sum = 0.0;
    for (int l = p.support_min; l <= p.support_max; ++l) sum += p.coeff(l);
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
    for (int l = -2 * n; l <= 2 * n; ++l) {
      CHECK(q.coeff(l) == p.coeff(-l));
      if (l != 0 && l % 2 == 0) CHECK(p.coeff(l) == 0.0);
    }
    CHECK(p.coeff(0) == 1.0);
    CHECK(p.support_min == -(n - 2));
    CHECK(p.support_max == n);
  }
}

TEST_CASE("invalid orders rejected") {
  CHECK_THROWS_AS(compute_filter_coefficients(1, Orientation::positive_upwind),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_filter_coefficients(4, Orientation::positive_upwind),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_filter_coefficients(-3, Orientation::negative_upwind),
                  std::invalid_argument);
}

TEST_CASE("cascade: interpolation deltas and half-integer values") {
  const FilterBank f = compute_filter_coefficients(5, Orientation::positive_upwind);
  const ScalingTables t1 = cascade_evaluate(f, 1);
  for (int k = f.support_min; k <= f.support_max; ++k)
    CHECK(t1.value_at_integer(k) == doctest::Approx(k == 0 ? 1.0 : 0.0).epsilon(1e-15));
  // phi(m + 1/2) = h(2m + 1)
  CHECK(t1.value_at(1) == doctest::Approx(0.703125).epsilon(1e-15));
  CHECK(t1.value_at(-1) == doctest::Approx(0.46875).epsilon(1e-15));

  // One-step refinement identity on a deeper table: phi(3/8) from depth 2.
  const ScalingTables t2 = cascade_evaluate(f, 2);
  const ScalingTables t3 = cascade_evaluate(f, 3);
  double acc = 0.0;
  for (int k = f.support_min; k <= f.support_max; ++k)
    acc += f.coeff(k) * t2.value_at((3 - 4 * k));  // phi(3/4 - k) at depth 2
  CHECK(t3.value_at(3) == doctest::Approx(acc).epsilon(1e-14));
}

TEST_CASE("refinement residual below 1e-12 across the full table") {
  for (int n : {5, 7}) {
    for (Orientation o : {Orientation::positive_upwind, Orientation::negative_upwind}) {
      const FilterBank f = compute_filter_coefficients(n, o);
      const ScalingTables t = cascade_evaluate(f, 8);
      double worst = 0.0;
      const std::int64_t lo = std::int64_t(f.support_min) << t.depth;
      const std::int64_t hi = std::int64_t(f.support_max) << t.depth;
      for (std::int64_t x = lo; x <= hi; x += 2) {  // 2x must stay on the lattice
        double rhs = 0.0;
        for (int k = f.support_min; k <= f.support_max; ++k)
          rhs += f.coeff(k) * t.value_at(2 * x - (std::int64_t(k) << t.depth));
        worst = std::max(worst, std::abs(t.value_at(x) - rhs));
      }
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("polynomial reproduction up to degree N-1 at dyadic points") {
  for (int n : {5, 7}) {
    const FilterBank f = compute_filter_coefficients(n, Orientation::positive_upwind);
    const ScalingTables t = cascade_evaluate(f, 6);
    for (int deg = 0; deg < n; ++deg) {
      double worst = 0.0;
      for (std::int64_t x = 0; x <= (std::int64_t(1) << t.depth); x += 8) {
        // reproduce p(x) = (x/2^depth)^deg with translates covering [0, 1]
        double acc = 0.0;
        for (int k = -2 * n; k <= 2 * n; ++k)
          acc += std::pow(double(k), deg) * t.value_at(x - (std::int64_t(k) << t.depth));
        const double exact = std::pow(double(x) / std::pow(2.0, t.depth), deg);
        worst = std::max(worst, std::abs(acc - exact));
      }
      CHECK(worst <= 1e-10);
    }
  }
}

TEST_CASE("derivative table: moment conditions and finite-difference oracle") {
  const FilterBank f = compute_filter_coefficients(5, Orientation::positive_upwind);
  const int depth = 6;
  const ScalingTables full = build_scaling_tables(f, depth);

  double s0 = 0.0, s1 = 0.0;
  for (int k = f.support_min; k <= f.support_max; ++k) {
    s0 += full.derivative_at_integer(k);
    s1 += k * full.derivative_at_integer(k);
  }
  CHECK(std::abs(s0) <= 1e-12);
  CHECK(s1 == doctest::Approx(-1.0).epsilon(1e-12));

  // Centered 4th-order finite differences of the value table converge to the
  // tabulated derivative as depth grows.  The sup-norm rate is capped by the
  // Holder regularity of phi (about order 1.4 for this basis), so the oracle
  // asserts convergence, not the smooth-function rate.
  auto fd_error = [&](int d) {
    const ScalingTables t = build_scaling_tables(f, d);
    const double h = std::pow(2.0, -d);
    double worst = 0.0;
    const std::int64_t one = std::int64_t(1) << d;
    for (std::int64_t x = (std::int64_t(f.support_min) << d) + 2 * one;
         x <= (std::int64_t(f.support_max) << d) - 2 * one; x += 4) {
      const double fd = (-t.value_at(x + 2) + 8 * t.value_at(x + 1) - 8 * t.value_at(x - 1) +
                         t.value_at(x - 2)) /
                        (12 * h);
      worst = std::max(worst, std::abs(fd - t.derivative_at(x)));
    }
    return worst;
  };
  const double e6 = fd_error(6);
  const double e8 = fd_error(8);
  const double order = std::log2(e6 / e8) / 2.0;
  CHECK(order >= 1.0);
}

TEST_CASE("derivative table reproduces polynomial derivatives exactly") {
  for (int n : {5, 7}) {
    for (Orientation o : {Orientation::positive_upwind, Orientation::negative_upwind}) {
      const FilterBank f = compute_filter_coefficients(n, o);
      const ScalingTables t = build_scaling_tables(f, 6);
      for (int deg = 0; deg < n; ++deg) {
        double worst = 0.0;
        for (std::int64_t x = 0; x <= (std::int64_t(1) << t.depth); x += 8) {
          double acc = 0.0;
          for (int k = -2 * n; k <= 2 * n; ++k)
            acc += std::pow(double(k), deg) * t.derivative_at(x - (std::int64_t(k) << t.depth));
          const double xi = double(x) / std::pow(2.0, t.depth);
          const double exact = deg == 0 ? 0.0 : deg * std::pow(xi, deg - 1);
          worst = std::max(worst, std::abs(acc - exact));
        }
        CHECK(worst <= 1e-10);
      }
    }
  }
}

TEST_CASE("derivative table satisfies the differentiated refinement relation") {
  const FilterBank f = compute_filter_coefficients(7, Orientation::positive_upwind);
  const ScalingTables t = build_scaling_tables(f, 7);
  double worst = 0.0;
  const std::int64_t lo = std::int64_t(f.support_min) << t.depth;
  const std::int64_t hi = std::int64_t(f.support_max) << t.depth;
  for (std::int64_t x = lo; x <= hi; x += 2) {
    double rhs = 0.0;
    for (int k = f.support_min; k <= f.support_max; ++k)
      rhs += 2.0 * f.coeff(k) * t.derivative_at(2 * x - (std::int64_t(k) << t.depth));
    worst = std::max(worst, std::abs(t.derivative_at(x) - rhs));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("primitive table: normalization, quadrature oracle, mirror identity") {
  const int depth = 10;
  const FilterBank fp = compute_filter_coefficients(5, Orientation::positive_upwind);
  const FilterBank fn = compute_filter_coefficients(5, Orientation::negative_upwind);
  const ScalingTables tp = build_scaling_tables(fp, depth);
  const ScalingTables tn = build_scaling_tables(fn, depth);

  CHECK(tp.primitive_at(std::int64_t(fp.support_min) << depth) == 0.0);
  CHECK(tp.primitive_at(std::int64_t(fp.support_max) << depth) == 1.0);

  // Composite midpoint quadrature on the value table matches Theta increments.
  const double h = std::pow(2.0, -depth);
  double acc = 0.0;
  double worst = 0.0;
  const std::int64_t lo = std::int64_t(fp.support_min) << depth;
  const std::int64_t hi = std::int64_t(fp.support_max) << depth;
  for (std::int64_t x = lo; x < hi; x += 2) {
    acc += 2 * h * tp.value_at(x + 1);
    worst = std::max(worst, std::abs(acc - tp.primitive_at(x + 2)));
  }
  CHECK(worst <= 1e-6);

  // Theta_neg(x) = 1 - Theta_pos(-x), both banks built independently.
  for (std::int64_t x = std::int64_t(fn.support_min) << depth;
       x <= std::int64_t(fn.support_max) << depth; x += 64)
    CHECK(tn.primitive_at(x) == doctest::Approx(1.0 - tp.primitive_at(-x)).epsilon(1e-12));
}

TEST_CASE("plain-text export carries the header and all four arrays") {
  const WaveletBasis b = build_wavelet_basis(5, 3);
  std::ostringstream os;
  export_basis_text(b.pos, os);
  const std::string s = os.str();
  CHECK(s.rfind("5 positive 3\n", 0) == 0);
  CHECK(s.find("# h\n") != std::string::npos);
  CHECK(s.find("# values\n") != std::string::npos);
  CHECK(s.find("# derivatives\n") != std::string::npos);
  CHECK(s.find("# primitives\n") != std::string::npos);
}
