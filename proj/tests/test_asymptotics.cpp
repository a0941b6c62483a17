#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "momcbe/asymptotics.hpp"
#include "momcbe/errors.hpp"
#include "momcbe/mom.hpp"
#include "momcbe/rational.hpp"

using namespace momcbe;

TEST_CASE("growth exponent") {
  CHECK(growth_exponent(1, 1, 2.0) == doctest::Approx(1.0));
  CHECK(growth_exponent(2, 1, 2.0) == doctest::Approx(3.0));
  CHECK(growth_exponent(2, 2, 1.0) == doctest::Approx(31.0));
  CHECK(growth_exponent_exact(2, 1, rational(3)) == rational(5, 3));
  CHECK(growth_exponent_exact(1, 2, rational(4)) == rational(2));
  CHECK_THROWS_AS(growth_exponent(0, 1, 2.0), contract_error);
  CHECK_THROWS_AS(growth_exponent(1, 1, 0.0), contract_error);
}

TEST_CASE("closed-form first-moment coefficient") {
  CHECK(coeff_k1(1, 2.0) == doctest::Approx(1.0));
  CHECK(coeff_k1(2, 2.0) == doctest::Approx(1.0 / 12.0));
  CHECK(coeff_k1(1, 4.0) == doctest::Approx(std::sqrt(M_PI)));
  // scaled form: coeff_k1(q, 2/t) = gamma_scaled(t, q) / Gamma(t)^(q^2)
  for (double t : {0.5, 1.0, 1.7, 3.0}) {
    for (int q : {1, 2, 3}) {
      const double lhs = coeff_k1(q, 2.0 / t);
      const double rhs = coeff_k1_gamma_scaled(t, q) / std::pow(std::tgamma(t), q * q);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("scaled coefficient is non-increasing") {
  for (int q : {1, 2, 3, 4}) {
    double prev = coeff_k1_gamma_scaled(0.05, q);
    for (int i = 1; i <= 200; ++i) {
      const double t = 0.05 + i * (5.0 - 0.05) / 200;
      const double cur = coeff_k1_gamma_scaled(t, q);
      CHECK(cur <= prev * (1.0 + 1e-12));
      prev = cur;
    }
  }
}

TEST_CASE("first-moment coefficient by integration") {
  const mc_estimate e = coeff_k1_integral(2, 2.0, 100000, 5);
  CHECK(e.samples == 100000);
  CHECK(e.acceptance == 1.0);  // proposal support equals the domain
  CHECK(e.variance_reliable);
  CHECK(std::fabs(e.value - coeff_k1(2, 2.0)) < 4.0 * e.se);

  // at q = 1 the integrand is constant, so the estimate is exact with se 0
  const mc_estimate f = coeff_k1_integral(1, 5.0, 50000, 6);
  CHECK(std::fabs(f.value - coeff_k1(1, 5.0)) <= 4.0 * f.se);
}

TEST_CASE("second-moment coefficient by integration") {
  const mc_estimate e = coeff_k2(1, 2.0, 200000, 99);
  CHECK(std::fabs(e.value - 1.0 / 6.0) < 4.0 * e.se);
  CHECK(e.acceptance == doctest::Approx(0.5).epsilon(0.02));  // half the draws land ordered
  CHECK(e.variance_reliable);

  // near the divergence edge the importance weights are heavy-tailed and the
  // estimator says so
  const mc_estimate heavy = coeff_k2(1, 3.9, 20000, 1);
  CHECK_FALSE(heavy.variance_reliable);

  CHECK_THROWS_AS(coeff_k2(1, 4.0, 1000, 1), divergence_error);
  CHECK_THROWS_AS(coeff_k2(2, 16.0, 1000, 1), divergence_error);
  CHECK_NOTHROW(coeff_k2(2, 15.9, 1000, 1));
}

TEST_CASE("general coefficient sampler on the cases with an independent answer") {
  // one free coordinate, unit weight: the estimate is exact
  const mc_estimate trivial = coeff_general(1, 1, 2.0, 1000, 3);
  CHECK(trivial.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trivial.se == 0.0);

  // k = 1 reduction must agree with the closed form
  const mc_estimate g12 = coeff_general(1, 2, 2.0, 300000, 12);
  CHECK(std::fabs(g12.value - 1.0 / 12.0) < 4.0 * g12.se);

  // k = 2 reduction must agree with the dedicated row sampler
  const mc_estimate g21 = coeff_general(2, 1, 2.0, 200000, 7);
  const mc_estimate k2 = coeff_k2(1, 2.0, 200000, 99);
  CHECK(std::fabs(g21.value - k2.value) < 4.0 * std::hypot(g21.se, k2.se));
}

TEST_CASE("general coefficient against a deterministic nested quadrature") {
  // k = 3, q = 1, unit weight: the two constrained side rows integrate in
  // closed form; what remains is int over 1 >= a >= b >= c >= 0 of A^2 with
  // A = [x^2 - x] evaluated between max(b, 1-b) and min(a, 1-c)
  auto side_A = [](double a, double b, double c) {
    const double lo = std::max(b, 1.0 - b), hi = std::min(a, 1.0 - c);
    if (hi <= lo) return 0.0;
    return (hi * hi - hi) - (lo * lo - lo);
  };
  auto simp = [](int n, double lo, double hi, auto&& f) {
    if (hi <= lo) return 0.0;
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
  };
  const int n = 96;
  const double oracle = simp(n, 0.0, 1.0, [&](double a) {
    return simp(n, 0.0, a, [&](double b) {
      return simp(n, 0.0, b, [&](double c) {
        const double A = side_A(a, b, c);
        return A * A;
      });
    });
  });
  CHECK(oracle == doctest::Approx(3.96824e-4).epsilon(1e-4));

  const mc_estimate e = coeff_general(3, 1, 2.0, 400000, 424242);
  CHECK(std::fabs(e.value - oracle) < 4.0 * e.se);
  CHECK(e.variance_reliable);
}

TEST_CASE("general coefficient divergence policy") {
  CHECK_THROWS_AS(coeff_general(3, 1, 6.0, 1000, 1), divergence_error);   // 2kq^2 = 6
  CHECK_THROWS_AS(coeff_general(2, 1, 4.0, 1000, 1), divergence_error);   // 4q^2 = 4
  const mc_estimate open = coeff_general(3, 1, 3.0, 5000, 1);
  CHECK(open.conjectured_finite);  // strictly between 2 and 2kq^2
  const mc_estimate proven = coeff_general(3, 1, 2.0, 5000, 1);
  CHECK_FALSE(proven.conjectured_finite);
}

TEST_CASE("coefficient estimates are reproducible") {
  // fixed (seed, workers) pins the stream layout bitwise
  const mc_estimate a = coeff_general(2, 1, 2.5, 60000, 11, 3);
  const mc_estimate b = coeff_general(2, 1, 2.5, 60000, 11, 3);
  CHECK(a.value == b.value);
  CHECK(a.se == b.se);
  CHECK(a.contributing == b.contributing);
  // a different worker split draws from different streams but must agree
  // statistically
  const mc_estimate c = coeff_general(2, 1, 2.5, 60000, 11, 1);
  CHECK(std::fabs(a.value - c.value) < 5.0 * std::hypot(a.se, c.se));
}

TEST_CASE("most-singular assignment across shapes") {
  for (int k = 2; k <= 5; ++k) {
    for (int q = 1; q <= 2; ++q) {
      const array_point p = x_point(k, q);
      REQUIRE(point_consistent(p));
      const long n = static_cast<long>(k) * q * q * (k - 1);
      const linear_form order = singularity_order(p);
      CHECK(order.constant == rational(n));
      CHECK(order.delta_coeff == rational(-n));
      CHECK(point_codimension(p) == (static_cast<long>(k) * q * q - 1) * (k - 1));
      CHECK(threshold_beta(order, point_codimension(p)) == rational(2L * k * q * q));
    }
  }
  CHECK_THROWS_AS(x_point(1, 1), contract_error);
}

TEST_CASE("row-counting rule") {
  // all 2q coordinates pinned (q ones, q zeros): order 2q - 2q^2 d,
  // codimension 2q - 1, threshold 4q^2
  for (int q = 1; q <= 4; ++q) {
    const linear_form order = singularity_order_row(q, q, q);
    CHECK(order.constant == rational(2 * q));
    CHECK(order.delta_coeff == rational(-2 * q * q));
    CHECK(threshold_beta(order, 2 * q - 1) == rational(4L * q * q));
  }
  CHECK(singularity_order_row(3, 2, 1).constant == rational(3));
  CHECK(singularity_order_row(3, 2, 1).delta_coeff == rational(-5));
  CHECK_THROWS_AS(singularity_order_row(2, 3, 0), contract_error);
  CHECK_THROWS_AS(singularity_order_row(2, 0, -1), contract_error);
}

TEST_CASE("linear forms and thresholds") {
  const linear_form f{rational(6), rational(-6)};
  CHECK(f.at_beta(rational(3)) == rational(2));          // 6(1 - 2/3)
  CHECK(f.at_beta(rational(2)) == rational(0));
  CHECK(threshold_beta(f, 5) == rational(12));           // 6 - 6d = 5 at d = 1/6
  CHECK_THROWS_AS(threshold_beta({rational(3), rational(0)}, 2), contract_error);
}

TEST_CASE("inconsistent assignments are rejected") {
  array_point p = x_point(2, 1);
  p.rows[1] = {0, 1};  // increasing within a row
  CHECK_FALSE(point_consistent(p));
  CHECK_THROWS_AS(singularity_order(p), contract_error);

  array_point q = x_point(2, 1);
  q.rows[0] = {7};  // not a 0/1/unassigned marker
  CHECK_FALSE(point_consistent(q));
}

TEST_CASE("finiteness classification") {
  const finiteness_report r1 = finiteness_domain(1, 3);
  CHECK(r1.always_finite);

  const finiteness_report r2 = finiteness_domain(2, 2);
  CHECK_FALSE(r2.always_finite);
  CHECK(r2.proven_finite_to == rational(16));
  CHECK_FALSE(r2.proven_bound_inclusive);
  CHECK(r2.infinite_from == rational(16));

  const finiteness_report r3 = finiteness_domain(3, 1);
  CHECK(r3.proven_finite_to == rational(2));
  CHECK(r3.proven_bound_inclusive);
  CHECK(r3.conjectured_to == rational(6));
  CHECK(r3.infinite_from == rational(6));

  CHECK(finiteness_status_of(1, 1, rational(100)) == finiteness_status::finite);
  CHECK(finiteness_status_of(2, 1, rational(39, 10)) == finiteness_status::finite);
  CHECK(finiteness_status_of(2, 1, rational(4)) == finiteness_status::infinite);
  CHECK(finiteness_status_of(3, 1, rational(2)) == finiteness_status::finite);
  CHECK(finiteness_status_of(3, 1, rational(5)) == finiteness_status::conjectured_finite);
  CHECK(finiteness_status_of(3, 1, rational(6)) == finiteness_status::infinite);
  CHECK(finiteness_status_of(4, 1, rational(7)) == finiteness_status::conjectured_finite);
  CHECK(finiteness_status_of(4, 1, rational(8)) == finiteness_status::infinite);
}

TEST_CASE("ratio table over exact values") {
  ratio_table t = asymptotic_ratio(1, 1, rational(2), {1, 2, 3, 4, 5, 6}, ratio_method::exact);
  REQUIRE(t.rows.size() == 6);
  for (const ratio_row& row : t.rows) {
    CHECK(row.mom == doctest::Approx(row.N + 1.0));
    CHECK(row.ratio == doctest::Approx((row.N + 1.0) / row.N));
  }
  CHECK(t.slope_target == doctest::Approx(1.0));
  CHECK(t.coefficient == doctest::Approx(1.0));
  CHECK(t.slope > 0.5);
  CHECK(t.slope < 1.0);  // log(N+1) grows slower than log N scaled at small N

  CHECK_THROWS_AS(asymptotic_ratio(1, 1, rational(2), {1, 2}, ratio_method::exact),
                  contract_error);
  CHECK_THROWS_AS(asymptotic_ratio(1, 1, rational(2), {3, 3, 3}, ratio_method::exact),
                  contract_error);
}

TEST_CASE("ratio table over sampled values") {
  mc_config mc;
  mc.seed = 19;
  mc.chains = 2;
  mc.burnin_sweeps = 100;
  mc.kept_per_chain = 400;
  ratio_table t =
      asymptotic_ratio(2, 1, rational(2), {2, 3, 4}, ratio_method::monte_carlo, {}, mc);
  REQUIRE(t.rows.size() == 3);
  for (const ratio_row& row : t.rows) {
    CHECK(row.mom > 0.0);
    CHECK(std::isfinite(row.ratio));
  }
  CHECK(std::isnan(t.coefficient));  // no closed form beyond k = 1
  CHECK(std::isfinite(t.slope));
}
