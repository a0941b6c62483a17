// Acceptance gate: one criterion per invocation, selected with --criterion ID.
// Each criterion prints a single verdict line "criterion ID: PASS|FAIL - ...";
// diagnostic lines may precede it. Exit code 0 iff the criterion passes.
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "momcbe/arrays.hpp"
#include "momcbe/asymptotics.hpp"
#include "momcbe/cbe_mc.hpp"
#include "momcbe/errors.hpp"
#include "momcbe/jack.hpp"
#include "momcbe/mom.hpp"
#include "momcbe/rational.hpp"
#include "momcbe/rng.hpp"
#include "momcbe/signature.hpp"
#include "momcbe/weights.hpp"

using namespace momcbe;

namespace {

struct outcome {
  bool pass = false;
  std::string summary;
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

signature random_signature(philox_stream& rng, int len, int cap) {
  signature s(len);
  int prev = cap;
  for (int i = 0; i < len; ++i) {
    s[i] = static_cast<int>(rng.next_u64() % (prev + 1));
    prev = s[i];
  }
  return s;
}

// weight specialization: the discrete weight is identically 1 at delta = 1
outcome criterion_1() {
  philox_stream rng(101, 0);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = static_cast<int>(rng.next_u64() % 6);  // mu length 0..5, la length <= 6
    const signature mu = random_signature(rng, m, 10);
    signature la;
    uint64_t count = 0;
    for_each_extension(mu, 10, std::nullopt, [&](const signature& s) {
      ++count;
      if (rng.next_u64() % count == 0) la = s;  // uniform pick over extensions
    });
    if (psi(mu, la, rational(1)) != rational(1)) {
      return {false, fmt("weight != 1 at delta = 1 on trial %d", trial)};
    }
    ++checked;
  }
  return {true, fmt("weight == 1 exactly on %d random interlacing pairs (M <= 6, parts <= 10)",
                    checked)};
}

// transport between the center-folded transfer recursion and raw chain
// enumeration, as exact rationals
outcome criterion_2() {
  const std::vector<std::pair<int, int>> shapes{{1, 1}, {2, 1}, {1, 2}, {3, 1}};
  const std::vector<rational> deltas{rational(1, 3), rational(1, 2), rational(1), rational(2),
                                     rational(3)};
  int checked = 0;
  for (int N = 0; N <= 4; ++N) {
    for (const auto& [k, q] : shapes) {
      for (const rational& d : deltas) {
        const array_spec spec{N, k, q};
        const rational a = mom_exact(spec, d);
        const rational b = mom_exact_chain(spec, d, 16);
        if (a != b) {
          return {false, fmt("routes disagree at N=%d k=%d q=%d: %s vs %s", N, k, q,
                             rational_str(a).c_str(), rational_str(b).c_str())};
        }
        ++checked;
      }
    }
  }
  return {true, fmt("transfer and chain routes agree exactly on %d (N, k, q, delta) combos",
                    checked)};
}

// trigonometric-grid quadrature against the exact rational value
outcome criterion_3() {
  double worst = 0.0;
  int checked = 0;
  for (int N = 1; N <= 3; ++N) {
    for (const auto& [k, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
      for (long beta : {1L, 2L, 4L}) {
        const array_spec spec{N, k, q};
        const rational d = rational(2) / beta;
        const double exact = to_double(mom_exact(spec, d));
        const double quad = mom_quadrature(spec, d);
        const double rel = std::fabs(quad - exact) / exact;
        worst = std::max(worst, rel);
        ++checked;
      }
    }
  }
  const bool pass = worst <= 1e-9;
  return {pass, fmt("%d combos, worst relative quadrature error %.3g (tolerance 1e-9)", checked,
                    worst)};
}

// at delta = 1 every array weighs 1, so the moment counts constrained arrays
outcome criterion_4() {
  const std::vector<std::pair<int, int>> shapes{{1, 1}, {2, 1}, {1, 2}, {3, 1}};
  for (int N = 1; N <= 4; ++N) {
    for (const auto& [k, q] : shapes) {
      const array_spec spec{N, k, q};
      const uint64_t count = for_each_center_array(spec, 16, [](const center_array&) {});
      if (mom_exact(spec, rational(1)) != rational(static_cast<long>(count))) {
        return {false, fmt("moment != array count at N=%d k=%d q=%d", N, k, q)};
      }
    }
  }
  if (mom_exact({2, 2, 1}, rational(1)) != rational(10)) {
    return {false, "second moment at N = 2 is not 10"};
  }
  for (int N = 1; N <= 20; ++N) {
    if (mom_exact({N, 1, 1}, rational(1)) != rational(N + 1)) {
      return {false, fmt("first moment at N = %d is not N + 1", N)};
    }
  }
  return {true, "lattice counts match exactly (16 shape combos, spot values 10 and N + 1)"};
}

// Metropolis estimates against exact values, with certified error bars
outcome criterion_5() {
  mc_config cfg;
  cfg.seed = 1205;
  cfg.chains = 4;
  cfg.burnin_sweeps = 500;
  cfg.thin_sweeps = 2;
  cfg.kept_per_chain = 6000;
  double worst_sigma = 0.0, min_ess = 1e18;
  for (const auto& [k, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
    for (long beta : {1L, 2L, 4L}) {
      const array_spec spec{5, k, q};
      const mom_mc_result r = mom_mc(spec, static_cast<double>(beta), cfg);
      const double exact = to_double(mom_exact(spec, rational(2) / beta));
      if (!r.se_valid) return {false, fmt("error bar not certified at k=%d q=%d beta=%ld", k, q, beta)};
      const double sigma = std::fabs(r.mean - exact) / r.se;
      worst_sigma = std::max(worst_sigma, sigma);
      min_ess = std::min(min_ess, r.ess);
      if (sigma > 3.0) {
        return {false, fmt("sampler %.2f standard errors off at k=%d q=%d beta=%ld", sigma, k, q,
                           beta)};
      }
    }
  }
  const bool pass = min_ess >= 1e4;
  return {pass, fmt("9 combos at N = 5: worst deviation %.2f se (limit 3), min effective samples "
                    "%.0f (floor 1e4)",
                    worst_sigma, min_ess)};
}

// closed-form first-moment coefficient against its Monte Carlo integral
outcome criterion_6() {
  const double spots[3][3] = {{1.0, 2.0, 1.0},
                              {2.0, 2.0, 1.0 / 12.0},
                              {1.0, 4.0, std::sqrt(M_PI)}};
  for (const auto& s : spots) {
    const double got = coeff_k1(static_cast<int>(s[0]), s[1]);
    if (std::fabs(got - s[2]) > 1e-12 * s[2]) {
      return {false, fmt("closed form q=%d beta=%g: got %.15g want %.15g", static_cast<int>(s[0]),
                         s[1], got, s[2])};
    }
  }
  double worst_sigma = 0.0;
  for (int q = 1; q <= 3; ++q) {
    for (long beta : {1L, 2L, 4L}) {
      const mc_estimate e = coeff_k1_integral(q, static_cast<double>(beta), 400000, 777);
      const double cf = coeff_k1(q, static_cast<double>(beta));
      const double diff = std::fabs(e.value - cf);
      if (diff > 3.0 * e.se) {
        return {false, fmt("integral %.3g away from closed form %.6g at q=%d beta=%ld (3 se = "
                           "%.3g)",
                           diff, cf, q, beta, 3.0 * e.se)};
      }
      if (e.se > 0.0) worst_sigma = std::max(worst_sigma, diff / e.se);
    }
  }
  return {true, fmt("3 spot values exact to 1e-12; 9 integral combos within 3 se (worst %.2f; "
                    "q = 1 is exact by cancellation)",
                    worst_sigma)};
}

// exact ratio sequence for the determinantal first moment
outcome criterion_7a() {
  double prev = 1e18;
  for (int N = 1; N <= 20; ++N) {
    const rational m = mom_exact({N, 1, 1}, rational(1));
    if (m != rational(N + 1)) return {false, fmt("moment at N = %d is not N + 1", N)};
    const double ratio = to_double(m) / N;
    if (ratio >= prev) return {false, fmt("ratio not decreasing at N = %d", N)};
    prev = ratio;
  }
  return {true, fmt("moment / N = (N + 1) / N exactly for N <= 20, decreasing toward 1 "
                    "(final %.4f)",
                    prev)};
}

// second moment at beta = 2: ratio to N^3 compared with 1/6 at N = 200
outcome criterion_7b() {
  const rational m200 = mom_exact({200, 2, 1}, rational(1));
  const double r200 = 6.0 * to_double(m200) / (200.0 * 200.0 * 200.0);
  const rational m400 = mom_exact({400, 2, 1}, rational(1));
  const double r400 = 6.0 * to_double(m400) / (400.0 * 400.0 * 400.0);
  printf("  exact moment at N = 200: %s\n", rational_str(m200).c_str());
  printf("  6 * moment / N^3: %.8f at N = 200, %.8f at N = 400 (limit 1)\n", r200, r400);
  printf("  doubling-step extrapolation 2*r(400) - r(200) = %.8f, so the 1/N correction\n"
         "  accounts for the whole gap; the ratio itself enters the 2%% window only near "
         "N = 304\n",
         2.0 * r400 - r200);
  const double dev = std::fabs(r200 - 1.0);
  const bool pass = dev <= 0.02;
  return {pass, fmt("ratio deviates %.4f%% from the limit at N = 200 (tolerance 2%%)", 100 * dev)};
}

// beta = 1 first moment: fitted slope and ratio over N in [20, 200]
outcome criterion_7c() {
  std::vector<int> Ns;
  for (int n = 20; n <= 200; n += 20) Ns.push_back(n);
  const ratio_table t = asymptotic_ratio(1, 1, rational(1), Ns, ratio_method::exact);
  const double slope_dev = std::fabs(t.slope - t.slope_target) / t.slope_target;
  const double ratio_dev = std::fabs(t.rows.back().ratio / t.coefficient - 1.0);
  printf("  fitted log-log slope %.4f vs exponent %.0f: off by %.2f%% (tolerance 5%%)\n", t.slope,
         t.slope_target, 100 * slope_dev);
  printf("  ratio / coefficient at N = 200: %.6f, off by %.3f%% (tolerance 2%%); the exact\n"
         "  value (N + 2)(N + 3)/6 reaches the 2%% window only at N = 253\n",
         t.rows.back().ratio / t.coefficient, 100 * ratio_dev);
  const bool slope_ok = slope_dev <= 0.05;
  const bool ratio_ok = ratio_dev <= 0.02;
  return {slope_ok && ratio_ok,
          fmt("slope %s (%.2f%%), ratio %s (%.3f%%)", slope_ok ? "within 5%" : "outside 5%",
              100 * slope_dev, ratio_ok ? "within 2%" : "outside 2%", 100 * ratio_dev)};
}

// the general-array sampler against the closed form (k = 1) and the
// single-row sampler (k = 2)
outcome criterion_8() {
  const mc_estimate a = coeff_general(1, 2, 2.0, 400000, 1208);
  const double target = 1.0 / 12.0;
  const double sig_a = std::fabs(a.value - target) / a.se;
  if (sig_a > 3.0) {
    return {false, fmt("general sampler %.2f se from 1/12 at k=1 q=2", sig_a)};
  }
  const mc_estimate b = coeff_general(2, 1, 2.0, 400000, 1209);
  const mc_estimate c = coeff_k2(1, 2.0, 400000, 1210);
  const double sig_b = std::fabs(b.value - c.value) / std::hypot(b.se, c.se);
  if (sig_b > 3.0) {
    return {false, fmt("general and row samplers %.2f combined se apart at k=2 q=1", sig_b)};
  }
  return {true, fmt("k=1 q=2 within %.2f se of 1/12; k=2 q=1 within %.2f combined se of the row "
                    "sampler (%.5g vs %.5g)",
                    sig_a, sig_b, b.value, c.value)};
}

// exact singularity orders and thresholds from the counting calculator
outcome criterion_9() {
  // two hand-checkable canonical assignments: orders 6(1 - 2/beta), 12(1 - 2/beta)
  for (const auto& [k, n] : std::vector<std::pair<int, long>>{{3, 6}, {4, 12}}) {
    const linear_form o = singularity_order(x_point(k, 1));
    if (o.constant != rational(n) || o.delta_coeff != rational(-n)) {
      return {false, fmt("canonical point order at k=%d q=1 is not %ld(1 - d)", k, n)};
    }
  }
  // single-row rule: order 2q - 4q^2 / beta at the all-pinned point
  for (int q = 1; q <= 4; ++q) {
    const linear_form o = singularity_order_row(q, q, q);
    if (o.constant != rational(2 * q) || o.delta_coeff != rational(-2L * q * q)) {
      return {false, fmt("row order at q=%d is not 2q - 2q^2 d", q)};
    }
    if (o.at_beta(rational(8)) != rational(2 * q) - rational(4L * q * q) / 8) {
      return {false, fmt("row order evaluation wrong at q=%d", q)};
    }
    if (threshold_beta(o, 2 * q - 1) != rational(4L * q * q)) {
      return {false, fmt("row threshold at q=%d is not 4q^2", q)};
    }
  }
  // general canonical point: order kq^2(k-1)(1 - d), threshold 2kq^2
  for (const auto& [k, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}}) {
    const long n = static_cast<long>(k) * q * q * (k - 1);
    const array_point p = x_point(k, q);
    const linear_form o = singularity_order(p);
    if (o.constant != rational(n) || o.delta_coeff != rational(-n)) {
      return {false, fmt("canonical order at k=%d q=%d is not kq^2(k-1)(1 - d)", k, q)};
    }
    if (threshold_beta(o, point_codimension(p)) != rational(2L * k * q * q)) {
      return {false, fmt("threshold at k=%d q=%d is not 2kq^2", k, q)};
    }
  }
  return {true, "orders 6(1-2/b), 12(1-2/b), 2q-4q^2/b, kq^2(k-1)(1-2/b) and thresholds 4q^2, "
                "2kq^2 recovered exactly"};
}

// bound and monotonicity of the continuous kernel and the coefficient map
outcome criterion_10() {
  philox_stream rng(110, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = 1 + static_cast<int>(rng.next_u64() % 5);
    std::vector<double> x(m + 1), y(m);
    for (auto& v : x) v = rng.next_unit();
    std::sort(x.rbegin(), x.rend());
    for (int i = 0; i < m; ++i) y[i] = x[i + 1] + (x[i] - x[i + 1]) * rng.next_unit();
    const double base = phi_base(y, x);
    if (base > 1.0 + 1e-12) {
      return {false, fmt("kernel base product %.17g exceeds 1 on trial %d", base, trial)};
    }
  }
  // coefficient comparison: beta <= beta' implies
  // coeff(beta) <= (Gamma(d')/Gamma(d))^(q^2) coeff(beta'), d = 2/beta
  for (int trial = 0; trial < 200; ++trial) {
    const int q = 1 + static_cast<int>(rng.next_u64() % 4);
    double d1 = 0.1 + 3.9 * rng.next_unit();
    double d2 = 0.1 + 3.9 * rng.next_unit();
    if (d1 < d2) std::swap(d1, d2);  // d1 >= d2 means beta1 <= beta2
    const double lhs = coeff_k1(q, 2.0 / d1);
    const double rhs = std::pow(std::tgamma(d2) / std::tgamma(d1), q * q) * coeff_k1(q, 2.0 / d2);
    if (lhs > rhs * (1.0 + 1e-12)) {
      return {false, fmt("coefficient comparison fails at q=%d d=%.4f d'=%.4f", q, d1, d2)};
    }
  }
  // the scaled Gamma map is non-increasing on a 500-point grid
  for (int q = 1; q <= 4; ++q) {
    double prev = coeff_k1_gamma_scaled(0.02, q);
    for (int i = 1; i <= 500; ++i) {
      const double t = 0.02 + i * (5.0 - 0.02) / 500;
      const double cur = coeff_k1_gamma_scaled(t, q);
      if (cur > prev * (1.0 + 1e-12)) {
        return {false, fmt("scaled map increases at q=%d t=%.4f", q, t)};
      }
      prev = cur;
    }
  }
  return {true, "kernel bound on 1000 samples, coefficient comparison on 200 pairs, scaled map "
                "non-increasing on 500-point grids for q <= 4"};
}

std::string run_cli_capture(const std::string& args, int* exit_code) {
  const std::string cmd = std::string(MOMCBE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// every stochastic command is byte-identical across reruns
outcome criterion_11() {
  const std::vector<std::string> commands{
      "mom --N 3 --k 2 --method mc --chains 2 --burnin 50 --kept 200 --seed 3 --omit-timing",
      "coeff --k 1 --q 2 --method integral-mc --mc-budget 20000 --seed 4 --omit-timing",
      "coeff --k 3 --q 1 --beta 3 --mc-budget 20000 --seed 5 --omit-timing",
      "sample --N 4 --chains 2 --burnin 30 --kept 100 --seed 6 --format csv",
      "scan --N 2,3,4 --k 1 --method mc --chains 2 --burnin 50 --kept 200 --seed 8 --format csv",
  };
  for (const auto& cmd : commands) {
    int code1 = 0, code2 = 0;
    const std::string a = run_cli_capture(cmd, &code1);
    const std::string b = run_cli_capture(cmd, &code2);
    if (code1 != 0 || code2 != 0) {
      return {false, fmt("command exited nonzero (%d/%d): %s", code1, code2, cmd.c_str())};
    }
    if (a.empty() || a != b) {
      return {false, fmt("rerun differed for: %s", cmd.c_str())};
    }
  }
  return {true, fmt("%zu stochastic commands byte-identical across reruns", size_t(5))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
      {"1", criterion_1},   {"2", criterion_2},  {"3", criterion_3},   {"4", criterion_4},
      {"5", criterion_5},   {"6", criterion_6},  {"7a", criterion_7a}, {"7b", criterion_7b},
      {"7c", criterion_7c}, {"8", criterion_8},  {"9", criterion_9},   {"10", criterion_10},
      {"11", criterion_11},
  };

  std::string which;
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) which = argv[2];
  const bool known = std::any_of(criteria.begin(), criteria.end(),
                                 [&](const auto& c) { return c.first == which; });
  if (which.empty() || (which != "all" && !known)) {
    fprintf(stderr, "usage: acceptance --criterion {1..6,7a,7b,7c,8..11,all}\n");
    return 2;
  }

  bool all_pass = true;
  for (const auto& [id, fn] : criteria) {
    if (which != "all" && id != which) continue;
    outcome res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res = {false, std::string("unexpected exception: ") + e.what()};
    }
    printf("criterion %s: %s - %s\n", id.c_str(), res.pass ? "PASS" : "FAIL",
           res.summary.c_str());
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 1;
}
