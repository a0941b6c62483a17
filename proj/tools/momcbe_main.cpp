#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "momcbe/asymptotics.hpp"
#include "momcbe/cbe_mc.hpp"
#include "momcbe/errors.hpp"
#include "momcbe/jack.hpp"
#include "momcbe/mom.hpp"
#include "momcbe/rational.hpp"
#include "momcbe/version.hpp"

using json = nlohmann::ordered_json;
using namespace momcbe;

namespace {

// Thrown after a structured record has already been printed.
struct cli_exit {
  int code;
};

json rat_json(const rational& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

uint64_t parse_budget(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == nullptr || *end != '\0' || !std::isfinite(v) || v < 2.0 || v > 1e15) {
    throw contract_error("mc budget must be a number in [2, 1e15], got '" + s + "'");
  }
  return static_cast<uint64_t>(std::llround(v));
}

// Accepts "5", "1,2,8", "1..20", "2..20..2", and mixtures separated by commas.
std::vector<int> parse_n_list(const std::vector<std::string>& specs) {
  std::vector<int> out;
  auto push_token = [&out](const std::string& tok) {
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(tok));
      return;
    }
    const std::string head = tok.substr(0, dots);
    std::string rest = tok.substr(dots + 2);
    int step = 1;
    const auto dots2 = rest.find("..");
    if (dots2 != std::string::npos) {
      step = std::stoi(rest.substr(dots2 + 2));
      rest = rest.substr(0, dots2);
    }
    const int lo = std::stoi(head), hi = std::stoi(rest);
    if (step < 1 || hi < lo) throw contract_error("bad N range '" + tok + "'");
    for (int n = lo; n <= hi; n += step) out.push_back(n);
  };
  try {
    for (const auto& spec : specs) {
      size_t pos = 0;
      while (pos < spec.size()) {
        const auto comma = spec.find(',', pos);
        const std::string tok =
            spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) push_token(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const std::logic_error&) {
    throw contract_error("could not parse N list");
  }
  if (out.empty()) throw contract_error("empty N list");
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  try {
    while (pos < s.size()) {
      const auto comma = s.find(',', pos);
      out.push_back(std::stoi(s.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::logic_error&) {
    throw contract_error("could not parse integer list '" + s + "'");
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  size_t pos = 0;
  try {
    while (pos < s.size()) {
      const auto comma = s.find(',', pos);
      out.push_back(std::stod(s.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::logic_error&) {
    throw contract_error("could not parse number list '" + s + "'");
  }
  return out;
}

struct timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

json base_record(const char* command) {
  return json{{"command", command}, {"version", version_string}};
}

void emit(const json& record) { std::cout << record.dump(2) << "\n"; }

void finish(json& record, const timer& t, bool omit_timing) {
  record["wall_time_ms"] = omit_timing ? 0.0 : t.ms();
  emit(record);
}

json finiteness_json(int k, int q) {
  const finiteness_report rep = finiteness_domain(k, q);
  json out;
  out["always_finite"] = rep.always_finite;
  if (!rep.always_finite) {
    out["proven_finite_to"] = rat_json(rep.proven_finite_to);
    out["proven_bound_inclusive"] = rep.proven_bound_inclusive;
    out["infinite_from"] = rat_json(rep.infinite_from);
    if (rep.conjectured_to != 0) out["conjectured_finite_to"] = rat_json(rep.conjectured_to);
  }
  return out;
}

const char* status_name(finiteness_status s) {
  switch (s) {
    case finiteness_status::finite: return "finite";
    case finiteness_status::infinite: return "infinite";
    default: return "conjectured_finite";
  }
}

json mc_estimate_json(const mc_estimate& e) {
  json out;
  out["value"] = e.value;
  out["se"] = e.se;
  out["samples"] = e.samples;
  out["contributing"] = e.contributing;
  out["acceptance"] = e.acceptance;
  out["variance_reliable"] = e.variance_reliable;
  if (e.low_acceptance) out["low_acceptance"] = true;
  if (e.conjectured_finite) out["conjectured_finite"] = true;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moments of moments of circular beta-ensemble characteristic polynomials"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML/INI file with a [subcommand] section per command (flags win)");

  // shared option storage
  int N = 1, k = 1, q = 1;
  std::string beta_str = "2";
  std::string method = "exact";
  std::string coeff_method = "auto";
  std::string budget_str = "100000";
  uint64_t seed = 1;
  int workers = 1;
  std::string format = "json";
  bool omit_timing = false;
  uint64_t max_layer = 2'000'000;
  long max_free = 12;
  int chains = 4, burnin = 1000, thin = 1, kept = 2000;
  double step = 0.0;
  std::vector<std::string> n_list_spec;
  std::string lambda_str, x_str, angles_str, rows_str;
  int n_ones = -1, n_zeros = -1;

  auto add_common = [&](CLI::App* sub, bool with_beta = true) {
    if (with_beta) sub->add_option("--beta", beta_str, "beta > 0, exact when given as 'p/q'");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--workers", workers, "worker thread count")->envname("MOMCBE_WORKERS");
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--omit-timing", omit_timing, "report wall_time_ms as 0 (byte-stable output)");
  };
  auto add_mc_knobs = [&](CLI::App* sub) {
    sub->add_option("--chains", chains, "independent chains");
    sub->add_option("--burnin", burnin, "burn-in sweeps per chain");
    sub->add_option("--thin", thin, "sweeps between kept states");
    sub->add_option("--kept", kept, "kept states per chain");
    sub->add_option("--step", step, "proposal half-width (0 = pi/sqrt(N))");
  };

  CLI::App* mom = app.add_subcommand("mom", "moment of moments for finite N");
  mom->add_option("--N", N, "matrix size")->required();
  mom->add_option("--k", k, "outer moment order");
  mom->add_option("--q", q, "inner moment order");
  mom->add_option("--method", method, "exact | j-enum | quadrature | mc")
      ->check(CLI::IsMember({"exact", "j-enum", "quadrature", "mc"}));
  mom->add_option("--max-layer-size", max_layer, "cap on states per transfer layer");
  mom->add_option("--max-free", max_free, "cap on free coordinates for j-enum");
  add_common(mom);
  add_mc_knobs(mom);

  CLI::App* coeff = app.add_subcommand("coeff", "leading asymptotic coefficient");
  coeff->add_option("--k", k, "outer moment order");
  coeff->add_option("--q", q, "inner moment order");
  coeff->add_option("--method", coeff_method, "auto | closed-form | integral-mc | general-mc")
      ->check(CLI::IsMember({"auto", "closed-form", "integral-mc", "general-mc"}));
  coeff->add_option("--mc-budget", budget_str, "Monte Carlo sample budget (accepts 1e6)");
  add_common(coeff);

  CLI::App* scan = app.add_subcommand("scan", "MoM table over N with ratio and slope columns");
  scan->add_option("--N", n_list_spec, "N values: '1..20', '2..20..2', '1,2,5'")->required();
  scan->add_option("--k", k, "outer moment order");
  scan->add_option("--q", q, "inner moment order");
  scan->add_option("--method", method, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  scan->add_option("--max-layer-size", max_layer, "cap on states per transfer layer");
  add_common(scan);
  add_mc_knobs(scan);

  CLI::App* jack = app.add_subcommand("jack", "Jack polynomial value at given points");
  jack->add_option("--lambda", lambda_str, "partition, e.g. '3,1,0'")->required();
  jack->add_option("--x", x_str, "real evaluation points, e.g. '1,1,1'");
  jack->add_option("--angles", angles_str, "evaluate at unit-circle points exp(i*theta)");
  add_common(jack);

  CLI::App* sample = app.add_subcommand("sample", "Metropolis samples of eigenangles");
  sample->add_option("--N", N, "matrix size")->required();
  add_common(sample);
  add_mc_knobs(sample);

  CLI::App* sing = app.add_subcommand("singularity", "integrand singularity order at a boundary point");
  sing->add_option("--k", k, "outer moment order");
  sing->add_option("--q", q, "inner moment order");
  sing->add_option("--rows", rows_str,
                   "explicit assignment: rows ';'-separated, entries ',' -separated from {0,1,f}");
  sing->add_option("--ones", n_ones, "row-constrained form: coordinates pinned to 1");
  sing->add_option("--zeros", n_zeros, "row-constrained form: coordinates pinned to 0");
  add_common(sing);

  CLI::App* fin = app.add_subcommand("finiteness", "domain of beta where the coefficient is finite");
  fin->add_option("--k", k, "outer moment order")->required();
  fin->add_option("--q", q, "inner moment order");
  add_common(fin);

  mom->callback([&] {
    timer t;
    const rational beta = parse_rational(beta_str);
    if (beta <= 0) throw contract_error("beta must be positive");
    const rational delta = rational(2) / beta;
    const array_spec spec{N, k, q};
    json rec = base_record("mom");
    rec["inputs"] = {{"N", N}, {"k", k}, {"q", q}, {"beta", beta_str}, {"method", method}};
    if (method == "exact" || method == "j-enum") {
      rational value;
      if (method == "exact") {
        dp_limits limits;
        limits.max_layer_states = max_layer;
        limits.workers = workers;
        mom_stats stats;
        try {
          value = mom_exact(spec, delta, limits, &stats);
        } catch (const resource_error& e) {
          throw resource_error(std::string(e.what()) +
                               "; reduce N or k*q, or raise --max-layer-size");
        }
        rec["stats"] = {{"max_layer_states", stats.max_layer_states},
                        {"center_states", stats.center_states},
                        {"transfer_edges", stats.transfer_edges}};
      } else {
        value = mom_exact_chain(spec, delta, max_free);
      }
      rec["value"] = rat_json(value);
      rec["value_decimal"] = to_double(value);
    } else if (method == "quadrature") {
      rec["value_decimal"] = mom_quadrature(spec, delta);
    } else {
      mc_config cfg;
      cfg.seed = seed;
      cfg.chains = chains;
      cfg.burnin_sweeps = burnin;
      cfg.thin_sweeps = thin;
      cfg.kept_per_chain = kept;
      cfg.step = step;
      cfg.workers = workers;
      const mom_mc_result r = mom_mc(spec, to_double(beta), cfg);
      rec["value_decimal"] = r.mean;
      rec["se"] = r.se;
      rec["ess"] = r.ess;
      rec["se_valid"] = r.se_valid;
      rec["kept"] = r.kept;
      rec["acceptance_rate"] = r.stats.acceptance_rate();
      rec["acceptance_in_band"] = r.stats.acceptance_in_band();
      rec["seed"] = seed;
    }
    rec["workers"] = workers;
    finish(rec, t, omit_timing);
  });

  coeff->callback([&] {
    timer t;
    const rational beta = parse_rational(beta_str);
    if (beta <= 0) throw contract_error("beta must be positive");
    const double beta_d = to_double(beta);
    const uint64_t budget = parse_budget(budget_str);
    json rec = base_record("coeff");
    rec["inputs"] = {{"k", k}, {"q", q}, {"beta", beta_str}, {"method", coeff_method},
                     {"mc_budget", budget}, {"seed", seed}};
    rec["finiteness"] = finiteness_json(k, q);
    const finiteness_status status = finiteness_status_of(k, q, beta);
    rec["finiteness"]["status"] = status_name(status);
    if (status == finiteness_status::infinite) {
      const finiteness_report rep = finiteness_domain(k, q);
      rec["error"] = {
          {"type", "divergence"},
          {"message", "coefficient is infinite at beta = " + beta_str +
                          "; finite domain is (0, " + rational_str(rep.infinite_from) +
                          (rep.proven_bound_inclusive ? "]" : ")")}};
      finish(rec, t, omit_timing);
      std::cerr << rec["error"]["message"].get<std::string>() << "\n";
      throw cli_exit{3};
    }
    std::string chosen = coeff_method;
    if (chosen == "auto") chosen = (k == 1) ? "closed-form" : (k == 2 ? "integral-mc" : "general-mc");
    rec["method"] = chosen;
    if (chosen == "closed-form") {
      if (k != 1) throw contract_error("closed-form coefficient exists only for k = 1");
      rec["value"] = coeff_k1(q, beta_d);
      const rational delta = rational(2) / beta;
      if (delta.get_den() == 1) {  // Gamma ratios reduce to exact rationals
        const long d = delta.get_num().get_si();
        rational exact = 1;
        for (int i = 1; i <= q; ++i) exact /= pochhammer(rational(d * i), d * q);
        rec["value_exact"] = rat_json(exact);
      }
    } else if (chosen == "integral-mc") {
      mc_estimate e;
      if (k == 1) {
        e = coeff_k1_integral(q, beta_d, budget, seed, workers);
        rec["closed_form_value"] = coeff_k1(q, beta_d);
      } else if (k == 2) {
        e = coeff_k2(q, beta_d, budget, seed, workers);
      } else {
        throw contract_error("integral-mc applies to k = 1 or k = 2; use general-mc");
      }
      rec["estimate"] = mc_estimate_json(e);
    } else {
      rec["estimate"] = mc_estimate_json(coeff_general(k, q, beta_d, budget, seed, workers));
    }
    rec["workers"] = workers;
    finish(rec, t, omit_timing);
  });

  scan->callback([&] {
    timer t;
    const rational beta = parse_rational(beta_str);
    if (beta <= 0) throw contract_error("beta must be positive");
    const rational delta = rational(2) / beta;
    const std::vector<int> Ns = parse_n_list(n_list_spec);
    const double target = growth_exponent(k, q, to_double(beta));
    if (Ns.size() < 3) {
      std::cerr << "warning: slope fit needs at least 3 N values; slope column left empty\n";
    }
    struct row_out {
      int N;
      double mom, ratio;
      std::optional<double> running_slope;
      std::optional<rational> exact;
    };
    std::vector<row_out> rows;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int n : Ns) {
      if (n < 1) throw contract_error("N values must be >= 1");
      row_out r;
      r.N = n;
      if (method == "exact") {
        dp_limits limits;
        limits.max_layer_states = max_layer;
        limits.workers = workers;
        const rational value = mom_exact({n, k, q}, delta, limits);
        r.exact = value;
        r.mom = to_double(value);
      } else {
        mc_config cfg;
        cfg.seed = seed + static_cast<uint64_t>(n);
        cfg.chains = chains;
        cfg.burnin_sweeps = burnin;
        cfg.thin_sweeps = thin;
        cfg.kept_per_chain = kept;
        cfg.step = step;
        cfg.workers = workers;
        r.mom = mom_mc({n, k, q}, to_double(beta), cfg).mean;
      }
      r.ratio = r.mom / std::pow(static_cast<double>(n), target);
      const double x = std::log(static_cast<double>(n)), y = std::log(r.mom);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
      const double denom = sxx - sx * sx / count;
      if (count >= 3 && denom > 1e-12) r.running_slope = (sxy - sx * sy / count) / denom;
      rows.push_back(std::move(r));
    }
    if (format == "csv") {
      std::string out = "N,mom,ratio,running_slope\n";
      for (const auto& r : rows) {
        out += std::to_string(r.N) + "," + fmt_double(r.mom) + "," + fmt_double(r.ratio) + ",";
        if (r.running_slope) out += fmt_double(*r.running_slope);
        out += "\n";
      }
      std::cout << out;
      return;
    }
    json rec = base_record("scan");
    rec["inputs"] = {{"k", k}, {"q", q}, {"beta", beta_str}, {"method", method}};
    rec["exponent"] = target;
    rec["rows"] = json::array();
    for (const auto& r : rows) {
      json jr{{"N", r.N}, {"mom", r.mom}, {"ratio", r.ratio}};
      if (r.exact) jr["mom_exact"] = rat_json(*r.exact);
      if (r.running_slope) jr["running_slope"] = *r.running_slope;
      rec["rows"].push_back(std::move(jr));
    }
    if (rows.size() >= 3 && rows.back().running_slope) {
      rec["slope"] = *rows.back().running_slope;
      rec["slope_target"] = target;
    }
    finish(rec, t, omit_timing);
  });

  jack->callback([&] {
    timer t;
    const rational beta = parse_rational(beta_str);
    if (beta <= 0) throw contract_error("beta must be positive");
    const rational delta = rational(2) / beta;
    std::vector<int> lambda = parse_int_list(lambda_str);
    std::vector<std::complex<double>> points;
    if (!x_str.empty() && !angles_str.empty()) {
      throw contract_error("give either --x or --angles, not both");
    }
    if (!x_str.empty()) {
      for (double v : parse_double_list(x_str)) points.emplace_back(v, 0.0);
    } else if (!angles_str.empty()) {
      for (double a : parse_double_list(angles_str)) points.emplace_back(std::polar(1.0, a));
    } else {
      throw contract_error("need evaluation points: --x or --angles");
    }
    const std::complex<double> value = jack_eval(lambda, points, delta);
    json rec = base_record("jack");
    rec["inputs"] = {{"lambda", lambda}, {"beta", beta_str}};
    rec["value_re"] = value.real();
    rec["value_im"] = value.imag();
    finish(rec, t, omit_timing);
  });

  sample->callback([&] {
    timer t;
    const rational beta = parse_rational(beta_str);
    if (beta <= 0) throw contract_error("beta must be positive");
    mc_config cfg;
    cfg.seed = seed;
    cfg.chains = chains;
    cfg.burnin_sweeps = burnin;
    cfg.thin_sweeps = thin;
    cfg.kept_per_chain = kept;
    cfg.step = step;
    cfg.workers = workers;
    std::vector<std::pair<int, std::vector<double>>> states;
    const chain_stats stats = sample_cbe(N, to_double(beta), cfg,
                                         [&](int chain, const std::vector<double>& angles) {
                                           states.emplace_back(chain, angles);
                                         });
    if (format == "csv") {
      std::string out = "chain,index";
      for (int j = 0; j < N; ++j) out += ",theta_" + std::to_string(j);
      out += "\n";
      int idx = 0, prev_chain = -1;
      for (const auto& [chain, angles] : states) {
        if (chain != prev_chain) {
          idx = 0;
          prev_chain = chain;
        }
        out += std::to_string(chain) + "," + std::to_string(idx++);
        for (double a : angles) out += "," + fmt_double(a);
        out += "\n";
      }
      std::cout << out;
      return;
    }
    json rec = base_record("sample");
    rec["inputs"] = {{"N", N}, {"beta", beta_str}, {"chains", cfg.chains},
                     {"burnin", cfg.burnin_sweeps}, {"thin", cfg.thin_sweeps},
                     {"kept_per_chain", cfg.kept_per_chain}, {"seed", seed}};
    rec["acceptance_rate"] = stats.acceptance_rate();
    rec["acceptance_in_band"] = stats.acceptance_in_band();
    rec["states"] = json::array();
    for (const auto& [chain, angles] : states) {
      rec["states"].push_back(json{{"chain", chain}, {"angles", angles}});
    }
    rec["workers"] = workers;
    finish(rec, t, omit_timing);
  });

  sing->callback([&] {
    timer t;
    json rec = base_record("singularity");
    linear_form order;
    long codim = 0;
    if (n_ones >= 0 || n_zeros >= 0) {
      if (n_ones < 0 || n_zeros < 0) {
        throw contract_error("row form needs both --ones and --zeros");
      }
      order = singularity_order_row(q, n_ones, n_zeros);
      codim = n_ones + n_zeros - (n_ones + n_zeros == 2 * q ? 1 : 0);
      rec["inputs"] = {{"q", q}, {"ones", n_ones}, {"zeros", n_zeros}, {"form", "row"}};
    } else {
      array_point p;
      if (rows_str.empty()) {
        p = x_point(k, q);
      } else {
        p.k = k;
        p.q = q;
        size_t pos = 0;
        while (pos <= rows_str.size()) {
          const auto semi = rows_str.find(';', pos);
          const std::string row_tok =
              rows_str.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
          std::vector<int> row;
          size_t rp = 0;
          while (rp <= row_tok.size() && !row_tok.empty()) {
            const auto comma = row_tok.find(',', rp);
            const std::string ent = row_tok.substr(
                rp, comma == std::string::npos ? std::string::npos : comma - rp);
            if (ent == "f" || ent == "F") row.push_back(-1);
            else if (ent == "0") row.push_back(0);
            else if (ent == "1") row.push_back(1);
            else throw contract_error("row entries must be 0, 1 or f; got '" + ent + "'");
            if (comma == std::string::npos) break;
            rp = comma + 1;
          }
          p.rows.push_back(std::move(row));
          if (semi == std::string::npos) break;
          pos = semi + 1;
        }
      }
      if (!point_consistent(p)) throw contract_error("inconsistent boundary assignment");
      order = singularity_order(p);
      codim = point_codimension(p);
      json rows_echo = json::array();
      for (const auto& row : p.rows) {
        std::string s;
        for (size_t i = 0; i < row.size(); ++i) {
          if (i) s += ",";
          s += row[i] == -1 ? "f" : std::to_string(row[i]);
        }
        rows_echo.push_back(s);
      }
      rec["inputs"] = {{"k", k}, {"q", q}, {"form", rows_str.empty() ? "canonical" : "explicit"}};
      rec["rows"] = rows_echo;
    }
    rec["order"] = {{"constant", rat_json(order.constant)},
                    {"delta_coeff", rat_json(order.delta_coeff)}};
    rec["codimension"] = codim;
    try {
      rec["threshold_beta"] = rat_json(threshold_beta(order, codim));
    } catch (const contract_error&) {
      rec["threshold_beta"] = nullptr;
    }
    if (sing->count("--beta") > 0) {
      const rational beta = parse_rational(beta_str);
      rec["order_at_beta"] = rat_json(order.at_beta(beta));
    }
    finish(rec, t, omit_timing);
  });

  fin->callback([&] {
    timer t;
    json rec = base_record("finiteness");
    rec["inputs"] = {{"k", k}, {"q", q}};
    rec["domain"] = finiteness_json(k, q);
    if (fin->count("--beta") > 0) {
      const rational beta = parse_rational(beta_str);
      rec["inputs"]["beta"] = beta_str;
      rec["status"] = status_name(finiteness_status_of(k, q, beta));
    }
    finish(rec, t, omit_timing);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const cli_exit& e) {
    return e.code;
  } catch (const contract_error& e) {
    emit(json{{"error", {{"type", "contract"}, {"message", e.what()}}},
              {"version", version_string}});
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const divergence_error& e) {
    emit(json{{"error", {{"type", "divergence"}, {"message", e.what()}}},
              {"version", version_string}});
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const resource_error& e) {
    emit(json{{"error", {{"type", "resource"}, {"message", e.what()}}},
              {"version", version_string}});
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const numeric_error& e) {
    emit(json{{"error", {{"type", "numeric"}, {"message", e.what()}}},
              {"version", version_string}});
    std::cerr << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 10;
  }
  return 0;
}
