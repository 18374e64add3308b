#pragma once

// Command layer behind the phaselimit executable: per-command computations
// producing tabular datasets, CSV/JSON writers and exit-status mapping.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "phaselimit/continuous.hpp"
#include "phaselimit/discrete.hpp"
#include "phaselimit/errors.hpp"
#include "phaselimit/montecarlo.hpp"
#include "phaselimit/qfi.hpp"
#include "phaselimit/riskbounds.hpp"
#include "phaselimit/simplexwell.hpp"
#include "phaselimit/specfun.hpp"

#ifndef PHASELIMIT_VERSION
#define PHASELIMIT_VERSION "0.1.0"
#endif

namespace phaselimit::cli {

inline constexpr std::uint64_t kDefaultSeed = 20211;

enum class ExitCode : int { ok = 0, bad_arguments = 1, domain = 2, convergence = 3 };

/// Invalid flag values or combinations, detected before any computation.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Seed from PHASELIMIT_SEED when set and parseable, else kDefaultSeed.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("PHASELIMIT_SEED")) {
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc() && ptr == end && ptr != env) return v;
  }
  return kDefaultSeed;
}

struct RunConfig {
  std::string command;
  std::string figure;  // for reproduce
  int p = 2;
  int N = 32;
  int n = 10;
  int k = 10;
  std::optional<int> ratio;  // N/p; overrides N when given
  double delta = 0.5;
  int N0 = 16;
  double alpha = 1.5;
  std::optional<double> beta;  // defaults to sqrt(p)
  int resolution = 64;
  long samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  double ymin = 2.0;
  double ymax = 1e4;
  double c = 0.0;  // 0 selects 4|A0|^3/27
  int points = 10000;
  int pmax = 0;  // sweep upper limit; 0 selects the figure default
  unsigned threads = 1;
  std::string output;
  std::string format = "csv";

  [[nodiscard]] double beta_or_default() const { return beta.value_or(std::sqrt(static_cast<double>(p))); }
  [[nodiscard]] int total_photons() const { return ratio ? *ratio * p : N; }
  [[nodiscard]] double c_or_default() const { return c > 0.0 ? c : specfun::heisenberg_constant(); }
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"bounds",  "ansatz",       "discrete",     "separate",
                                                 "advantage", "simplex",    "qfi-table",    "risk",
                                                 "scan-margin", "photon-stats", "simulate", "reproduce"};
  return names;
}

inline const std::vector<std::string>& figures() {
  static const std::vector<std::string> names = {"table-1", "fig-comp", "fig-fun", "fig-advantage-left",
                                                 "fig-advantage-right"};
  return names;
}

using Cell = std::variant<long long, double, std::string>;

struct Dataset {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Dataset: row width does not match columns");
    rows.push_back(std::move(row));
  }
};

/// 17 significant digits, locale independent.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

inline std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline void write_csv(std::ostream& os, const Dataset& d) {
  os << "#";
  for (const auto& [key, value] : d.header) os << ' ' << key << '=' << value;
  os << '\n';
  for (std::size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << d.columns[i];
  os << '\n';
  for (const auto& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Dataset& d) {
  nlohmann::ordered_json j;
  j["header"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : d.header) j["header"][key] = value;
  j["columns"] = d.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : d.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* i = std::get_if<long long>(&c)) r.push_back(*i);
      else if (const auto* v = std::get_if<double>(&c)) {
        if (std::isfinite(*v)) r.push_back(*v);
        else r.push_back(nullptr);
      } else r.push_back(std::get<std::string>(c));
    }
    j["rows"].push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

namespace detail {

inline void usage_check(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

inline Dataset make_dataset(const RunConfig& cfg, std::vector<std::pair<std::string, std::string>> params,
                            std::vector<std::string> columns) {
  Dataset d;
  d.header = {{"tool", "phaselimit"}, {"version", PHASELIMIT_VERSION}, {"command", cfg.command},
              {"seed", std::to_string(cfg.seed)}};
  for (auto& kv : params) d.header.push_back(std::move(kv));
  d.columns = std::move(columns);
  return d;
}

inline std::string str(double v) { return format_number(v); }
inline std::string str(long long v) { return std::to_string(v); }
inline std::string str(int v) { return std::to_string(v); }

template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  montecarlo::detail::for_each_chunk(n, threads, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

inline void validate(const RunConfig& cfg) {
  bool known = false;
  for (const auto& c : commands()) known = known || c == cfg.command;
  usage_check(known, "unknown command '" + cfg.command + "'");
  usage_check(cfg.format == "csv" || cfg.format == "json", "format must be csv or json");
  usage_check(cfg.p >= 1, "--p must be positive");
  usage_check(cfg.N >= 1, "--N must be positive");
  usage_check(!cfg.ratio || *cfg.ratio >= 1, "--ratio must be positive");
  usage_check(cfg.n >= 1 && cfg.k >= 1, "--n and --k must be positive");
  usage_check(cfg.samples >= 200, "--samples must be at least 200");
  usage_check(cfg.threads >= 1, "--threads must be positive");
  usage_check(cfg.alpha >= 0.5 && (!cfg.beta || *cfg.beta >= 0.5), "--alpha and --beta must be >= 1/2");
  usage_check(cfg.c >= 0.0, "--c must be positive");
  if (cfg.command == "simplex") {
    usage_check(cfg.p <= 3, "simplex supports p = 1, 2, 3");
    usage_check(cfg.resolution >= 32 && cfg.resolution % 4 == 0,
                "simplex --resolution must be a multiple of 4, at least 32");
  }
  if (cfg.command == "risk") usage_check(cfg.delta > 0.0 && cfg.N0 >= 1, "--delta and --N0 must be positive");
  if (cfg.command == "scan-margin")
    usage_check(cfg.ymin >= 2.0 && cfg.ymax > cfg.ymin && cfg.points >= 2, "scan needs 2 <= ymin < ymax, points >= 2");
  if (cfg.command == "reproduce") {
    bool fig = false;
    for (const auto& f : figures()) fig = fig || f == cfg.figure;
    usage_check(fig, "unknown figure '" + cfg.figure + "'");
  }
}

inline Dataset cmd_bounds(const RunConfig& cfg) {
  const int p = cfg.p;
  const int N = cfg.total_photons();
  auto d = make_dataset(cfg, {{"p", str(p)}, {"N", str(N)}},
                        {"p", "N", "joint_hl_bound", "joint_hl_achievable", "separate_hl", "joint_sql", "separate_sql"});
  const double P = p;
  const double n2 = static_cast<double>(N) * N;
  d.add({static_cast<long long>(p), static_cast<long long>(N), continuous::fundamental_bound(p, N),
         2.0 * P * P * P / n2, std::numbers::pi * std::numbers::pi * P * P * P / n2, P * P / (4.0 * N), P * P / N});
  return d;
}

inline Dataset cmd_ansatz(const RunConfig& cfg) {
  const int p = cfg.p;
  const int N = cfg.total_photons();
  const continuous::AnsatzState s(p, cfg.alpha, cfg.beta_or_default());
  const auto opt = continuous::ansatz_optimal_params(p);
  const auto printed = continuous::printed_ansatz_cost(s, N);
  auto d = make_dataset(cfg, {{"p", str(p)}, {"N", str(N)}, {"alpha", str(s.alpha)}, {"beta", str(s.beta)}},
                        {"p", "N", "alpha", "beta", "norm", "energy", "cost", "cost_large_p_formula",
                         "printed_formula_magnitude", "printed_formula_sign_erratum", "alpha_opt", "beta_opt",
                         "opt_closed_form", "cost_opt", "fundamental_bound"});
  d.add({static_cast<long long>(p), static_cast<long long>(N), s.alpha, s.beta, continuous::ansatz_norm(s),
         continuous::ansatz_energy(s), continuous::ansatz_cost(s, N), continuous::ansatz_cost_closed_form(p, N),
         printed.magnitude, static_cast<long long>(printed.sign_erratum), opt.alpha, opt.beta,
         static_cast<long long>(opt.closed_form),
         continuous::ansatz_cost(continuous::AnsatzState(p, opt.alpha, opt.beta), N),
         continuous::fundamental_bound(p, N)});
  return d;
}

inline Dataset cmd_discrete(const RunConfig& cfg) {
  const int p = cfg.p;
  const int N = cfg.total_photons();
  const double beta = cfg.beta_or_default();
  const double joint = discrete::joint_ansatz_cost_discrete(p, N, cfg.alpha, beta);
  const double cont = continuous::ansatz_cost(continuous::AnsatzState(p, cfg.alpha, beta), 1);
  auto d = make_dataset(cfg, {{"p", str(p)}, {"N", str(N)}, {"alpha", str(cfg.alpha)}, {"beta", str(beta)}},
                        {"p", "N", "alpha", "beta", "joint_cost", "N2_joint_cost", "continuous_N2_cost", "ratio"});
  const double n2 = static_cast<double>(N) * N;
  d.add({static_cast<long long>(p), static_cast<long long>(N), cfg.alpha, beta, joint, n2 * joint, cont,
         n2 * joint / cont});
  return d;
}

inline Dataset cmd_separate(const RunConfig& cfg) {
  const int p = cfg.p;
  const int N = cfg.total_photons();
  const double sep = discrete::separate_optimal_cost(p, N);
  const double P = p;
  auto d = make_dataset(cfg, {{"p", str(p)}, {"N", str(N)}},
                        {"p", "N", "separate_cost", "N2_separate_cost", "continuous_limit"});
  d.add({static_cast<long long>(p), static_cast<long long>(N), sep, static_cast<double>(N) * N * sep,
         std::numbers::pi * std::numbers::pi * P * P * P});
  return d;
}

inline Dataset cmd_advantage(const RunConfig& cfg) {
  const int p = cfg.p;
  const int N = cfg.total_photons();
  const double joint = discrete::joint_ansatz_cost_discrete(p, N, 1.5, std::sqrt(static_cast<double>(p)));
  const double sep = discrete::separate_optimal_cost(p, N);
  auto d = make_dataset(cfg, {{"p", str(p)}, {"N", str(N)}},
                        {"p", "N", "N_over_p", "joint_cost", "separate_cost", "ratio"});
  d.add({static_cast<long long>(p), static_cast<long long>(N), static_cast<long long>(N / p), joint, sep, joint / sep});
  return d;
}

inline Dataset cmd_simplex(const RunConfig& cfg) {
  const int p = cfg.p;
  const std::vector<int> rs = {cfg.resolution / 4, cfg.resolution / 2, cfg.resolution};
  auto d = make_dataset(cfg, {{"p", str(p)}, {"resolution", str(cfg.resolution)}},
                        {"p", "R", "energy", "error_estimate"});
  std::vector<double> h;
  std::vector<double> e;
  for (int r : rs) {
    const double energy = simplexwell::ground_energy(p, r);
    h.push_back(1.0 / r);
    e.push_back(energy);
    d.add({static_cast<long long>(p), static_cast<long long>(r), energy, std::nan("")});
  }
  const auto ex = simplexwell::extrapolate_h2(h, e);
  d.add({static_cast<long long>(p), std::string("extrapolated"), ex.value, ex.error});
  return d;
}

inline Dataset table_dataset(const RunConfig& cfg, int p, int N, int n, int k) {
  auto d = make_dataset(cfg, {{"p", str(p)}, {"N", str(N)}, {"n", str(n)}, {"k", str(k)}},
                        {"strategy", "regime", "formula", "value", "available", "supplementary", "note"});
  for (const auto& c : qfi::table1(p, N, n, k))
    d.add({qfi::to_string(c.strategy), qfi::to_string(c.regime), c.formula, c.value,
           static_cast<long long>(c.available), static_cast<long long>(c.supplementary), c.note});
  return d;
}

inline Dataset cmd_qfi_table(const RunConfig& cfg) {
  return table_dataset(cfg, cfg.p, cfg.total_photons(), cfg.n, cfg.k);
}

inline Dataset cmd_risk(const RunConfig& cfg) {
  const auto rp = riskbounds::RiskParams::from(cfg.p, cfg.delta, cfg.N0);
  const auto norm = riskbounds::prior_normalization(rp.alphaK, rp.L);
  const auto tails = riskbounds::tail_risks(rp);
  const int N = cfg.total_photons();
  const double c = cfg.c_or_default();
  const auto finite = riskbounds::finite_region_bound(cfg.p, N, cfg.delta, c);
  const double shape = 4.0 * rp.alphaK / rp.L;
  auto d = make_dataset(cfg,
                        {{"p", str(cfg.p)}, {"N", str(N)}, {"delta", str(cfg.delta)}, {"N0", str(cfg.N0)},
                         {"c", str(c)}},
                        {"alphaK", "L", "norm_numeric", "norm_bound", "R1", "R1_bound", "R2", "R2_bound",
                         "total_risk", "total_risk_bound", "finite_region_bound", "finite_region_vacuous"});
  d.add({rp.alphaK, rp.L, norm.numeric, norm.analytic_bound, tails.R1, 16.0 * norm.numeric * rp.alphaK, tails.R2,
         14.0 * norm.numeric * rp.L * shape * shape * shape, riskbounds::exact_total_risk(rp),
         riskbounds::total_risk_bound(rp), finite.value, static_cast<long long>(finite.vacuous)});
  return d;
}

inline Dataset cmd_scan_margin(const RunConfig& cfg) {
  const double c = cfg.c_or_default();
  const auto s = riskbounds::scan_margin(cfg.ymin, cfg.ymax, c, cfg.points);
  auto d = make_dataset(cfg,
                        {{"ymin", str(cfg.ymin)}, {"ymax", str(cfg.ymax)}, {"c", str(c)}, {"points", str(cfg.points)}},
                        {"ymin", "ymax", "c", "min_margin", "argmin_y", "positive"});
  d.add({cfg.ymin, cfg.ymax, c, s.min_margin, s.argmin, static_cast<long long>(s.min_margin > 0.0)});
  return d;
}

inline Dataset cmd_photon_stats(const RunConfig& cfg) {
  const int p = cfg.p;
  const int N = cfg.total_photons();
  const auto st = continuous::photon_statistics(p, N);
  auto d = make_dataset(cfg, {{"p", str(p)}, {"N", str(N)}},
                        {"p", "N", "mean_arm", "mean_reference", "correlation", "conservation_residual"});
  d.add({static_cast<long long>(p), static_cast<long long>(N), st.mean_arm, st.mean_reference, st.correlation,
         p * st.mean_arm + st.mean_reference - N});
  return d;
}

inline Dataset cmd_simulate(const RunConfig& cfg) {
  const int p = cfg.p;
  const int N = cfg.total_photons();
  const montecarlo::SeededSampler sampler(cfg.seed);
  const auto exact = continuous::photon_statistics(p, 1);
  const auto mc = montecarlo::sample_photon_numbers(continuous::AnsatzState::asymptotic(p), cfg.samples, sampler,
                                                    cfg.threads);
  auto d = make_dataset(cfg,
                        {{"p", str(p)}, {"N", str(N)}, {"samples", std::to_string(cfg.samples)}},
                        {"quantity", "closed_form", "estimate", "std_error", "z_score"});
  auto row = [&](const std::string& name, double ref, const montecarlo::Estimate& e) {
    d.add({name, ref, e.value, e.std_error, (e.value - ref) / e.std_error});
  };
  row("mean_arm_fraction", exact.mean_arm, mc.mean_arm);
  row("mean_reference_fraction", exact.mean_reference, mc.mean_reference);
  if (p >= 2) row("correlation", exact.correlation, mc.correlation);
  if (N % p == 0) {
    const auto state = discrete::sine_state(N / p);
    row("sine_state_covariant_cost", discrete::single_phase_cost(state),
        montecarlo::sample_covariant_outcome(state, 0.0, cfg.samples, sampler));
  }
  return d;
}

inline Dataset fig_comp(const RunConfig& cfg) {
  const int pmax = cfg.pmax > 0 ? cfg.pmax : 30;
  auto d = make_dataset(cfg, {{"pmax", str(pmax)}, {"N", "1"}},
                        {"p", "fundamental_bound", "ansatz_asymptotic", "ansatz_optimal", "separate", "alpha_opt",
                         "beta_opt"});
  using Row = std::vector<Cell>;
  const auto rows = parallel_map<Row>(static_cast<std::size_t>(pmax), cfg.threads, [](std::size_t i) {
    const int p = static_cast<int>(i) + 1;
    const auto opt = continuous::ansatz_optimal_params(p);
    const double P = p;
    return Row{static_cast<long long>(p), continuous::fundamental_bound(p, 1),
               continuous::ansatz_cost(continuous::AnsatzState::asymptotic(p), 1),
               continuous::ansatz_cost(continuous::AnsatzState(p, opt.alpha, opt.beta), 1),
               std::numbers::pi * std::numbers::pi * P * P * P, opt.alpha, opt.beta};
  });
  for (const auto& r : rows) d.add(r);
  return d;
}

inline Dataset fig_fun(const RunConfig& cfg) {
  const int points = 201;
  auto d = make_dataset(cfg, {{"p_values", "10;50;250"}, {"x_max", "5"}, {"points", str(points)}},
                        {"p", "x", "mu", "marginal_density", "airy_density"});
  for (int p : {10, 50, 250}) {
    const auto mode = continuous::AiryMode::make(p);
    for (int i = 0; i < points; ++i) {
      const double x = 5.0 * i / (points - 1);
      const double mu = x / p;
      const double g = mode.profile(mu);
      d.add({static_cast<long long>(p), x, mu, continuous::photon_marginal_density(p, mu), g * g});
    }
  }
  return d;
}

inline Dataset fig_advantage_left(const RunConfig& cfg) {
  const int p = cfg.p;
  const std::vector<int> ratios = {2, 4, 6, 8, 10, 12, 16, 20, 24, 32, 48, 64};
  const double beta = std::sqrt(static_cast<double>(p));
  const double cont = continuous::ansatz_cost(continuous::AnsatzState(p, 1.5, beta), 1);
  auto d = make_dataset(cfg, {{"p", str(p)}, {"alpha", "1.5"}, {"beta", str(beta)}},
                        {"p", "N_over_p", "N", "N2_joint_cost", "continuous_N2_cost", "ratio"});
  using Row = std::vector<Cell>;
  const auto rows = parallel_map<Row>(ratios.size(), cfg.threads, [&](std::size_t i) {
    const int N = ratios[i] * p;
    const double v = static_cast<double>(N) * N * discrete::joint_ansatz_cost_discrete(p, N, 1.5, beta);
    return Row{static_cast<long long>(p), static_cast<long long>(ratios[i]), static_cast<long long>(N), v, cont,
               v / cont};
  });
  for (const auto& r : rows) d.add(r);
  return d;
}

inline Dataset fig_advantage_right(const RunConfig& cfg) {
  const int pmax = cfg.pmax > 0 ? cfg.pmax : 8;
  const std::vector<int> ratios = {4, 8, 16};
  auto d = make_dataset(cfg, {{"pmax", str(pmax)}, {"N_over_p", "4;8;16"}},
                        {"p", "N_over_p", "N", "joint_cost", "separate_cost", "ratio"});
  using Row = std::vector<Cell>;
  const std::size_t count = static_cast<std::size_t>(pmax) * ratios.size();
  const auto rows = parallel_map<Row>(count, cfg.threads, [&](std::size_t i) {
    const int p = static_cast<int>(i / ratios.size()) + 1;
    const int r = ratios[i % ratios.size()];
    const int N = p * r;
    const double joint = discrete::joint_ansatz_cost_discrete(p, N, 1.5, std::sqrt(static_cast<double>(p)));
    const double sep = discrete::separate_optimal_cost(p, N);
    return Row{static_cast<long long>(p), static_cast<long long>(r), static_cast<long long>(N), joint, sep,
               joint / sep};
  });
  for (const auto& r : rows) d.add(r);
  return d;
}

inline Dataset cmd_reproduce(const RunConfig& cfg) {
  Dataset d;
  if (cfg.figure == "table-1") d = table_dataset(cfg, 10, 1000, 100, 10);
  else if (cfg.figure == "fig-comp") d = fig_comp(cfg);
  else if (cfg.figure == "fig-fun") d = fig_fun(cfg);
  else if (cfg.figure == "fig-advantage-left") d = fig_advantage_left(cfg);
  else d = fig_advantage_right(cfg);
  d.header.insert(d.header.begin() + 4, {"figure", cfg.figure});
  return d;
}

} // namespace detail

/// Validates the configuration and computes the dataset for its command.
/// Throws UsageError, DomainError or ConvergenceError.
inline Dataset execute(const RunConfig& cfg) {
  detail::validate(cfg);
  const std::string& c = cfg.command;
  if (c == "bounds") return detail::cmd_bounds(cfg);
  if (c == "ansatz") return detail::cmd_ansatz(cfg);
  if (c == "discrete") return detail::cmd_discrete(cfg);
  if (c == "separate") return detail::cmd_separate(cfg);
  if (c == "advantage") return detail::cmd_advantage(cfg);
  if (c == "simplex") return detail::cmd_simplex(cfg);
  if (c == "qfi-table") return detail::cmd_qfi_table(cfg);
  if (c == "risk") return detail::cmd_risk(cfg);
  if (c == "scan-margin") return detail::cmd_scan_margin(cfg);
  if (c == "photon-stats") return detail::cmd_photon_stats(cfg);
  if (c == "simulate") return detail::cmd_simulate(cfg);
  return detail::cmd_reproduce(cfg);
}

inline void write(std::ostream& os, const Dataset& d, const std::string& format) {
  if (format == "json") write_json(os, d);
  else write_csv(os, d);
}

/// Runs one command, writing to cfg.output (or `out` when empty). Errors are
/// reported on `err` and mapped to exit codes 1/2/3.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    const Dataset d = execute(cfg);
    if (cfg.output.empty()) {
      write(out, d, cfg.format);
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw UsageError("cannot open output file '" + cfg.output + "'");
      write(file, d, cfg.format);
    }
    return static_cast<int>(ExitCode::ok);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::bad_arguments);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::domain);
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return static_cast<int>(ExitCode::convergence);
  }
}

} // namespace phaselimit::cli
