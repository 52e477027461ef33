#include "chaindisc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "chaindisc/chaining.hpp"
#include "chaindisc/coloring.hpp"
#include "chaindisc/entropy.hpp"
#include "chaindisc/errors.hpp"
#include "chaindisc/io.hpp"
#include "chaindisc/lab.hpp"
#include "chaindisc/parallel.hpp"
#include "chaindisc/rng.hpp"
#include "chaindisc/shatter.hpp"

namespace chaindisc::runner {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
  if (!obj.is_object()) throw config_error(ctx + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw config_error(ctx + ": unknown key '" + item.key() + "'");
  }
}

template <class T>
T param_or(const json& p, const char* key, T def) {
  if (!p.contains(key)) return def;
  try {
    return p.at(key).get<T>();
  } catch (const json::exception&) {
    throw config_error(std::string("bad value for '") + key + "'");
  }
}

template <class T>
T param_req(const json& p, const char* key) {
  if (!p.contains(key))
    throw config_error(std::string("missing required parameter '") + key + "'");
  return param_or<T>(p, key, T{});
}

json rows_json(const PointSet& T) {
  json out = json::array();
  for (std::size_t r = 0; r < T.size(); ++r) out.push_back(T[r]);
  return out;
}

json signs_json(const Coloring& eta) {
  json out = json::array();
  for (std::size_t i = 0; i < eta.size(); ++i) out.push_back(eta[i]);
  return out;
}

json one_based(const IndexSet& I) {
  json out = json::array();
  for (std::size_t i : I) out.push_back(i + 1);
  return out;
}

Metric metric_param(const json& p) {
  std::string m = param_or<std::string>(p, "metric", "euclidean");
  if (m == "euclidean") return Metric::euclidean();
  if (m == "empirical")
    throw config_error("empirical metric needs a window size; use the library");
  throw config_error("unknown metric '" + m + "'");
}

PointSet load_input(const RunConfig& cfg) {
  if (!cfg.input.empty()) return io::load_pointset(cfg.input);
  if (!cfg.gen.empty()) return generate(cfg.gen, cfg.seed);
  throw config_error("no input: pass --input or --gen");
}

// ---- lab config plumbing ------------------------------------------------

json lab_config(const RunConfig& cfg) {
  if (!cfg.params.contains("config"))
    throw config_error("lab commands need --config");
  const json& c = cfg.params.at("config");
  if (!c.is_object()) throw config_error("lab config must be a JSON object");
  return c;
}

MeasureSpec parse_measure(const json& conf) {
  std::size_t dim = param_req<std::size_t>(conf, "dim");
  if (!conf.contains("measure")) return MeasureSpec::gaussian(dim);
  const json& m = conf.at("measure");
  if (m.is_string()) {
    std::string s = m.get<std::string>();
    if (s == "gaussian") return MeasureSpec::gaussian(dim);
    if (s == "cube") return MeasureSpec::cube(dim);
    throw config_error("unknown measure '" + s + "'");
  }
  check_keys(m, {"kind", "values", "probs", "L"}, "measure");
  if (param_or<std::string>(m, "kind", "custom") != "custom")
    throw config_error("structured measures must have kind 'custom'");
  return MeasureSpec::custom(dim, param_req<std::vector<double>>(m, "values"),
                             param_req<std::vector<double>>(m, "probs"),
                             param_or<double>(m, "L", 1.0));
}

PointSet parse_index_set(const json& conf, const RunConfig& cfg) {
  if (conf.contains("index_set")) {
    const json& is = conf.at("index_set");
    if (is.is_string()) return io::load_pointset(is.get<std::string>());
    if (is.is_array()) {
      std::vector<std::vector<double>> rows;
      for (const json& r : is) rows.push_back(r.get<std::vector<double>>());
      std::size_t d = rows.empty() ? 0 : rows.front().size();
      for (const auto& r : rows)
        if (r.size() != d) throw config_error("index_set rows are ragged");
      return PointSet(std::move(rows), d);
    }
    throw config_error("index_set must be an array of rows or a CSV path");
  }
  return load_input(cfg);
}

std::map<std::string, double> merged_constants(const json& conf,
                                               const RunConfig& cfg) {
  std::map<std::string, double> out;
  if (conf.contains("constants"))
    for (const auto& item : conf.at("constants").items())
      out[item.key()] = item.value().get<double>();
  for (const auto& [k, v] : cfg.constants) out[k] = v;  // CLI wins
  return out;
}

std::uint64_t pick_u64(std::uint64_t cli, const json& conf, const char* key,
                       std::uint64_t def) {
  if (cli) return cli;
  return param_or<std::uint64_t>(conf, key, def);
}

// ---- command handlers -----------------------------------------------------

void run_disc(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  std::string mode = param_or<std::string>(cfg.params, "mode", "heuristic");
  DiscResult r;
  if (mode == "exact")
    r = disc_exact(T);
  else if (mode == "heuristic")
    r = disc_heuristic(T, cfg.budget ? cfg.budget : 4096, cfg.seed);
  else
    throw config_error("disc: mode must be exact or heuristic");
  rep["result"] = {{"value", r.value},
                   {"exact", r.exact},
                   {"evaluated", r.evaluated},
                   {"witness", signs_json(r.witness)}};
}

void run_hdisc(const RunConfig& cfg, ordered_json& rep) {
  HdiscResult r = hdisc_exact(load_input(cfg));
  rep["result"] = {{"value", r.value},
                   {"subsets", r.subsets},
                   {"witness_index_set", one_based(r.witness_index_set)},
                   {"witness", signs_json(r.witness)}};
}

void run_hdisc_lower(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  std::vector<double> grid = param_or<std::vector<double>>(
      cfg.params, "delta_grid", {1.0, 0.5});
  double v = hdisc_vc_lower(T, grid);
  rep["result"] = {{"value", v}, {"delta_grid", grid}};
}

json rounds_json(const HalvingResult& r) {
  json rows = json::array();
  for (const RoundRecord& rr : r.rounds)
    rows.push_back({{"round", rr.round},
                    {"n_coords", rr.n_coords},
                    {"colored", rr.colored},
                    {"method", rr.method},
                    {"bound", rr.bound},
                    {"certified", rr.certified},
                    {"samples", rr.samples}});
  return rows;
}

void fill_halving(const HalvingResult& r, ordered_json& rep) {
  rep["result"] = {{"value", r.value},
                   {"bound_sum", r.bound_sum},
                   {"reference_scale", r.reference_scale},
                   {"implied_constant", r.implied_constant},
                   {"any_fallback", r.any_fallback},
                   {"input_warning", r.input_warning},
                   {"coloring", signs_json(r.coloring)}};
  if (!r.round_integrals.empty())
    rep["result"]["round_integrals"] = r.round_integrals;
  rep["rows"] = rounds_json(r);
}

void run_spencer(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  HalvingResult r = spencer_color(T, cfg.budget ? cfg.budget : 100000,
                                  cfg.seed, cfg.constants);
  fill_halving(r, rep);
}

void run_matousek(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  std::size_t d = param_req<std::size_t>(cfg.params, "d");
  HalvingResult r = matousek_color(T, d, cfg.budget ? cfg.budget : 100000,
                                   cfg.seed, cfg.constants);
  fill_halving(r, rep);
}

void run_partial_color(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg).deduplicated();
  std::string kind = param_or<std::string>(cfg.params, "schedule", "gamma");
  std::size_t depth = param_or<std::size_t>(cfg.params, "depth", 16);
  std::size_t n = T.dim();
  Schedule sched;
  if (kind == "gamma")
    sched = schedule_gamma(n, cfg.constants, depth);
  else if (kind == "entropy")
    sched = schedule_entropy(n, cfg.constants, depth);
  else
    throw config_error("partial-color: schedule must be gamma or entropy");
  AdmissibleSequence seq =
      build_admissible(T, Metric::euclidean(), BuildStrategy::greedy);
  PartialColorResult r = partial_color(T, sched, seq,
                                       cfg.budget ? cfg.budget : 100000,
                                       cfg.seed);
  rep["result"] = {{"success", r.success},
                   {"zero_count", r.eta.zero_count()},
                   {"zero_lo", r.zero_lo},
                   {"zero_hi", r.zero_hi},
                   {"chain_bound", r.chain_bound},
                   {"measured_sup", r.measured_sup},
                   {"exhaustive_used", r.exhaustive_used},
                   {"samples_used", r.samples_used},
                   {"buckets", r.buckets},
                   {"largest_bucket", r.largest_bucket},
                   {"eta", signs_json(r.eta)}};
}

void run_gamma2(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  Metric d = metric_param(cfg.params);
  std::string strat = param_or<std::string>(cfg.params, "strategy", "greedy");
  std::size_t s0 = param_or<std::size_t>(cfg.params, "s0", 0);
  BuildStrategy bs;
  if (strat == "greedy")
    bs = BuildStrategy::greedy;
  else if (strat == "exhaustive")
    bs = BuildStrategy::exhaustive;
  else
    throw config_error("gamma2: strategy must be greedy or exhaustive");
  AdmissibleSequence seq = build_admissible(T, d, bs);
  double v = gamma2(T, d, s0, seq);
  json sizes = json::array();
  for (const auto& lv : seq.levels) sizes.push_back(lv.size());
  rep["result"] = {{"value", v},
                   {"s0", s0},
                   {"strategy", strat},
                   {"depth", seq.depth()},
                   {"level_sizes", sizes}};
}

void run_count(const RunConfig& cfg, ordered_json& rep, bool cover) {
  PointSet T = load_input(cfg);
  double eps = param_req<double>(cfg.params, "eps");
  Metric d = metric_param(cfg.params);
  CountResult r = cover ? covering_number(T, eps, d) : packing_number(T, eps, d);
  rep["result"] = {{"value", r.value}, {"exact", r.exact}, {"eps", eps}};
}

void run_entropy_number(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  std::size_t k = param_req<std::size_t>(cfg.params, "k");
  EntropyNumberResult r = entropy_number(T, k, metric_param(cfg.params));
  rep["result"] = {{"value", r.value}, {"exact", r.exact}, {"k", k}};
}

void run_integral(const RunConfig& cfg, ordered_json& rep, bool dudley) {
  PointSet T = load_input(cfg);
  Metric d = metric_param(cfg.params);
  IntegralResult r = dudley ? dudley_integral(T, d) : entropy_integral_u(T, d);
  rep["result"] = {{"value", r.value}, {"exact", r.exact}};
}

void run_schedule(const RunConfig& cfg, ordered_json& rep) {
  std::string kind = param_req<std::string>(cfg.params, "kind");
  std::size_t n = param_req<std::size_t>(cfg.params, "n");
  std::size_t depth = param_or<std::size_t>(cfg.params, "depth", 16);
  Schedule s;
  if (kind == "gamma")
    s = schedule_gamma(n, cfg.constants, depth);
  else if (kind == "entropy")
    s = schedule_entropy(n, cfg.constants, depth);
  else
    throw config_error("schedule: kind must be gamma or entropy");
  json rows = json::array();
  for (std::size_t lvl = 1; lvl <= s.depth(); ++lvl)
    rows.push_back({{"s", lvl},
                    {"log_lambda", s.log_lambda[lvl]},
                    {"log_q", s.log_q[lvl]},
                    {"q", s.q(lvl)}});
  rep["result"] = {{"kind", kind},
                   {"n", n},
                   {"depth", s.depth()},
                   {"degenerate", s.degenerate},
                   {"constants", s.constants}};
  if (s.s_n) rep["result"]["s_n"] = *s.s_n;
  if (s.nu_n) rep["result"]["nu_n"] = *s.nu_n;
  rep["rows"] = rows;
}

void run_budget_check(const RunConfig& cfg, ordered_json& rep) {
  std::string kind = param_or<std::string>(cfg.params, "kind", "entropy");
  std::size_t n = param_req<std::size_t>(cfg.params, "n");
  std::size_t depth = param_or<std::size_t>(cfg.params, "depth", 16);
  Schedule s = kind == "gamma" ? schedule_gamma(n, cfg.constants, depth)
                               : schedule_entropy(n, cfg.constants, depth);
  BudgetCheck b = entropy_budget_check(s, n);
  rep["result"] = {{"lhs", b.lhs},
                   {"rhs", b.rhs},
                   {"ratio", b.ratio},
                   {"pass", b.pass},
                   {"terms", b.terms}};
}

void run_entropy_grid(const RunConfig& cfg, ordered_json& rep) {
  PointSet grid = load_input(cfg);
  EntropicReport r = verify_entropic_estimate(grid);
  json rows = json::array();
  for (const EntropicRow& row : r.rows)
    rows.push_back({{"index", row.index},
                    {"H", row.H},
                    {"phi_bound", row.phi_bound},
                    {"ratio", row.ratio},
                    {"degenerate", row.degenerate}});
  rep["result"] = {{"max_ratio", r.max_ratio},
                   {"argmax", r.argmax},
                   {"any_degenerate", r.any_degenerate}};
  rep["rows"] = rows;
}

void run_vc(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  double eps = param_req<double>(cfg.params, "eps");
  bool hull = param_or<bool>(cfg.params, "hull", false);
  std::size_t v = vc_dim(T, eps, hull);
  rep["result"] = {{"vc_dim", v}, {"eps", eps}, {"hull", hull}};
}

void run_shatter(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  double eps = param_req<double>(cfg.params, "eps");
  bool hull = param_or<bool>(cfg.params, "hull", false);
  std::vector<std::size_t> raw =
      param_req<std::vector<std::size_t>>(cfg.params, "indices");
  std::vector<std::size_t> zero;
  for (std::size_t v : raw) {
    if (v == 0) throw config_error("indices are 1-based");
    zero.push_back(v - 1);
  }
  std::sort(zero.begin(), zero.end());
  zero.erase(std::unique(zero.begin(), zero.end()), zero.end());
  auto w = is_shattered(T, IndexSet(zero), eps, hull);
  rep["result"] = {{"shattered", w.has_value()}, {"eps", eps}, {"hull", hull}};
  if (w) {
    rep["result"]["indices"] = one_based(w->indices);
    rep["result"]["levels"] = w->levels;
    rep["result"]["assignment"] = w->assignment;
    if (w->hull)
      rep["result"]["weights"] = w->weights;
    else {
      json rows = json::array();
      for (std::size_t r : w->rows) rows.push_back(r + 1);
      rep["result"]["rows"] = rows;
    }
  }
}

void run_haussler(const RunConfig& cfg, ordered_json& rep) {
  PointSet T = load_input(cfg);
  std::size_t d = param_req<std::size_t>(cfg.params, "d");
  std::size_t subs = param_or<std::size_t>(cfg.params, "subset_samples", 16);
  std::size_t grid = param_or<std::size_t>(cfg.params, "eps_grid", 8);
  HausslerReport r = haussler_check(T, d, cfg.seed, subs, grid);
  json rows = json::array();
  for (const HausslerEntry& e : r.entries) {
    json sub = json::array();
    for (std::size_t i : e.subset) sub.push_back(i + 1);
    rows.push_back({{"subset", sub},
                    {"eps", e.eps},
                    {"packing", e.packing},
                    {"implied", e.implied}});
  }
  rep["result"] = {{"declared_d", r.declared_d},
                   {"measured_vc", r.measured_vc},
                   {"vc_checked", r.vc_checked},
                   {"violation", r.violation},
                   {"implied_constant", r.implied_constant}};
  rep["rows"] = rows;
}

void run_generate(const RunConfig& cfg, ordered_json& rep) {
  if (cfg.gen.empty()) throw config_error("generate: pass --gen");
  PointSet T = generate(cfg.gen, cfg.seed);
  rep["result"] = {{"points", T.size()}, {"dim", T.dim()}};
  rep["rows"] = rows_json(T);
}

// ---- lab handlers ----------------------------------------------------------

void run_lab_gap(const RunConfig& cfg, ordered_json& rep) {
  json conf = lab_config(cfg);
  check_keys(conf,
             {"measure", "dim", "index_set", "k_list", "trials", "budget",
              "rho", "constants"},
             "lab gap config");
  LinearClass cls{parse_index_set(conf, cfg), parse_measure(conf)};
  std::vector<std::size_t> k_list =
      param_req<std::vector<std::size_t>>(conf, "k_list");
  std::uint64_t trials = pick_u64(cfg.trials, conf, "trials", 20);
  std::uint64_t budget = pick_u64(cfg.budget, conf, "budget", 4096);
  double rho = param_or<double>(conf, "rho", 0.25);
  GapReport r = gap_experiment(cls, k_list, budget, trials, rho, cfg.seed);
  json rows = json::array();
  for (const GapRow& row : r.rows)
    rows.push_back({{"k", row.k},
                    {"median_ratio", row.median_ratio},
                    {"mean_ratio", row.mean_ratio},
                    {"min_anchor", row.min_anchor},
                    {"a_k", row.a_k},
                    {"degenerate_trials", row.degenerate_trials}});
  rep["result"] = {{"sigma_f", r.sigma_f},
                   {"diam", r.diam},
                   {"rho", rho},
                   {"trials", trials},
                   {"budget", budget}};
  rep["rows"] = rows;
}

void run_lab_shrink(const RunConfig& cfg, ordered_json& rep) {
  json conf = lab_config(cfg);
  check_keys(conf,
             {"measure", "dim", "index_set", "k", "m", "t", "trials",
              "pair_samples", "constants"},
             "lab shrink config");
  MeasureSpec mu = parse_measure(conf);
  std::size_t k = param_req<std::size_t>(conf, "k");
  if (conf.contains("t")) {
    std::vector<double> t = param_req<std::vector<double>>(conf, "t");
    std::uint64_t trials = pick_u64(cfg.trials, conf, "trials", 200);
    ShrinkSingleReport r = shrink_single(t, mu, k, trials, cfg.seed);
    rep["result"] = {{"trials", trials},
                     {"q50", r.quantile(0.50)},
                     {"q90", r.quantile(0.90)},
                     {"q95", r.quantile(0.95)},
                     {"max", r.constants.empty() ? 0.0 : r.constants.back()}};
    return;
  }
  LinearClass cls{parse_index_set(conf, cfg), mu};
  std::size_t m = param_req<std::size_t>(conf, "m");
  std::size_t pair_samples = param_or<std::size_t>(conf, "pair_samples", 64);
  Decomposition dec = decompose(cls, k, m);
  auto [win, P] = sample_projection(cls, k, cfg.seed);
  ShrinkReport r = verify_shrinking(dec, win, pair_samples,
                                    splitmix64(cfg.seed ^ 0x5eed));
  rep["result"] = {{"c2_hat", r.c2_hat},
                   {"full_ratio_max", r.full_ratio_max},
                   {"violations", r.violations},
                   {"pairs", r.pairs},
                   {"skipped", r.skipped}};
}

void run_lab_meanwidth(const RunConfig& cfg, ordered_json& rep) {
  json conf = lab_config(cfg);
  check_keys(conf,
             {"measure", "dim", "index_set", "k", "m_grid", "I_samples",
              "trials", "constants"},
             "lab meanwidth config");
  LinearClass cls{parse_index_set(conf, cfg), parse_measure(conf)};
  std::size_t k = param_req<std::size_t>(conf, "k");
  std::vector<std::size_t> m_grid =
      param_req<std::vector<std::size_t>>(conf, "m_grid");
  std::size_t I_samples = param_or<std::size_t>(conf, "I_samples", 50);
  std::uint64_t trials = pick_u64(cfg.trials, conf, "trials", 2000);
  MeanWidthReport r =
      meanwidth_ratio(cls, k, m_grid, I_samples, trials, cfg.seed);
  json rows = json::array();
  for (const MeanWidthRow& row : r.rows)
    rows.push_back({{"m", row.m},
                    {"c3_hat", row.c3_hat},
                    {"lower_ratio", row.lower_ratio}});
  rep["result"] = {{"ell_T", r.ell_T}, {"k", k}, {"I_samples", I_samples}};
  rep["rows"] = rows;
}

void run_lab_orderstats(const RunConfig& cfg, ordered_json& rep) {
  json conf = lab_config(cfg);
  check_keys(conf, {"n", "trials", "m_grid"}, "lab orderstats config");
  std::size_t n = param_req<std::size_t>(conf, "n");
  std::uint64_t trials = pick_u64(cfg.trials, conf, "trials", 2000);
  std::vector<std::size_t> m_grid = param_or<std::vector<std::size_t>>(
      conf, "m_grid", {1, 4, 16, 64, 256});
  OrderStatsReport r = order_stats(n, trials, cfg.seed, m_grid);
  json rows = json::array();
  for (std::size_t j = 0; j < r.m_grid.size(); ++j)
    rows.push_back({{"m", r.m_grid[j]},
                    {"prefix_rms", r.prefix_rms[j]},
                    {"prefix_ratio", r.prefix_ratio[j]}});
  rep["result"] = {{"n", n},
                   {"trials", trials},
                   {"mean_sorted", r.mean_sorted},
                   {"ratio", r.ratio}};
  rep["rows"] = rows;
}

void run_lab_isometry(const RunConfig& cfg, ordered_json& rep) {
  json conf = lab_config(cfg);
  check_keys(conf, {"measure", "dim", "index_set", "k", "trials", "constants"},
             "lab isometry config");
  LinearClass cls{parse_index_set(conf, cfg), parse_measure(conf)};
  std::size_t k = param_req<std::size_t>(conf, "k");
  std::uint64_t trials = pick_u64(cfg.trials, conf, "trials", 200);
  auto consts = merged_constants(conf, cfg);
  double kappa7 = consts.count("kappa7") ? consts.at("kappa7") : 1.0;
  double A = 0.0;
  if (!cls.T.empty()) {
    AdmissibleSequence seq =
        build_admissible(cls.T, Metric::euclidean(), BuildStrategy::greedy);
    A = gamma2(cls.T, Metric::euclidean(), 0, seq);
  }
  IsometryReport r = almost_isometry(cls, k, trials, A, cfg.seed, kappa7);
  rep["result"] = {{"A_estimate", A},
                   {"kappa7", kappa7},
                   {"threshold", r.threshold},
                   {"checked", r.checked},
                   {"violations", r.violations},
                   {"rate", r.rate}};
}

void run_lab_decompose(const RunConfig& cfg, ordered_json& rep) {
  json conf = lab_config(cfg);
  check_keys(conf,
             {"measure", "dim", "index_set", "k", "m", "pair_samples",
              "constants"},
             "lab decompose config");
  LinearClass cls{parse_index_set(conf, cfg), parse_measure(conf)};
  std::size_t k = param_req<std::size_t>(conf, "k");
  std::size_t m = param_req<std::size_t>(conf, "m");
  std::size_t pair_samples = param_or<std::size_t>(conf, "pair_samples", 64);

  Decomposition dec = decompose(cls, k, m);
  double recon = 0.0;
  for (std::size_t r = 0; r < cls.T.size(); ++r)
    for (std::size_t i = 0; i < cls.T.dim(); ++i)
      recon = std::max(recon, std::abs(dec.f1_part[r][i] + dec.f2_part[r][i] -
                                       cls.T[r][i]));
  auto [win, P] = sample_projection(cls, k, cfg.seed);
  WeakL2Report wl2 = verify_weak_l2_containment(dec, win);
  ShrinkReport sh = verify_shrinking(dec, win, pair_samples,
                                     splitmix64(cfg.seed ^ 0x5eed));
  rep["result"] = {
      {"k", k},
      {"m", m},
      {"tau", dec.tau},
      {"level", dec.level},
      {"degenerate", dec.degenerate},
      {"net_size", dec.net_size},
      {"gamma_tau", dec.gamma_tau},
      {"reconstruction_error", recon},
      {"weak_l2",
       {{"gamma_bound", wl2.gamma_bound},
        {"max_radius", wl2.max_radius},
        {"c1_hat", wl2.c1_hat},
        {"degenerate", wl2.degenerate}}},
      {"shrinking",
       {{"c2_hat", sh.c2_hat},
        {"full_ratio_max", sh.full_ratio_max},
        {"violations", sh.violations},
        {"pairs", sh.pairs},
        {"skipped", sh.skipped}}}};
}

}  // namespace

PointSet generate(const std::string& spec, std::uint64_t seed) {
  std::string kind = spec;
  std::vector<std::size_t> args;
  std::size_t colon = spec.find(':');
  if (colon != std::string::npos) {
    kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t comma = rest.find(',', pos);
      std::string tok = rest.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw config_error("bad generator spec '" + spec + "'");
      args.push_back(std::stoull(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw config_error("generator '" + kind + "' wants " +
                         std::to_string(n) + " parameter(s)");
  };

  if (kind == "basis") {
    need(1);
    std::size_t n = args[0];
    if (n == 0) throw config_error("basis: n must be >= 1");
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
    return PointSet(std::move(rows), n);
  }
  if (kind == "cube") {
    need(1);
    std::size_t n = args[0];
    if (n == 0) throw config_error("cube: n must be >= 1");
    if (n > 12) throw size_error("cube: n capped at 12");
    std::vector<std::vector<double>> rows;
    for (std::size_t code = 0; code < (std::size_t(1) << n); ++code) {
      std::vector<double> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = (code >> i) & 1 ? 1.0 : -1.0;
      rows.push_back(std::move(r));
    }
    return PointSet(std::move(rows), n);
  }
  if (kind == "intervals") {
    need(2);
    std::size_t n = args[0], m = args[1];
    if (n < 2 || m < 2) throw config_error("intervals: need n >= 2 and m >= 2");
    Rng rng(seed);
    std::size_t a = rng.below(n), b = a;
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<double> r(n, 0.0);
      for (std::size_t i = a; i <= b; ++i) r[i] = 1.0;
      rows.push_back(std::move(r));
      if (j == 0) {
        // force real growth so one coordinate separates the first row from
        // the rest; nesting keeps every two-point set unshatterable
        if (b + 1 < n)
          ++b;
        else
          --a;
      } else {
        a -= std::min<std::size_t>(a, rng.below(3));
        b += std::min<std::size_t>(n - 1 - b, rng.below(3));
      }
    }
    return PointSet(std::move(rows), n);
  }
  if (kind == "random-box") {
    need(2);
    std::size_t n = args[0], m = args[1];
    if (n == 0 || m == 0) throw config_error("random-box: need n, m >= 1");
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (std::size_t j = 0; j < m; ++j) {
      Rng rng = Rng::child(seed, j);
      for (auto& v : rows[j]) v = rng.uniform(-1.0, 1.0);
    }
    return PointSet(std::move(rows), n);
  }
  if (kind == "random-sphere") {
    need(2);
    std::size_t n = args[0], m = args[1];
    if (n == 0 || m == 0) throw config_error("random-sphere: need n, m >= 1");
    std::vector<std::vector<double>> rows(m, std::vector<double>(n));
    for (std::size_t j = 0; j < m; ++j) {
      Rng rng = Rng::child(seed, j);
      double norm = 0.0;
      do {
        for (auto& v : rows[j]) v = rng.gauss();
        norm = l2norm(rows[j]);
      } while (norm < 1e-12);
      for (auto& v : rows[j]) v /= norm;
    }
    return PointSet(std::move(rows), n);
  }
  throw config_error("unknown generator '" + kind + "'");
}

void mask_timestamp(nlohmann::ordered_json& report) {
  if (report.contains("provenance") && report["provenance"].contains("timestamp"))
    report["provenance"]["timestamp"] = "MASKED";
}

std::string report_csv(const nlohmann::ordered_json& report) {
  std::ostringstream out;
  auto cell = [](const ordered_json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  if (report.contains("rows") && report["rows"].is_array() &&
      !report["rows"].empty()) {
    const auto& rows = report["rows"];
    if (rows.front().is_object()) {
      bool first = true;
      for (const auto& item : rows.front().items()) {
        if (!first) out << ',';
        out << item.key();
        first = false;
      }
      out << '\n';
      for (const auto& row : rows) {
        bool f = true;
        for (const auto& item : row.items()) {
          if (!f) out << ',';
          out << cell(item.value());
          f = false;
        }
        out << '\n';
      }
    } else {
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) out << ',';
          out << cell(row[i]);
        }
        out << '\n';
      }
    }
    return out.str();
  }
  if (report.contains("result") && report["result"].is_object()) {
    for (const auto& item : report["result"].items())
      out << item.key() << ',' << cell(item.value()) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json run(const RunConfig& cfg) {
  par::set_max_threads(cfg.threads);

  ordered_json rep;
  rep["schema"] = kSchema;
  rep["command"] = cfg.command;
  // --threads is execution plumbing: it cannot change any result, so it is
  // deliberately left out of the echo to keep reports thread-count invariant
  rep["config"] = ordered_json{{"input", cfg.input},
                               {"gen", cfg.gen},
                               {"seed", cfg.seed},
                               {"budget", cfg.budget},
                               {"trials", cfg.trials},
                               {"constants", cfg.constants},
                               {"format", cfg.format},
                               {"params", cfg.params}};
  rep["provenance"] =
      ordered_json{{"version", kVersion}, {"timestamp", timestamp_utc()}};

  const std::string& c = cfg.command;
  if (c == "disc")
    run_disc(cfg, rep);
  else if (c == "hdisc")
    run_hdisc(cfg, rep);
  else if (c == "hdisc-lower")
    run_hdisc_lower(cfg, rep);
  else if (c == "spencer")
    run_spencer(cfg, rep);
  else if (c == "matousek")
    run_matousek(cfg, rep);
  else if (c == "partial-color")
    run_partial_color(cfg, rep);
  else if (c == "gamma2")
    run_gamma2(cfg, rep);
  else if (c == "cover")
    run_count(cfg, rep, true);
  else if (c == "pack")
    run_count(cfg, rep, false);
  else if (c == "entropy-number")
    run_entropy_number(cfg, rep);
  else if (c == "dudley")
    run_integral(cfg, rep, true);
  else if (c == "entropy-integral")
    run_integral(cfg, rep, false);
  else if (c == "schedule")
    run_schedule(cfg, rep);
  else if (c == "budget-check")
    run_budget_check(cfg, rep);
  else if (c == "entropy")
    run_entropy_grid(cfg, rep);
  else if (c == "vc")
    run_vc(cfg, rep);
  else if (c == "shatter")
    run_shatter(cfg, rep);
  else if (c == "haussler")
    run_haussler(cfg, rep);
  else if (c == "generate")
    run_generate(cfg, rep);
  else if (c == "lab-gap")
    run_lab_gap(cfg, rep);
  else if (c == "lab-shrink")
    run_lab_shrink(cfg, rep);
  else if (c == "lab-meanwidth")
    run_lab_meanwidth(cfg, rep);
  else if (c == "lab-orderstats")
    run_lab_orderstats(cfg, rep);
  else if (c == "lab-isometry")
    run_lab_isometry(cfg, rep);
  else if (c == "lab-decompose")
    run_lab_decompose(cfg, rep);
  else
    throw config_error("unknown command '" + c + "'");
  return rep;
}

}  // namespace chaindisc::runner
