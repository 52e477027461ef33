// End-to-end acceptance battery. Each criterion prints one PASS/FAIL line
// with the quantities it measured; the exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "chaindisc/chaining.hpp"
#include "chaindisc/coloring.hpp"
#include "chaindisc/core.hpp"
#include "chaindisc/entropy.hpp"
#include "chaindisc/lab.hpp"
#include "chaindisc/parallel.hpp"
#include "chaindisc/rng.hpp"
#include "chaindisc/runner.hpp"
#include "chaindisc/shatter.hpp"

using namespace chaindisc;

namespace {

int g_failures = 0;

class Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int id, const char* name, bool ok, const std::string& detail,
            double secs) {
  std::printf("[%2d] %-38s %s  (%s, %.1fs)\n", id, name, ok ? "PASS" : "FAIL",
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

PointSet sign_system(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::vector<std::vector<double>> rows(m, std::vector<double>(n));
  for (std::size_t r = 0; r < m; ++r) {
    Rng rng = Rng::child(seed, r);
    for (auto& v : rows[r]) v = double(rng.rademacher());
  }
  return PointSet(std::move(rows), n);
}

// ---- 1: heuristic matches the exhaustive discrepancy ------------------------

void crit1() {
  Timer tm;
  int equal = 0;
  bool hd_ok = true;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t seed = 101 + std::uint64_t(i);
    PointSet T = runner::generate("random-box:12,12", seed);
    DiscResult de = disc_exact(T);
    DiscResult dh = disc_heuristic(T, 4096, seed);
    if (std::abs(dh.value - de.value) <= 1e-9) ++equal;
    if (hdisc_exact(T).value < de.value - 1e-12) hd_ok = false;
  }
  report(1, "heuristic vs exact discrepancy", equal >= 99 && hd_ok,
         fmt("equal %d/100, hereditary >= plain: %s", equal,
             hd_ok ? "yes" : "NO"),
         tm.seconds());
}

// ---- 2: partial coloring succeeds and certifies ------------------------------

void crit2() {
  Timer tm;
  int success = 0, confirmed_failures = 0, failures = 0;
  bool valid = true;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t seed = 211 + std::uint64_t(i);
    PointSet T = runner::generate("random-box:16,4", seed);
    Schedule sched = schedule_gamma(16);
    AdmissibleSequence seq =
        build_admissible(T, Metric::euclidean(), BuildStrategy::greedy);
    PartialColorResult pr = partial_color(T, sched, seq, 100000, seed);
    if (pr.success) {
      ++success;
      std::size_t z = pr.eta.zero_count();
      if (pr.zero_lo != 4 || pr.zero_hi != 12 || z < 4 || z > 12) valid = false;
      double sup = 0.0;
      for (std::size_t r = 0; r < T.size(); ++r) {
        double s = std::abs(signed_sum(T[r], pr.eta));
        sup = std::max(sup, s);
        if (s > pr.chain_bound + 1e-9) valid = false;
      }
      if (std::abs(sup - pr.measured_sup) > 1e-9) valid = false;
    } else {
      ++failures;
      PartialColorResult ex = partial_color(T, sched, seq, 0, seed);
      if (ex.success && ex.exhaustive_used) ++confirmed_failures;
    }
  }
  report(2, "partial coloring within budget",
         success >= 99 && valid && confirmed_failures == failures,
         fmt("success %d/100, certificates %s, failures confirmed %d/%d",
             success, valid ? "ok" : "BAD", confirmed_failures, failures),
         tm.seconds());
}

// ---- 3: quantized signed-sum entropy stays under the potential ---------------

void crit3() {
  Timer tm;
  double worst = 0.0;
  int produced = 0;
  for (std::size_t n = 1; n <= 20; ++n) {
    std::vector<std::vector<double>> rows;
    for (int rep = 0; rep < 10; ++rep) {
      std::size_t i = (n - 1) * 10 + std::size_t(rep);
      std::vector<double> a(n);
      bool nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        a[j] = 0.2 * double((7 * i + 3 * j) % 11) - 1.0;
        if (a[j] != 0.0) nonzero = true;
      }
      if (!nonzero) a[0] = 0.5;
      rows.push_back(std::move(a));
      ++produced;
    }
    EntropicReport er = verify_entropic_estimate(PointSet(std::move(rows), n));
    worst = std::max(worst, er.max_ratio);
  }
  EntropicReport anchor = verify_entropic_estimate(PointSet({{1.0}}, 1));
  double want = std::log(2.0) / (1.0 + std::log(2.0));
  bool anchor_ok = std::abs(anchor.max_ratio - want) <= 1e-9;
  report(3, "entropy vs potential on a grid",
         produced == 200 && worst <= 8.0 && anchor_ok,
         fmt("max ratio %.3f (<= 8), unit anchor %s", worst,
             anchor_ok ? "exact" : "OFF"),
         tm.seconds());
}

// ---- 4: halving driver at the n log(em/n) scale ------------------------------

void crit4() {
  Timer tm;
  std::map<std::size_t, double> ratio;
  double v512 = 0.0;
  for (std::size_t n : {std::size_t(64), std::size_t(256), std::size_t(512)}) {
    PointSet T = sign_system(n, n, 400 + n);
    HalvingResult hr = spencer_color(T, 100000, 400 + n);
    ratio[n] = hr.value / std::sqrt(double(n));  // m = n, so log(em/n) = 1
    if (n == 512) v512 = hr.value;
  }
  double lo = 1e300, hi = 0.0;
  for (auto& [n, r] : ratio) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  PointSet T512 = sign_system(512, 512, 400 + 512);
  std::vector<double> sups;
  for (int j = 0; j < 20; ++j) {
    Rng rng = Rng::child(4999, std::uint64_t(j));
    std::vector<int> eps(512);
    for (auto& e : eps) e = rng.rademacher();
    Coloring full(std::move(eps));
    double sup = 0.0;
    for (std::size_t t = 0; t < T512.size(); ++t)
      sup = std::max(sup, std::abs(signed_sum(T512[t], full)));
    sups.push_back(sup);
  }
  std::sort(sups.begin(), sups.end());
  double median = 0.5 * (sups[9] + sups[10]);
  bool ok = lo > 0.0 && hi / lo <= 3.0 && v512 <= 0.8 * median;
  report(4, "square sign systems at sqrt(n) scale", ok,
         fmt("ratio spread %.2f (<= 3), value %.1f vs 0.8*median %.1f", hi / lo,
             v512, 0.8 * median),
         tm.seconds());
}

// ---- 5: interval systems stay near-constant in n ------------------------------

void crit5() {
  Timer tm;
  PointSet T64 = runner::generate("intervals:64,64", 5051);
  PointSet T256 = runner::generate("intervals:256,256", 5052);
  double v64 = matousek_color(T64, 1, 100000, 5051).value;
  double v256 = matousek_color(T256, 1, 100000, 5052).value;
  bool ok = v256 <= 2.0 * v64 + 5.0;
  report(5, "interval systems near-constant", ok,
         fmt("value 64 -> %.2f, 256 -> %.2f (cap %.2f)", v64, v256,
             2.0 * v64 + 5.0),
         tm.seconds());
}

// ---- 6: hereditary discrepancy dominates the shattering lower bound ----------

void crit6() {
  Timer tm;
  std::vector<double> grid;
  for (int j = 1; j <= 20; ++j) grid.push_back(0.1 * j);
  bool ok = true;
  for (int i = 0; i < 50 && ok; ++i) {
    std::size_t n = 2 + std::size_t(i % 7), m = 2 + std::size_t((3 * i) % 5);
    PointSet T = runner::generate(
        "random-box:" + std::to_string(n) + "," + std::to_string(m),
        600 + std::uint64_t(i));
    if (hdisc_exact(T).value < hdisc_vc_lower(T, grid)) ok = false;
  }
  PointSet cube2 = runner::generate("cube:2", 1);
  double up = hdisc_exact(cube2).value;
  double lowb = hdisc_vc_lower(cube2, grid);
  bool anchor = up == 2.0 && lowb == 2.0;
  report(6, "hereditary >= shattering lower bound", ok && anchor,
         fmt("50 instances %s, cube anchor %.1f/%.1f", ok ? "clean" : "VIOLATED",
             up, lowb),
         tm.seconds());
}

// ---- 7: single-function worst-window ratios stay bounded ---------------------

void crit7() {
  Timer tm;
  ShrinkSingleReport rep =
      shrink_single({1.0, 0.0, 0.0, 0.0}, MeasureSpec::gaussian(4), 256, 1000,
                    700);
  double q95 = rep.quantile(0.95);
  report(7, "single-function shrinking", q95 <= 3.0,
         fmt("95th pct %.3f (<= 3)", q95), tm.seconds());
}

// ---- 8: gaussian order statistics track the log law ---------------------------

void crit8() {
  Timer tm;
  OrderStatsReport rep = order_stats(1024, 2000, 800);
  bool ok = true;
  for (double r : rep.ratio)
    if (r < 0.4 || r > 1.6) ok = false;
  if (rep.m_grid != std::vector<std::size_t>{1, 4, 16, 64, 256}) ok = false;
  for (double r : rep.prefix_ratio)
    if (r < 0.4 || r > 1.6) ok = false;

  double a1 = order_stats(1, 2000000, 801).mean_sorted[0];
  double a2 = order_stats(2, 1000000, 802).mean_sorted[0];
  double w1 = std::sqrt(2.0 / M_PI), w2 = 2.0 / std::sqrt(M_PI);
  bool anchors =
      std::abs(a1 - w1) <= 0.02 * w1 && std::abs(a2 - w2) <= 0.02 * w2;
  report(8, "gaussian order statistics", ok && anchors,
         fmt("ratios %s, anchors %.4f/%.4f vs %.4f/%.4f",
             ok ? "in [0.4,1.6]" : "OUT", a1, a2, w1, w2),
         tm.seconds());
}

// ---- 9: projected mean widths scale like sqrt((m/k) log(ek/m)) ----------------

void crit9() {
  Timer tm;
  LinearClass cls{runner::generate("random-sphere:8,64", 900),
                  MeasureSpec::gaussian(8)};
  MeanWidthReport rep = meanwidth_ratio(cls, 128, {8, 16, 32, 64}, 50, 2000, 900);
  bool ok = rep.rows.size() == 4;
  double worst_up = 0.0, worst_low = 1e300;
  for (const MeanWidthRow& row : rep.rows) {
    worst_up = std::max(worst_up, row.c3_hat);
    worst_low = std::min(worst_low, row.lower_ratio);
  }
  ok = ok && worst_up <= 4.0 && worst_low >= 0.2;
  report(9, "projected mean width ratio", ok,
         fmt("max upper %.2f (<= 4), min lower %.2f (>= 0.2)", worst_up,
             worst_low),
         tm.seconds());
}

// ---- 10: discrepancy/mean gap widens with the sample --------------------------

void crit10() {
  Timer tm;
  LinearClass cls{runner::generate("random-sphere:4,64", 1000),
                  MeasureSpec::gaussian(4)};
  GapReport rep = gap_experiment(cls, {16, 64, 256}, 4096, 20, 0.25, 1000);
  bool ok = rep.rows.size() == 3;
  double anchor = 1e300;
  for (const GapRow& row : rep.rows) {
    anchor = std::min(anchor, row.min_anchor);
    if (row.degenerate_trials != 0) ok = false;
  }
  if (ok) {
    ok = rep.rows[0].median_ratio > rep.rows[1].median_ratio &&
         rep.rows[1].median_ratio > rep.rows[2].median_ratio &&
         rep.rows[2].median_ratio <= 0.5 * rep.rows[0].median_ratio &&
         anchor >= 0.3;
  }
  report(10, "gap widens with the sample", ok,
         fmt("medians %.4f > %.4f > %.4f, min anchor %.2f",
             rep.rows.size() == 3 ? rep.rows[0].median_ratio : 0.0,
             rep.rows.size() == 3 ? rep.rows[1].median_ratio : 0.0,
             rep.rows.size() == 3 ? rep.rows[2].median_ratio : 0.0, anchor),
         tm.seconds());
}

// ---- 11: decomposition constants are stable across seeds ----------------------

void crit11() {
  Timer tm;
  bool recon_ok = true;
  std::vector<double> c1s, c2s;
  int violating_seeds = 0;
  for (int i = 0; i < 50; ++i) {
    std::uint64_t seed = 1100 + std::uint64_t(i);
    LinearClass cls{runner::generate("random-sphere:4,32", seed),
                    MeasureSpec::gaussian(4)};
    Decomposition dec = decompose(cls, 64, 8);
    for (std::size_t r = 0; r < cls.T.size(); ++r)
      for (std::size_t j = 0; j < 4; ++j)
        if (dec.f1_part[r][j] + dec.f2_part[r][j] != cls.T[r][j])
          recon_ok = false;
    auto [win, P] = sample_projection(cls, 64, splitmix64(seed ^ 0xabc));
    c1s.push_back(verify_weak_l2_containment(dec, win).c1_hat);
    ShrinkReport sh = verify_shrinking(dec, win, 64, splitmix64(seed ^ 0xdef));
    c2s.push_back(sh.c2_hat);
    if (sh.violations > 0) ++violating_seeds;
  }
  // all-equal constants (e.g. identically zero when the first part vanishes)
  // count as perfectly stable
  auto spread = [](const std::vector<double>& v) {
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    if (hi == lo) return 1.0;
    return lo > 0.0 ? hi / lo : 1e300;
  };
  double s1 = spread(c1s), s2 = spread(c2s);
  bool ok = recon_ok && s1 <= 3.0 && s2 <= 3.0 && violating_seeds <= 5;
  report(11, "decomposition constants stable", ok,
         fmt("recon %s, spreads %.2f/%.2f (<= 3), sqrt2 violations %d/50",
             recon_ok ? "exact" : "BROKEN", s1, s2, violating_seeds),
         tm.seconds());
}

// ---- 12: empirical norms sandwich the true ones --------------------------------

void crit12() {
  Timer tm;
  PointSet T = runner::generate("random-sphere:8,64", 1200);
  LinearClass cls{T, MeasureSpec::gaussian(8)};
  AdmissibleSequence seq =
      build_admissible(T, Metric::euclidean(), BuildStrategy::greedy);
  double A = gamma2(T, Metric::euclidean(), 0, seq);
  IsometryReport rep = almost_isometry(cls, 512, 200, A, 1200, 1.0);

  LinearClass anchor{PointSet({{1.0, 0.0, 0.0}}, 3), MeasureSpec::cube(3)};
  IsometryReport ar = almost_isometry(anchor, 512, 200, 0.0, 1201, 1.0);
  bool ok = rep.rate <= 0.05 && ar.violations == 0 && ar.rate == 0.0;
  report(12, "almost-isometry sandwich", ok,
         fmt("rate %.4f (<= 0.05) over %llu, cube anchor rate %.1f", rep.rate,
             static_cast<unsigned long long>(rep.checked), ar.rate),
         tm.seconds());
}

// ---- 13: covering/packing sandwich and gamma2 sanities --------------------------

void crit13() {
  Timer tm;
  const double eps_grid[4] = {0.25, 0.5, 1.0, 2.0};
  int sandwich_bad = 0, diam_bad = 0;
  Metric eu = Metric::euclidean();
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 2 + std::size_t(i % 4), m = 3 + std::size_t(i % 5);
    PointSet T = runner::generate(
        "random-box:" + std::to_string(n) + "," + std::to_string(m),
        1300 + std::uint64_t(i));
    double eps = eps_grid[i % 4];
    std::size_t cov = covering_number(T, eps, eu).value;
    std::size_t pack = packing_number(T, eps, eu).value;
    std::size_t cov2 = covering_number(T, eps / 2.0, eu).value;
    if (!(cov <= pack && pack <= cov2)) ++sandwich_bad;

    double diam = 0.0;
    for (std::size_t a = 0; a < T.size(); ++a)
      for (std::size_t b = a + 1; b < T.size(); ++b)
        diam = std::max(diam, eu.dist(T[a], T[b]));
    AdmissibleSequence seq = build_admissible(T, eu, BuildStrategy::greedy);
    if (diam > 2.0 * gamma2(T, eu, 0, seq) + 1e-9) ++diam_bad;
  }

  PointSet seg({{0.0, 0.0}, {3.0, 4.0}}, 2);
  AdmissibleSequence es = build_admissible(seg, eu, BuildStrategy::exhaustive);
  bool anchor = std::abs(gamma2(seg, eu, 0, es) - 5.0) <= 1e-9;

  bool greedy_ok = true;
  for (int i = 0; i < 20; ++i) {
    std::size_t n = 2 + std::size_t(i % 2), m = 4 + std::size_t(i % 3);
    PointSet T = runner::generate(
        "random-box:" + std::to_string(n) + "," + std::to_string(m),
        1400 + std::uint64_t(i));
    double g = gamma2(T, eu, 0, build_admissible(T, eu, BuildStrategy::greedy));
    double e = gamma2(T, eu, 0,
                      build_admissible(T, eu, BuildStrategy::exhaustive));
    if (g < e - 1e-12) greedy_ok = false;
  }
  bool ok = sandwich_bad == 0 && diam_bad == 0 && anchor && greedy_ok;
  report(13, "covering sandwich and gamma2", ok,
         fmt("sandwich bad %d, diam bad %d, segment anchor %s, greedy >= "
             "exhaustive %s",
             sandwich_bad, diam_bad, anchor ? "ok" : "OFF",
             greedy_ok ? "yes" : "NO"),
         tm.seconds());
}

// ---- 14: identical reports at 1 and 8 worker threads ----------------------------

runner::RunConfig mk(const std::string& command, const std::string& gen,
                     std::uint64_t seed, nlohmann::json params) {
  runner::RunConfig cfg;
  cfg.command = command;
  cfg.gen = gen;
  cfg.seed = seed;
  cfg.params = std::move(params);
  return cfg;
}

void crit14() {
  Timer tm;
  using nlohmann::json;
  std::vector<runner::RunConfig> runs;
  runs.push_back(mk("disc", "random-box:12,12", 3, {{"mode", "heuristic"}}));
  runs.push_back(mk("disc", "basis:8", 1, {{"mode", "exact"}}));
  runs.push_back(mk("hdisc", "random-box:6,5", 4, json::object()));
  runs.push_back(mk("hdisc-lower", "cube:2", 1, json::object()));
  runs.push_back(mk("partial-color", "random-box:16,4", 5, json::object()));
  runs.push_back(mk("spencer", "random-box:24,24", 6, json::object()));
  runs.push_back(mk("matousek", "intervals:24,24", 7, {{"d", 1}}));
  runs.push_back(mk("gamma2", "random-box:3,6", 8, json::object()));
  runs.push_back(mk("cover", "random-box:3,8", 9, {{"eps", 0.5}}));
  runs.push_back(mk("pack", "random-box:3,8", 9, {{"eps", 0.5}}));
  runs.push_back(mk("entropy-number", "random-box:3,8", 9, {{"k", 2}}));
  runs.push_back(mk("dudley", "basis:6", 1, json::object()));
  runs.push_back(mk("entropy-integral", "basis:6", 1, json::object()));
  runs.push_back(
      mk("schedule", "", 1, {{"kind", "entropy"}, {"n", 16}}));
  runs.push_back(mk("budget-check", "", 1, {{"kind", "gamma"}, {"n", 16}}));
  runs.push_back(mk("entropy", "random-box:8,6", 10, json::object()));
  runs.push_back(mk("vc", "cube:2", 1, {{"eps", 1.0}, {"hull", true}}));
  runs.push_back(mk("shatter", "cube:2", 1,
                    {{"eps", 1.0}, {"indices", json::array({1, 2})}}));
  runs.push_back(mk("haussler", "intervals:12,6", 11, {{"d", 1}}));
  runs.push_back(mk("generate", "random-sphere:4,6", 12, json::object()));

  json gap_cfg = {{"measure", "gaussian"},
                  {"dim", 3},
                  {"index_set", json::array({json::array({1.0, 0.0, 0.0}),
                                             json::array({0.0, 0.6, 0.8})})},
                  {"k_list", json::array({4, 8})},
                  {"trials", 4},
                  {"budget", 256}};
  runs.push_back(mk("lab-gap", "", 13, {{"config", gap_cfg}}));
  json shr_cfg = {{"measure", "gaussian"},
                  {"dim", 2},
                  {"t", json::array({0.6, 0.8})},
                  {"k", 16},
                  {"trials", 200}};
  runs.push_back(mk("lab-shrink", "", 14, {{"config", shr_cfg}}));
  json dec_cfg = {{"measure", "gaussian"}, {"dim", 3}, {"k", 16}, {"m", 4}};
  runs.push_back(
      mk("lab-decompose", "random-sphere:3,10", 15, {{"config", dec_cfg}}));
  json mw_cfg = {{"measure", "gaussian"},
                 {"dim", 3},
                 {"k", 16},
                 {"m_grid", json::array({2, 4})},
                 {"I_samples", 5},
                 {"trials", 400}};
  runs.push_back(
      mk("lab-meanwidth", "random-sphere:3,8", 16, {{"config", mw_cfg}}));
  json os_cfg = {{"n", 16}, {"trials", 500}};
  runs.push_back(mk("lab-orderstats", "", 17, {{"config", os_cfg}}));
  json iso_cfg = {{"measure", "cube"}, {"dim", 3}, {"k", 32}, {"trials", 50}};
  runs.push_back(
      mk("lab-isometry", "random-sphere:3,6", 18, {{"config", iso_cfg}}));

  int mismatches = 0;
  for (runner::RunConfig& cfg : runs) {
    cfg.threads = 1;
    auto one = runner::run(cfg);
    cfg.threads = 8;
    auto eight = runner::run(cfg);
    runner::mask_timestamp(one);
    runner::mask_timestamp(eight);
    if (one.dump() != eight.dump()) {
      ++mismatches;
      std::printf("     mismatch: %s\n", cfg.command.c_str());
    }
  }
  par::set_max_threads(0);
  report(14, "thread-count invariance", mismatches == 0,
         fmt("%zu commands, %d mismatches", runs.size(), mismatches),
         tm.seconds());
}

}  // namespace

int main() {
  Timer total;
  crit1();
  crit2();
  crit3();
  crit4();
  crit5();
  crit6();
  crit7();
  crit8();
  crit9();
  crit10();
  crit11();
  crit12();
  crit13();
  crit14();
  std::printf("%d/14 criteria passed (%.1fs total)\n", 14 - g_failures,
              total.seconds());
  return g_failures == 0 ? 0 : 1;
}
