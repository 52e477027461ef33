#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chaindisc/errors.hpp"
#include "chaindisc/runner.hpp"

namespace {

using chaindisc::runner::RunConfig;

void parse_constants(const std::string& spec,
                     std::map<std::string, double>& out) {
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string item = spec.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw chaindisc::config_error("bad --constants entry '" + item + "'");
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw chaindisc::config_error("bad --constants value in '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw chaindisc::config_error("cannot write '" + cfg.out + "'");
  f << text;
}

int fail(const RunConfig& cfg, const char* type, const std::string& msg,
         int code) {
  nlohmann::ordered_json err;
  err["schema"] = chaindisc::runner::kSchema;
  err["error"] = {{"type", type}, {"message", msg}};
  try {
    emit(cfg, err.dump(2) + "\n");
  } catch (const std::exception&) {
    std::cerr << err.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string constants_spec, config_path;

  CLI::App app{"discrepancy, chaining and projection experiments"};
  app.set_version_flag("--version", chaindisc::runner::kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--input", cfg.input, "point set CSV");
  app.add_option("--gen", cfg.gen,
                 "generator spec: basis:n | cube:n | intervals:n,m | "
                 "random-box:n,m | random-sphere:n,m");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--budget", cfg.budget, "search/sample budget (0 = default)");
  app.add_option("--trials", cfg.trials, "trial count (0 = default)");
  app.add_option("--constants", constants_spec, "overrides, e.g. k1=1,k2=0.5");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", cfg.threads, "worker cap (0 = library default)");

  // per-command knobs; only forwarded when actually given
  std::string mode = "heuristic", strategy = "greedy", metric = "euclidean";
  std::string sched_kind = "gamma", kind;
  double eps = 0.0;
  bool hull = false;
  std::size_t d = 1, k = 0, n = 0, depth = 16, s0 = 0;
  std::size_t subset_samples = 16, eps_grid = 8;
  std::vector<double> delta_grid;
  std::vector<std::size_t> indices;

  auto* c_disc = app.add_subcommand("disc", "discrepancy of a point set");
  c_disc->add_option("--mode", mode)->check(CLI::IsMember({"exact", "heuristic"}));

  app.add_subcommand("hdisc", "hereditary discrepancy, exact");
  auto* c_hlow = app.add_subcommand("hdisc-lower",
                                    "shattering lower bound for hdisc");
  c_hlow->add_option("--delta-grid", delta_grid)->delimiter(',');

  app.add_subcommand("spencer", "six-deviations coloring driver");
  auto* c_mat = app.add_subcommand("matousek", "set-system coloring driver");
  c_mat->add_option("--d", d, "declared shatter dimension")->required();

  auto* c_pc = app.add_subcommand("partial-color", "one pigeonhole round");
  c_pc->add_option("--schedule", sched_kind)
      ->check(CLI::IsMember({"gamma", "entropy"}));
  c_pc->add_option("--depth", depth);

  auto* c_g2 = app.add_subcommand("gamma2", "chaining functional upper bound");
  c_g2->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"greedy", "exhaustive"}));
  c_g2->add_option("--s0", s0);
  c_g2->add_option("--metric", metric);

  auto* c_cov = app.add_subcommand("cover", "covering number");
  c_cov->add_option("--eps", eps)->required();
  c_cov->add_option("--metric", metric);
  auto* c_pack = app.add_subcommand("pack", "packing number");
  c_pack->add_option("--eps", eps)->required();
  c_pack->add_option("--metric", metric);
  auto* c_en = app.add_subcommand("entropy-number", "k-th entropy number");
  c_en->add_option("--k", k)->required();
  c_en->add_option("--metric", metric);

  auto* c_dud = app.add_subcommand("dudley", "entropy integral, sqrt-log form");
  c_dud->add_option("--metric", metric);
  auto* c_ei = app.add_subcommand("entropy-integral",
                                  "entropy integral, two-branch form");
  c_ei->add_option("--metric", metric);

  auto* c_sched = app.add_subcommand("schedule", "print a level schedule");
  c_sched->add_option("--kind", kind)->required()
      ->check(CLI::IsMember({"gamma", "entropy"}));
  c_sched->add_option("--n", n)->required();
  c_sched->add_option("--depth", depth);

  auto* c_bc = app.add_subcommand("budget-check", "entropy budget inequality");
  c_bc->add_option("--kind", kind)->check(CLI::IsMember({"gamma", "entropy"}));
  c_bc->add_option("--n", n)->required();
  c_bc->add_option("--depth", depth);

  app.add_subcommand("entropy", "quantized signed-sum entropy vs potential");

  auto* c_vc = app.add_subcommand("vc", "margin VC dimension");
  c_vc->add_option("--eps", eps)->required();
  c_vc->add_flag("--hull", hull, "shatter with the symmetric convex hull");

  auto* c_sh = app.add_subcommand("shatter", "test one coordinate subset");
  c_sh->add_option("--eps", eps)->required();
  c_sh->add_flag("--hull", hull);
  c_sh->add_option("--indices", indices, "1-based coordinates")
      ->delimiter(',')
      ->required();

  auto* c_hau = app.add_subcommand("haussler", "packing vs declared dimension");
  c_hau->add_option("--d", d)->required();
  c_hau->add_option("--subset-samples", subset_samples);
  c_hau->add_option("--eps-grid", eps_grid);

  app.add_subcommand("generate", "emit a generated point set");

  auto* lab = app.add_subcommand("lab", "subgaussian process experiments");
  lab->require_subcommand(1);
  lab->fallthrough();
  const char* lab_names[] = {"gap",        "shrink",   "meanwidth",
                             "orderstats", "isometry", "decompose"};
  for (const char* name : lab_names)
    lab->add_subcommand(name)->fallthrough();
  lab->add_option("--config", config_path, "experiment config JSON")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    parse_constants(constants_spec, cfg.constants);

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (cfg.command == "lab") {
      cfg.command = "lab-" + sub->get_subcommands().front()->get_name();
      std::ifstream f(config_path);
      if (!f) throw chaindisc::config_error("cannot open '" + config_path + "'");
      try {
        cfg.params["config"] = nlohmann::json::parse(f);
      } catch (const nlohmann::json::exception& e) {
        throw chaindisc::config_error(std::string("config parse: ") + e.what());
      }
    }

    auto fwd = [&](CLI::App* s, const char* flag, const char* key, auto& val) {
      if (s->count(flag)) cfg.params[key] = val;
    };
    fwd(c_disc, "--mode", "mode", mode);
    fwd(c_hlow, "--delta-grid", "delta_grid", delta_grid);
    fwd(c_mat, "--d", "d", d);
    fwd(c_pc, "--schedule", "schedule", sched_kind);
    fwd(c_pc, "--depth", "depth", depth);
    fwd(c_g2, "--strategy", "strategy", strategy);
    fwd(c_g2, "--s0", "s0", s0);
    fwd(c_g2, "--metric", "metric", metric);
    for (CLI::App* s : {c_cov, c_pack}) {
      fwd(s, "--eps", "eps", eps);
      fwd(s, "--metric", "metric", metric);
    }
    fwd(c_en, "--k", "k", k);
    fwd(c_en, "--metric", "metric", metric);
    fwd(c_dud, "--metric", "metric", metric);
    fwd(c_ei, "--metric", "metric", metric);
    fwd(c_sched, "--kind", "kind", kind);
    fwd(c_sched, "--n", "n", n);
    fwd(c_sched, "--depth", "depth", depth);
    fwd(c_bc, "--kind", "kind", kind);
    fwd(c_bc, "--n", "n", n);
    fwd(c_bc, "--depth", "depth", depth);
    fwd(c_vc, "--eps", "eps", eps);
    fwd(c_vc, "--hull", "hull", hull);
    fwd(c_sh, "--eps", "eps", eps);
    fwd(c_sh, "--hull", "hull", hull);
    fwd(c_sh, "--indices", "indices", indices);
    fwd(c_hau, "--d", "d", d);
    fwd(c_hau, "--subset-samples", "subset_samples", subset_samples);
    fwd(c_hau, "--eps-grid", "eps_grid", eps_grid);

    nlohmann::ordered_json rep = chaindisc::runner::run(cfg);
    std::string text = cfg.format == "csv"
                           ? chaindisc::runner::report_csv(rep)
                           : rep.dump(2) + "\n";
    emit(cfg, text);

    // a pigeonhole round that came up empty is a budget failure, not success
    if (cfg.command == "partial-color" &&
        !rep["result"]["success"].get<bool>())
      return 4;
    return 0;
  } catch (const chaindisc::config_error& e) {
    return fail(cfg, "config", e.what(), 2);
  } catch (const chaindisc::size_error& e) {
    return fail(cfg, "size", e.what(), 3);
  } catch (const chaindisc::budget_error& e) {
    return fail(cfg, "budget", e.what(), 4);
  } catch (const std::exception& e) {
    return fail(cfg, "internal", e.what(), 1);
  }
}
