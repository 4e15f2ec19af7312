#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "toml_lite.hpp"
#include "urnphylo/exact_moments.hpp"
#include "urnphylo/mc_harness.hpp"
#include "urnphylo/spectral.hpp"
#include "urnphylo/urn.hpp"
#include "urnphylo/verify.hpp"

namespace {

constexpr char kVersion[] = "0.1.0";

using urnphylo::ConfigError;
using urnphylo::Model;
using urnphylo::RootKind;

Model parse_model(const std::string& s) {
  if (s == "yhk") return Model::YHK;
  if (s == "pda") return Model::PDA;
  throw ConfigError("unknown model '" + s + "' (expected yhk or pda)");
}

nlohmann::json meta_json(std::uint64_t seed, const toml_lite::Table& effective) {
  return {{"version", kVersion},
          {"rng_algorithm", urnphylo::RngStream::kAlgorithmId},
          {"base_seed", seed},
          {"config_hash", toml_lite::fnv1a_hex(toml_lite::serialize(effective))}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_generate(const std::string& model_s, bool unrooted, std::uint32_t n,
                 std::string seed_tree, std::uint64_t seed, const std::string& format,
                 bool no_stats) {
  Model model = parse_model(model_s);
  if (seed_tree.empty()) seed_tree = unrooted ? "star" : "t2";
  urnphylo::PhyloTree seed_t = urnphylo::resolve_seed_tree(seed_tree);
  urnphylo::ProcessKind kind{model, unrooted ? RootKind::Unrooted : RootKind::Rooted};
  bool stats = !no_stats;
  if (stats && unrooted && n < 6)
    throw ConfigError("edge statistics undefined for unrooted n < 6; pass --no-stats");

  urnphylo::GrowthResult g = urnphylo::generate(kind, seed_t, n, seed, 0);
  toml_lite::Table eff{{"command", "generate"},    {"model", model_s},
                       {"rooting", unrooted ? "unrooted" : "rooted"},
                       {"n", std::to_string(n)},   {"seed_tree", seed_tree},
                       {"seed", std::to_string(seed)}, {"format", format},
                       {"stats", stats ? "true" : "false"}};

  nlohmann::json j;
  j["newick"] = g.tree.to_newick();
  if (stats) {
    j["a"] = g.tree.count_pitchforks();
    j["b"] = g.tree.count_cherries();
    urnphylo::EdgeTypeVector v = model == Model::YHK ? g.tree.classify_pendant_edges()
                                                     : g.tree.classify_all_edges();
    j["edge_types"] = v.counts;
  }
  j["meta"] = meta_json(seed, eff);

  if (format == "json") {
    std::cout << j.dump(2) << '\n';
  } else if (format == "newick") {
    std::cout << j["newick"].get<std::string>() << '\n';
    if (stats) {
      std::cout << "# A=" << j["a"] << " B=" << j["b"] << '\n';
      std::cout << "# edge_types=" << j["edge_types"].dump() << '\n';
    }
    std::cout << "# meta=" << j["meta"].dump() << '\n';
  } else {
    throw ConfigError("unknown format '" + format + "' (expected newick or json)");
  }
  return 0;
}

int cmd_enumerate(const std::string& model_s, int n, std::string seed_tree, int cap) {
  Model model = parse_model(model_s);
  if (seed_tree.empty()) seed_tree = "t2";
  urnphylo::PhyloTree seed_t = urnphylo::resolve_seed_tree(seed_tree);
  urnphylo::JointPmf pmf = urnphylo::enumerate_exact(model, seed_t, n, cap);
  urnphylo::MomentSet ms = urnphylo::moments_from_pmf(pmf, model, n);

  toml_lite::Table eff{{"command", "enumerate"},
                       {"model", model_s},
                       {"n", std::to_string(n)},
                       {"seed_tree", seed_tree}};
  nlohmann::json j;
  std::vector<nlohmann::json> rows;
  for (const auto& [key, p] : pmf.ab)
    rows.push_back({{"a", key.first}, {"b", key.second}, {"p", urnphylo::rational_to_string(p)}});
  j["pmf_ab"] = rows;
  std::vector<nlohmann::json> evs;
  for (const auto& [vec, p] : pmf.edge_vectors)
    evs.push_back({{"counts", vec}, {"p", urnphylo::rational_to_string(p)}});
  j["pmf_edge_types"] = evs;
  j["moments"] = {{"e_a", urnphylo::rational_to_string(ms.e_a)},
                  {"e_b", urnphylo::rational_to_string(ms.e_b)},
                  {"var_a", urnphylo::rational_to_string(ms.var_a)},
                  {"var_b", urnphylo::rational_to_string(ms.var_b)},
                  {"cov_ab", urnphylo::rational_to_string(ms.cov_ab)}};
  j["meta"] = meta_json(0, eff);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_spectral(const std::string& model_s) {
  Model model = parse_model(model_s);
  nlohmann::json j =
      nlohmann::json::parse(urnphylo::spectral_report_json(urnphylo::builtin_spectral(model)));
  urnphylo::SigmaMatrix ab = urnphylo::project_ab(urnphylo::sigma(urnphylo::builtin_spectral(model)));
  j["sigma_ab"] = ab.value;
  if (ab.exact) {
    std::vector<std::vector<std::string>> sq(2, std::vector<std::string>(2));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) sq[a][b] = urnphylo::rational_to_string((*ab.exact)(a, b));
    j["sigma_ab_exact"] = sq;
  }
  toml_lite::Table eff{{"command", "spectral"}, {"model", model_s}};
  j["meta"] = meta_json(0, eff);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_urn_run(const std::string& model_s, std::uint64_t steps, std::uint64_t seed,
                const std::string& initial_s) {
  Model model = parse_model(model_s);
  urnphylo::ReplacementMatrix r = urnphylo::ReplacementMatrix::from_model(model);
  urnphylo::UrnState init;
  if (initial_s.empty()) {
    urnphylo::PhyloTree t2 = urnphylo::PhyloTree::two_leaf();
    init = urnphylo::UrnState::from_edge_types(
        model == Model::YHK ? t2.classify_pendant_edges() : t2.classify_all_edges());
  } else {
    std::istringstream in(initial_s);
    std::string tok;
    while (std::getline(in, tok, ',')) init.counts.push_back(std::stoll(tok));
    if (static_cast<int>(init.counts.size()) != r.d)
      throw ConfigError("initial counts must have dimension " + std::to_string(r.d));
  }
  urnphylo::RngStream rng = urnphylo::RngStream::for_replicate(seed, 0);
  std::vector<int> drawn;
  std::vector<urnphylo::UrnState> traj;
  traj.push_back(init);
  urnphylo::UrnState cur = init;
  for (std::uint64_t i = 0; i < steps; ++i) {
    drawn.push_back(urnphylo::urn_step(cur, r, rng));
    traj.push_back(cur);
  }
  toml_lite::Table eff{{"command", "urn-run"},
                       {"model", model_s},
                       {"steps", std::to_string(steps)},
                       {"seed", std::to_string(seed)}};
  std::cout << "# meta=" << meta_json(seed, eff).dump() << '\n'
            << urnphylo::trajectory_to_csv(traj, drawn);
  return 0;
}

int cmd_simulate(const std::string& config_path, const CLI::App* sub, std::string model_s,
                 bool unrooted_flag, std::string seed_tree, std::uint64_t n,
                 std::uint64_t replicates, std::uint64_t seed, int threads, bool normality) {
  // defaults, then config file, then explicit flags
  toml_lite::Table eff{{"model", "yhk"},      {"rooting", "rooted"}, {"seed_tree", "t2"},
                       {"n", "2000"},         {"replicates", "1000"}, {"seed", "1"},
                       {"threads", "0"},      {"normality", "false"}};
  if (!config_path.empty()) {
    for (const auto& [k, v] : toml_lite::parse(read_file(config_path))) {
      if (!eff.count(k)) throw ConfigError("unknown config key '" + k + "'");
      eff[k] = v;
    }
  }
  auto passed = [&](const std::string& flag) { return sub->count(flag) > 0; };
  if (passed("--model")) eff["model"] = model_s;
  if (passed("--unrooted")) eff["rooting"] = "unrooted";
  if (passed("--rooted")) eff["rooting"] = "rooted";
  if (passed("--seed-tree")) eff["seed_tree"] = seed_tree;
  if (passed("--n")) eff["n"] = std::to_string(n);
  if (passed("--replicates")) eff["replicates"] = std::to_string(replicates);
  if (passed("--seed")) eff["seed"] = std::to_string(seed);
  if (passed("--threads")) eff["threads"] = std::to_string(threads);
  if (passed("--normality")) eff["normality"] = "true";

  urnphylo::CampaignConfig cfg;
  cfg.kind.model = parse_model(eff["model"]);
  if (eff["rooting"] == "rooted")
    cfg.kind.rooting = RootKind::Rooted;
  else if (eff["rooting"] == "unrooted")
    cfg.kind.rooting = RootKind::Unrooted;
  else
    throw ConfigError("rooting must be 'rooted' or 'unrooted'");
  cfg.seed_tree = eff["seed_tree"];
  cfg.n = static_cast<std::uint32_t>(std::stoull(eff["n"]));
  cfg.replicates = std::stoull(eff["replicates"]);
  cfg.base_seed = std::stoull(eff["seed"]);
  cfg.threads = std::stoi(eff["threads"]);
  cfg.run_normality = eff["normality"] == "true";

  urnphylo::CampaignResult res = urnphylo::run_campaign(cfg);
  nlohmann::json j = nlohmann::json::parse(res.to_json());
  j["meta"] = meta_json(cfg.base_seed, eff);
  j["effective_config"] = toml_lite::serialize(eff);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& report_path) {
  std::vector<urnphylo::CriterionResult> results = urnphylo::run_suite(suite);
  for (const auto& r : results)
    std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name
              << " -- " << r.detail << '\n';
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw ConfigError("cannot write report: " + report_path);
    out << urnphylo::acceptance_report_json(results) << '\n';
  }
  bool ok = urnphylo::all_pass(results);
  std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << " (" << results.size()
            << " criteria)\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random phylogenetic trees and generalized Polya urns"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string model = "yhk", seed_tree, format = "newick", config_path, suite = "all",
              report_path, initial;
  bool unrooted = false, rooted = false, no_stats = false, normality = false;
  std::uint64_t n = 0, replicates = 1000, seed = 1, steps = 100;
  int threads = 0, cap = 12;

  auto* gen = app.add_subcommand("generate", "Grow one random tree");
  gen->add_option("--model", model, "yhk|pda");
  gen->add_flag("--unrooted", unrooted);
  gen->add_flag("--rooted", rooted);
  gen->add_option("--n", n, "terminal leaf count")->required();
  gen->add_option("--seed-tree", seed_tree, "t2|star|caterpillar:<m>|<newick>");
  gen->add_option("--seed", seed, "RNG base seed");
  gen->add_option("--format", format, "newick|json");
  gen->add_flag("--no-stats", no_stats);

  auto* sim = app.add_subcommand("simulate", "Run a Monte-Carlo campaign");
  sim->add_option("--config", config_path, "TOML config file");
  sim->add_option("--model", model);
  sim->add_flag("--unrooted", unrooted);
  sim->add_flag("--rooted", rooted);
  sim->add_option("--seed-tree", seed_tree);
  sim->add_option("--n", n);
  sim->add_option("--replicates", replicates);
  sim->add_option("--seed", seed);
  sim->add_option("--threads", threads);
  sim->add_flag("--normality", normality);

  auto* enu = app.add_subcommand("enumerate", "Exact small-n law by exhaustive enumeration");
  enu->add_option("--model", model);
  enu->add_option("--n", n)->required();
  enu->add_option("--seed-tree", seed_tree);
  enu->add_option("--cap", cap, "enumeration size cap");

  auto* spec = app.add_subcommand("spectral", "Eigendata and CLT covariance report");
  spec->add_option("--model", model);

  auto* urn = app.add_subcommand("urn-run", "Raw urn trajectory as CSV");
  urn->add_option("--model", model);
  urn->add_option("--steps", steps);
  urn->add_option("--seed", seed);
  urn->add_option("--initial", initial, "comma-separated counts");

  auto* ver = app.add_subcommand("verify", "Run acceptance suites");
  ver->add_option("--suite", suite, "yhk|pda|urn|spectral|all");
  ver->add_option("--report", report_path, "write JSON report here");

  try {
    app.parse(argc, argv);
    if (gen->parsed())
      return cmd_generate(model, unrooted, static_cast<std::uint32_t>(n), seed_tree, seed,
                          format, no_stats);
    if (sim->parsed())
      return cmd_simulate(config_path, sim, model, unrooted, seed_tree, n, replicates, seed,
                          threads, normality);
    if (enu->parsed()) return cmd_enumerate(model, static_cast<int>(n), seed_tree, cap);
    if (spec->parsed()) return cmd_spectral(model);
    if (urn->parsed()) return cmd_urn_run(model, steps, seed, initial);
    if (ver->parsed()) return cmd_verify(suite, report_path);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const urnphylo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const urnphylo::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
