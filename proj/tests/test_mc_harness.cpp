#include <doctest.h>

#include <cstdlib>

#include "urnphylo/mc_harness.hpp"

using namespace urnphylo;

namespace {

CampaignConfig small_config() {
  CampaignConfig cfg;
  cfg.kind = {Model::YHK, RootKind::Rooted};
  cfg.n = 40;
  cfg.replicates = 2000;
  cfg.base_seed = 123;
  return cfg;
}

}  // namespace

TEST_CASE("seed tree resolution") {
  CHECK(resolve_seed_tree("t2").to_newick() == "(1,2);");
  CHECK(resolve_seed_tree("star").root_kind() == RootKind::Unrooted);
  CHECK(resolve_seed_tree("caterpillar:5").leaf_count() == 5);
  CHECK(resolve_seed_tree("((1,2),(3,4));").leaf_count() == 4);
  CHECK_THROWS_AS(resolve_seed_tree("nonsense((("), ConfigError);
}

TEST_CASE("config validation") {
  CampaignConfig cfg = small_config();
  cfg.replicates = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.n = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.kind.rooting = RootKind::Unrooted;  // rooted seed, unrooted process
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.seed_tree = "star";
  cfg.kind.rooting = RootKind::Unrooted;
  cfg.n = 5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // unrooted n < 6
}

TEST_CASE("campaigns are bit-identical across repeats and thread counts") {
  CampaignConfig cfg = small_config();
  CampaignResult a = run_campaign(cfg);
  CampaignResult b = run_campaign(cfg);
  CHECK(a.edge_mean == b.edge_mean);
  CHECK(a.edge_cov == b.edge_cov);
  cfg.threads = 1;
  CampaignResult c = run_campaign(cfg);
  cfg.threads = 4;
  CampaignResult d = run_campaign(cfg);
  CHECK(c.edge_mean == d.edge_mean);
  CHECK(c.edge_cov == d.edge_cov);
  CHECK(c.ab_cov == d.ab_cov);
}

TEST_CASE("degenerate campaign still runs") {
  CampaignConfig cfg;
  cfg.kind = {Model::YHK, RootKind::Rooted};
  cfg.n = 3;
  cfg.replicates = 2;
  CampaignResult res = run_campaign(cfg);
  CHECK(res.replicates == 2);
  CHECK(res.ab_mean.size() == 2);
}

TEST_CASE("result json carries rng metadata") {
  CampaignConfig cfg = small_config();
  cfg.replicates = 16;
  std::string j = run_campaign(cfg).to_json();
  CHECK(j.find("splitmix64-v1") != std::string::npos);
  CHECK(j.find("\"covariance\"") != std::string::npos);
}

TEST_CASE("normality path produces a report") {
  CampaignConfig cfg = small_config();
  cfg.n = 100;
  cfg.replicates = 500;
  cfg.run_normality = true;
  CampaignResult res = run_campaign(cfg);
  CHECK(res.has_normality);
  CHECK(res.ab_normality.n == 500);
  CHECK(res.edge_normality.rank > 0);
  CHECK(res.edge_normality.rank < 4);  // edge sigma is singular (rows sum to 0)
}

TEST_CASE("identical seeds give identical distributions") {
  IndependenceReport rep = initial_tree_independence(
      {Model::YHK, RootKind::Rooted}, {"t2", "t2"}, 40, 1000, 5);
  CHECK(rep.max_mean_gap == 0.0);
  CHECK(rep.max_cov_rel_frobenius == 0.0);
  CHECK(rep.pass);
}

TEST_CASE("different seeds agree within tolerance") {
  IndependenceReport rep = initial_tree_independence(
      {Model::PDA, RootKind::Rooted}, {"caterpillar:6", "((1,2),((3,4),(5,6)));"}, 400,
      4000, 21, 0.25);
  CHECK(rep.pass);
}

TEST_CASE("unrooted split estimator is near 4/5") {
  UnrootedSplitEstimate est = unrooted_split_frequency(20000, 3);
  CHECK(std::abs(est.frequency - 0.8) < 4 * est.std_error + 1e-9);
}
