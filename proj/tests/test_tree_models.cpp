#include <doctest.h>

#include "urnphylo/tree_models.hpp"
#include "urnphylo/urn.hpp"

using namespace urnphylo;

TEST_CASE("growth is deterministic in (seed, replicate)") {
  PhyloTree seed = PhyloTree::two_leaf();
  GrowthResult a = generate({Model::YHK, RootKind::Rooted}, seed, 50, 42, 7);
  GrowthResult b = generate({Model::YHK, RootKind::Rooted}, seed, 50, 42, 7);
  GrowthResult c = generate({Model::YHK, RootKind::Rooted}, seed, 50, 42, 8);
  CHECK(a.tree.to_newick() == b.tree.to_newick());
  CHECK(a.tree.to_newick() != c.tree.to_newick());
}

TEST_CASE("trace serialization round-trips and replays") {
  for (Model m : {Model::YHK, Model::PDA}) {
    GrowthResult g = generate({m, RootKind::Rooted}, PhyloTree::two_leaf(), 20, 3, 0);
    GrowthTrace back = GrowthTrace::from_jsonl(g.trace.to_jsonl());
    CHECK(back.terminal_leaves == 20);
    CHECK(back.steps.size() == g.trace.steps.size());
    CHECK(replay(back).to_newick() == g.tree.to_newick());
  }
}

TEST_CASE("growth from a larger seed keeps its taxa") {
  PhyloTree seed = PhyloTree::from_newick("((1,2),(3,4));");
  GrowthResult g = generate({Model::PDA, RootKind::Rooted}, seed, 12, 9, 0);
  CHECK(g.tree.leaf_count() == 12);
  for (std::uint32_t l = 1; l <= 4; ++l) CHECK(g.tree.has_label(l));
}

TEST_CASE("config errors") {
  PhyloTree seed = PhyloTree::two_leaf();
  CHECK_THROWS_AS(generate({Model::YHK, RootKind::Unrooted}, seed, 10, 1, 0), ConfigError);
  CHECK_THROWS_AS(generate({Model::YHK, RootKind::Rooted}, seed, 1, 1, 0), ConfigError);
}

TEST_CASE("edge type deltas match the replacement matrices") {
  ReplacementMatrix ry = ReplacementMatrix::yhk();
  for (int t = 1; t <= 4; ++t) CHECK(edge_type_delta(t, false) == ry.rows[t - 1]);
  ReplacementMatrix rp = ReplacementMatrix::pda();
  for (int t = 1; t <= 6; ++t) CHECK(edge_type_delta(t, true) == rp.rows[t - 1]);
  CHECK_THROWS_AS(edge_type_delta(5, false), std::out_of_range);
  CHECK_THROWS_AS(edge_type_delta(7, true), std::out_of_range);
}

TEST_CASE("recorded edge types match classification at selection time") {
  for (Model m : {Model::YHK, Model::PDA}) {
    PhyloTree tree = PhyloTree::two_leaf();
    RngStream rng = RngStream::for_replicate(17, 0);
    for (int k = 0; k < 25; ++k) {
      PhyloTree before = tree;
      auto [edge, type] =
          m == Model::YHK ? yhk_step(tree, rng) : pda_step(tree, rng);
      CHECK(type == before.classify_edge(edge));
      CHECK(tree.leaf_count() == before.leaf_count() + 1);
    }
  }
}

TEST_CASE("unrooted growth stays unrooted") {
  GrowthResult g =
      generate({Model::PDA, RootKind::Unrooted}, PhyloTree::unrooted_star(), 10, 4, 0);
  CHECK(g.tree.root_kind() == RootKind::Unrooted);
  CHECK(g.tree.edge_count() == 2 * 10 - 3);
  g.tree.validate();
}
