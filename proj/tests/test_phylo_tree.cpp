#include <doctest.h>

#include "urnphylo/phylo_tree.hpp"

using namespace urnphylo;

TEST_CASE("two-leaf tree basics") {
  PhyloTree t = PhyloTree::two_leaf();
  CHECK(t.root_kind() == RootKind::Rooted);
  CHECK(t.leaf_count() == 2);
  CHECK(t.edge_count() == 3);
  CHECK(t.count_cherries() == 1);
  CHECK(t.count_pitchforks() == 0);
  CHECK(t.to_newick() == "(1,2);");
  t.validate();
}

TEST_CASE("newick round-trip and canonical ordering") {
  for (const char* s : {"(1,2);", "((1,2),3);", "((1,(3,4)),(2,5));", "(1,2,3);",
                        "((1,2),(3,4),(5,6));"}) {
    PhyloTree t = PhyloTree::from_newick(s);
    CHECK(t.to_newick() == s);
    t.validate();
  }
  // non-canonical input parses to canonical output
  CHECK(PhyloTree::from_newick("(3,(2,1));").to_newick() == "((1,2),3);");
}

TEST_CASE("newick parse errors carry position") {
  CHECK_THROWS_AS(PhyloTree::from_newick("((1,2);"), ParseError);
  CHECK_THROWS_AS(PhyloTree::from_newick("(1,1);"), DuplicateTaxonError);
  CHECK_THROWS_AS(PhyloTree::from_newick("(1);"), ParseError);
  CHECK_THROWS_AS(PhyloTree::from_newick(""), ParseError);
}

TEST_CASE("attach and detach are inverse") {
  PhyloTree t = PhyloTree::from_newick("((1,2),3);");
  std::string before = t.to_newick();
  t.attach_leaf(t.pendant_edge_of_taxon(3), 4);
  CHECK(t.leaf_count() == 4);
  CHECK(t.detached(4).to_newick() == before);
  CHECK_THROWS_AS(t.attach_leaf(t.pendant_edge_of_taxon(1), 4), DuplicateTaxonError);
}

TEST_CASE("caterpillar counts") {
  PhyloTree t = PhyloTree::rooted_caterpillar(7);
  CHECK(t.leaf_count() == 7);
  CHECK(t.count_cherries() == 1);
  CHECK(t.count_pitchforks() == 1);
  // pendant types: the cherry is inside a pitchfork (dependent), the
  // pitchfork leaf is E3, the rest are independent pendants.
  EdgeTypeVector v = t.classify_pendant_edges();
  CHECK(v.counts == std::vector<std::int64_t>{2, 0, 1, 4});
}

TEST_CASE("hand-computed edge-type vectors") {
  struct Case {
    const char* newick;
    std::vector<std::int64_t> pendant;
  };
  // 7-leaf rooted trees with hand-computed pendant type vectors
  const Case cases[] = {
      {"(((1,2),(3,4)),((5,6),7));", {2, 4, 1, 0}},
      {"((((1,2),3),4),((5,6),7));", {4, 0, 2, 1}},
      {"((((1,2),(3,4)),5),(6,7));", {0, 6, 0, 1}},
  };
  for (const auto& c : cases) {
    PhyloTree t = PhyloTree::from_newick(c.newick);
    CHECK(t.classify_pendant_edges().counts == c.pendant);
  }
}

TEST_CASE("full classification covers every edge") {
  PhyloTree t = PhyloTree::from_newick("((((1,2),(3,4)),5),(6,7));");
  EdgeTypeVector v = t.classify_all_edges();
  CHECK(v.sum() == t.edge_count());
  CHECK(v.pitchforks() == t.count_pitchforks());
  CHECK(v.cherries() == t.count_cherries());
}

TEST_CASE("unroot suppresses the root and preserves the shape") {
  PhyloTree t = PhyloTree::from_newick("(((1,2),(3,4)),((5,6),7));");
  PhyloTree u = t.unroot();
  CHECK(u.root_kind() == RootKind::Unrooted);
  CHECK(u.leaf_count() == 7);
  CHECK(u.edge_count() == 2 * 7 - 3);
  CHECK(u.count_cherries() == t.count_cherries());
  u.validate();
}

TEST_CASE("classification undefined for small unrooted trees") {
  PhyloTree u = PhyloTree::from_newick("((1,2),(3,4),5);");
  CHECK(u.leaf_count() == 5);
  CHECK_THROWS_AS(u.classify_pendant_edges(), ClassificationUndefinedError);
}

TEST_CASE("six-leaf unrooted vectors") {
  // caterpillar-like: both pendant vectors from the two 6-leaf unrooted shapes
  PhyloTree u1 = PhyloTree::from_newick("((1,2),3,(4,(5,6)));");
  CHECK(u1.classify_pendant_edges().counts == std::vector<std::int64_t>{4, 0, 2, 0});
  CHECK(u1.classify_all_edges().counts == std::vector<std::int64_t>{4, 0, 2, 0, 0, 3});
  PhyloTree u2 = PhyloTree::from_newick("((1,2),(3,4),(5,6));");
  CHECK(u2.classify_pendant_edges().counts == std::vector<std::int64_t>{0, 6, 0, 0});
}
