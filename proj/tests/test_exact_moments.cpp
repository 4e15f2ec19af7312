#include <doctest.h>

#include "urnphylo/exact_moments.hpp"

using namespace urnphylo;

TEST_CASE("four-leaf laws") {
  JointPmf y = enumerate_exact(Model::YHK, PhyloTree::two_leaf(), 4);
  CHECK(y.ab.at({1, 1}) == Rational(2, 3));
  CHECK(y.ab.at({0, 2}) == Rational(1, 3));
  JointPmf p = enumerate_exact(Model::PDA, PhyloTree::two_leaf(), 4);
  CHECK(p.ab.at({1, 1}) == Rational(4, 5));
  CHECK(p.ab.at({0, 2}) == Rational(1, 5));
  CHECK(y.total_ab() == 1);
  CHECK(p.total_ab() == 1);
}

TEST_CASE("closed forms agree with enumeration at n=7") {
  for (Model m : {Model::YHK, Model::PDA}) {
    JointPmf pmf = enumerate_exact(m, PhyloTree::two_leaf(), 7);
    MomentSet got = moments_from_pmf(pmf, m, 7);
    MomentSet want = m == Model::YHK ? yhk_moments(7) : pda_moments(7);
    CHECK(got.e_a == want.e_a);
    CHECK(got.e_b == want.e_b);
    CHECK(got.var_a == want.var_a);
    CHECK(got.var_b == want.var_b);
    CHECK(got.cov_ab == want.cov_ab);
  }
}

TEST_CASE("closed forms guard small n") {
  CHECK_THROWS_AS(yhk_moments(6), std::out_of_range);
  CHECK_THROWS_AS(pda_moments(5), std::out_of_range);
}

TEST_CASE("spot values of the closed forms") {
  MomentSet y = yhk_moments(12);
  CHECK(y.e_a == 2);
  CHECK(y.e_b == 4);
  CHECK(y.var_b == Rational(24, 45));
  MomentSet p = pda_moments(7);
  CHECK(p.e_b == Rational(21, 11));  // 7*6 / (2*11)
  CHECK(p.e_a == Rational(35, 33));
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_exact(Model::YHK, PhyloTree::two_leaf(), 13), Error);
}

TEST_CASE("shape keys ignore labels and orientation") {
  CHECK(shape_key(PhyloTree::from_newick("((1,2),3);")) ==
        shape_key(PhyloTree::from_newick("(7,(5,9));")));
  CHECK(shape_key(PhyloTree::from_newick("((1,2),(3,4));")) !=
        shape_key(PhyloTree::from_newick("(((1,2),3),4);")));
  CHECK(shape_key(PhyloTree::from_newick("((1,2),3,(4,(5,6)));")) ==
        shape_key(PhyloTree::from_newick("((6,4),5,(3,(1,2)));")));
}

TEST_CASE("unrooted enumeration omits the edge-type law below six leaves") {
  JointPmf pmf = enumerate_exact(Model::PDA, PhyloTree::unrooted_star(), 5);
  CHECK(pmf.total_ab() == 1);
  CHECK(pmf.edge_vectors.empty());
  JointPmf six = enumerate_exact(Model::PDA, PhyloTree::unrooted_star(), 6);
  CHECK_FALSE(six.edge_vectors.empty());
}

TEST_CASE("unrooted six-leaf split constants") {
  UnrootedSplit split = unrooted_initial_split();
  CHECK(split.p_alpha1 == Rational(4, 5));
  CHECK(split.p_alpha2 == Rational(1, 5));
  CHECK(split.p_alpha1 + split.p_alpha2 == 1);

  // exact cross-check: rooted YHK from the 2-leaf tree to n=6, unrooted,
  // lands on (4,0,2,0) with probability exactly 4/5
  std::map<std::string, std::pair<Rational, PhyloTree>> states;
  PhyloTree t2 = PhyloTree::two_leaf();
  states.emplace(shape_key(t2), std::make_pair(Rational(1), t2));
  for (int k = 2; k < 6; ++k) {
    std::map<std::string, std::pair<Rational, PhyloTree>> next;
    for (const auto& [key, entry] : states) {
      const auto& [p, tree] = entry;
      Rational w = p / k;
      for (std::uint32_t i = 0; i < tree.leaf_count(); ++i) {
        PhyloTree child = tree;
        child.attach_leaf(tree.pendant_edge(i), child.max_label() + 1);
        std::string ck = shape_key(child);
        auto it = next.find(ck);
        if (it == next.end())
          next.emplace(ck, std::make_pair(w, std::move(child)));
        else
          it->second.first += w;
      }
    }
    states = std::move(next);
  }
  Rational p1 = 0;
  for (const auto& [key, entry] : states) {
    PhyloTree u = entry.second.unroot();
    if (u.classify_pendant_edges().counts == std::vector<std::int64_t>{4, 0, 2, 0})
      p1 += entry.first;
  }
  CHECK(p1 == Rational(4, 5));
}

TEST_CASE("pmf csv") {
  std::string csv = enumerate_exact(Model::PDA, PhyloTree::two_leaf(), 4).to_csv();
  CHECK(csv.find("a,b,p") == 0);
  CHECK(csv.find("1,1,4/5") != std::string::npos);
}
