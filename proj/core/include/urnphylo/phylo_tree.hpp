#ifndef URNPHYLO_PHYLO_TREE_HPP
#define URNPHYLO_PHYLO_TREE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "urnphylo/errors.hpp"

namespace urnphylo {

enum class RootKind { Rooted, Unrooted };

// An edge is identified by its child-end node index; stable under leaf
// attachment because nodes are never renumbered.
struct EdgeRef {
  std::uint32_t child = 0;
  friend bool operator==(EdgeRef a, EdgeRef b) { return a.child == b.child; }
};

enum class EdgeKind { Pendant, Internal };

// Counts of edges by type: length 4 (pendant types E1..E4) or 6 (all edges,
// E1..E6). Entry i holds |E_{i+1}(T)|.
struct EdgeTypeVector {
  std::vector<std::int64_t> counts;

  std::int64_t sum() const;
  std::int64_t pitchforks() const { return counts.at(0) / 2; }
  std::int64_t cherries() const { return (counts.at(0) + counts.at(1)) / 2; }

  friend bool operator==(const EdgeTypeVector& a, const EdgeTypeVector& b) {
    return a.counts == b.counts;
  }
};

// Rooted or unrooted binary phylogenetic tree with positive integer taxon
// labels, stored as an index-addressed node arena.
//
// Rooted trees keep the distinguished degree-one root at node 0 (its single
// child carries the root edge). Unrooted trees keep an arbitrary interior
// node of degree three at node 0; every other node links to its parent, so
// edges biject with node indices 1..node_count-1.
class PhyloTree {
 public:
  struct Node {
    std::int32_t parent = -1;
    std::array<std::int32_t, 3> children{-1, -1, -1};
    std::uint8_t n_children = 0;
    std::uint32_t label = 0;  // 0 for interior vertices

    bool is_leaf() const { return label != 0; }
  };

  static PhyloTree two_leaf();                 // rooted "(1,2);"
  static PhyloTree rooted_caterpillar(std::uint32_t n);
  static PhyloTree unrooted_star();            // "(1,2,3);"
  static PhyloTree from_newick(const std::string& text);

  RootKind root_kind() const { return root_kind_; }
  std::uint32_t leaf_count() const { return leaf_count_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  std::uint32_t edge_count() const { return node_count() - 1; }
  const Node& node(std::uint32_t i) const { return nodes_[i]; }

  // Edge i (0-based) is the edge above node i+1.
  EdgeRef edge_by_index(std::uint32_t i) const { return EdgeRef{i + 1}; }
  bool is_pendant(EdgeRef e) const;
  EdgeKind edge_kind(EdgeRef e) const {
    return is_pendant(e) ? EdgeKind::Pendant : EdgeKind::Internal;
  }
  std::vector<EdgeRef> edges() const;

  // Node indices of the leaves, in insertion order; pendant edges biject
  // with this list.
  const std::vector<std::uint32_t>& leaf_nodes() const { return leaf_nodes_; }
  EdgeRef pendant_edge(std::uint32_t i) const { return EdgeRef{leaf_nodes_[i]}; }
  EdgeRef pendant_edge_of_taxon(std::uint32_t label) const;

  bool has_label(std::uint32_t label) const { return labels_.count(label) != 0; }
  std::uint32_t max_label() const { return max_label_; }

  // Subdivides the edge and hangs a new pendant leaf off the midpoint.
  void attach_leaf(EdgeRef e, std::uint32_t label);

  // Inverse of attach_leaf: removes the leaf and suppresses the degree-two
  // vertex left behind. Returns a compacted tree.
  PhyloTree detached(std::uint32_t label) const;

  std::int64_t count_cherries() const;
  std::int64_t count_pitchforks() const;

  // Edge type per the E1..E6 partition (1-based). Pendant edges map to
  // 1..4, internal edges to 5..6.
  int classify_edge(EdgeRef e) const;
  EdgeTypeVector classify_pendant_edges() const;
  EdgeTypeVector classify_all_edges() const;

  PhyloTree unroot() const;

  // Canonical form: children ordered by smallest descendant taxon label.
  std::string to_newick() const;

  // Throws Error when a structural invariant is violated; test support.
  void validate() const;

 private:
  PhyloTree() = default;

  void check_classifiable() const;
  std::uint32_t new_node();
  void neighbors(std::uint32_t v, std::uint32_t* out, int* n_out) const;
  std::vector<std::uint32_t> leaves_below() const;

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> leaf_nodes_;
  std::unordered_set<std::uint32_t> labels_;
  RootKind root_kind_ = RootKind::Rooted;
  std::uint32_t leaf_count_ = 0;
  std::uint32_t max_label_ = 0;
};

}  // namespace urnphylo

#endif
