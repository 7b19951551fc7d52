#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hc/proof.hpp"

namespace hc {

// Dag-like derivability structure <V, {E_D^i}, E_A, r, l, L, P>.
//
// Deductive edges carry a color (0 on tree edges, fresh ordinals after
// collapses) and a dependency label; a missing label is the dynamically
// computed one (lambda).  Ancestor edges carry the relative address of their
// source from their target: the full color sequence of the deductive path,
// one color per edge.  Removed nodes and edges are tombstoned so ids stay
// stable across rewrites.
class DLDS {
 public:
  struct Node {
    FormulaPtr label;
    bool hyp_mark = false;
    bool collapsed = false;
  };
  struct Edge {
    NodeId src = -1;
    NodeId tgt = -1;
    int color = 0;
    std::optional<DepSet> dep;  // nullopt = lambda
  };
  struct AncEdge {
    NodeId src = -1;  // lower node
    NodeId tgt = -1;  // upper node
    std::vector<int> path;
  };

  Foundation foundation;
  NodeId root = -1;
  std::optional<NodeId> ground_node;

  // nodes
  NodeId add_node(FormulaPtr label, int level);
  bool node_alive(NodeId v) const { return alive_[v]; }
  int node_slots() const { return static_cast<int>(nodes_.size()); }
  const Node& node(NodeId v) const { return nodes_[v]; }
  Node& node(NodeId v) { return nodes_[v]; }
  int alive_node_count() const;
  void remove_node(NodeId v);  // v must have no incident alive edges

  // deductive edges
  int add_edge(NodeId src, NodeId tgt, int color, std::optional<DepSet> dep);
  bool edge_alive(int e) const { return edge_alive_[e]; }
  int edge_slots() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  Edge& edge(int e) { return edges_[e]; }
  void remove_edge(int e);
  void set_edge_source(int e, NodeId new_src);
  void set_edge_target(int e, NodeId new_tgt);
  const std::vector<int>& out_edges(NodeId v) const { return out_[v]; }
  const std::vector<int>& in_edges(NodeId v) const { return in_[v]; }
  int alive_edge_count() const;
  std::optional<int> find_edge(NodeId src, NodeId tgt) const;
  std::optional<int> out_edge_with_color(NodeId v, int color) const;

  // ancestor edges (identity includes the path; duplicates coalesce)
  const std::vector<AncEdge>& anc_edges() const { return anc_; }
  void add_anc_edge(NodeId src, NodeId tgt, std::vector<int> path);
  void remove_anc_edges_targeting(NodeId tgt);
  std::vector<AncEdge> anc_edges_targeting(NodeId tgt) const;
  bool is_anc_target(NodeId v) const;

  // levels: root is 0; fixed at construction and preserved by rewrites
  int level(NodeId v) const { return level_[v]; }
  int height() const;
  // left-to-right order of the alive nodes of one level
  const std::vector<NodeId>& nodes_at_level(int lev) const;
  int level_count() const { return static_cast<int>(level_nodes_.size()); }
  void drop_from_level_order(NodeId v);
  void set_level_row(int lev, std::vector<NodeId> row);

  // Alive nodes in level-descending order (tops first).
  std::vector<NodeId> topo_desc() const;

 private:
  std::vector<Node> nodes_;
  std::vector<bool> alive_;
  std::vector<Edge> edges_;
  std::vector<bool> edge_alive_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<AncEdge> anc_;
  std::vector<int> level_;
  std::vector<std::vector<NodeId>> level_nodes_;
};

// Builds the trivial DLDS of a decorated derivation: every deductive edge has
// color 0 and carries the source's dependency set; no ancestor edges.
DLDS to_dlds(const DGTD& g);

// Recomputes the level of v from scratch and checks all deductive paths from
// v to the root agree (throws when the dag is not leveled).
int level_of(const DLDS& d, NodeId v);

// Walks downward from `start` consuming one color per edge; returns the node
// reached when the address is exhausted, or nullopt when some step has no
// unique edge of the demanded color.
std::optional<NodeId> resolve_address(const DLDS& d, NodeId start,
                                      const std::vector<int>& addr);

struct GroundedDLDS {
  DLDS dlds;  // with ground_node set and the <r, ground> edge added
  NodeId ground = -1;
  DepSet final_dep;
};

// Adds the ground node below the root; the new edge carries the final
// dependency set (intro subtracts the antecedent, elim unions the premiss
// deps; lambda-labelled in-edges use the flow-computed value).
// Requires a valid DLDS (check_validity passes).
GroundedDLDS ground(const DLDS& d);

// Symbol-count size metric: nodes contribute 1 + 1 (id + label ordinal),
// deductive edges 2 + dep width (or 1 for lambda), ancestor edges 2 + |path|.
long long size_of(const DLDS& d);
long long size_of(const GroundedDLDS& g);

// Deterministic DOT rendering; byte-identical for equal inputs.
std::string export_dot(const DLDS& d);

}  // namespace hc
