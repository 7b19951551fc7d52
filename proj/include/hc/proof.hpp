#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hc/foundation.hpp"
#include "hc/formula.hpp"

namespace hc {

using NodeId = int;

// Tree-like Natural Deduction derivation in minimal implicational logic.
// Deductive edges run premiss -> conclusion; for eliminations the minor
// premiss is listed before the major.  Discharge edges connect a leaf to the
// introduction that discharges it.
struct TreeDerivation {
  std::vector<FormulaPtr> label;            // node id -> formula
  std::vector<NodeId> parent;               // -1 for root
  std::vector<std::vector<NodeId>> premisses;  // ordered, minor first
  std::vector<std::optional<NodeId>> discharge;  // leaf -> intro node
  NodeId root = -1;

  int node_count() const { return static_cast<int>(label.size()); }
  bool is_leaf(NodeId v) const { return premisses[v].empty(); }

  NodeId add_node(FormulaPtr f);
  void set_premisses(NodeId conclusion, std::vector<NodeId> prems);

  // All formulas occurring in the derivation (deduplicated, stable order).
  std::vector<FormulaPtr> formulas() const;
  // Open assumptions: leaves with no discharge edge.
  std::vector<FormulaPtr> open_assumptions() const;
  // Distance to the root along deductive edges; root is 0.
  std::vector<int> levels() const;
  int height() const;
};

struct TreeViolation {
  int condition = 0;  // items 1..5 of the tree-like derivation definition
  std::vector<NodeId> nodes;
  std::string message;
};

struct TreeReport {
  std::vector<TreeViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the five conditions of the tree-like derivation definition in time
// linear in the number of edges.  Empty report iff valid.
TreeReport validate_tree(const TreeDerivation& t);

// Extends every introduction's discharge set to all open occurrences of its
// antecedent above its premiss, processing branches from the highest level
// downward.  Shape, labels, conclusion and open assumptions are unchanged.
TreeDerivation greedify(const TreeDerivation& t);

bool is_greedy(const TreeDerivation& t);

// Decorated greedy tree-like derivation: discharge edges are dropped and the
// out-edge of every node carries the node's dependency set.
struct DGTD {
  TreeDerivation tree;  // discharge edges cleared
  Foundation foundation;
  std::vector<DepSet> dep;  // node id -> dependency set of its occurrence
};

// Top-down adequate labeling: leaves get singletons, eliminations union the
// premiss deps, greedy intros subtract the antecedent bit.
DGTD decorate(const TreeDerivation& greedy_tree, const Foundation& f);
DGTD decorate(const TreeDerivation& greedy_tree);  // default-ordered foundation

}  // namespace hc
