// Shared fixtures and independent oracles for the test suites.
#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hc/dlds.hpp"
#include "hc/proof.hpp"

namespace hc::test {

inline FormulaPtr F(const std::string& s) { return parse_formula(s); }

// The worked example: deriving A1>A5 from A1>A2, A1>(A2>A3), A2>(A3>A4)
// and A3>(A4>A5), with the paper's 12-formula order.
struct WorkedExample {
  TreeDerivation tree;
  Foundation foundation;
  std::vector<FormulaPtr> premises;
};

inline Foundation worked_example_order() {
  return Foundation::with_order({
      F("A1"), F("A2"), F("A3"), F("A4"), F("A5"),
      F("A1>A2"), F("A2>A3"), F("A4>A5"), F("A1>A5"),
      F("A1>(A2>A3)"), F("A2>(A3>A4)"), F("A3>(A4>A5)"),
  });
}

// Builds the tree exactly as drawn: each elimination lists the minor premiss
// first; all five A1 leaves are discharged by the final intro.
inline WorkedExample worked_example() {
  WorkedExample w;
  TreeDerivation& t = w.tree;
  auto elim = [&](NodeId minor, NodeId major, const std::string& conc) {
    NodeId c = t.add_node(F(conc));
    t.set_premisses(c, {minor, major});
    return c;
  };
  auto leaf = [&](const std::string& s) { return t.add_node(F(s)); };

  // left A3 branch
  NodeId a2_1 = elim(leaf("A1"), leaf("A1>A2"), "A2");
  NodeId a23_1 = elim(leaf("A1"), leaf("A1>(A2>A3)"), "A2>A3");
  NodeId a3_1 = elim(a2_1, a23_1, "A3");
  // A3>A4 branch
  NodeId a2_2 = elim(leaf("A1"), leaf("A1>A2"), "A2");
  NodeId a34 = elim(a2_2, leaf("A2>(A3>A4)"), "A3>A4");
  NodeId a4 = elim(a3_1, a34, "A4");
  // right A3 branch
  NodeId a2_3 = elim(leaf("A1"), leaf("A1>A2"), "A2");
  NodeId a23_2 = elim(leaf("A1"), leaf("A1>(A2>A3)"), "A2>A3");
  NodeId a3_2 = elim(a2_3, a23_2, "A3");
  NodeId a45 = elim(a3_2, leaf("A3>(A4>A5)"), "A4>A5");
  NodeId a5 = elim(a4, a45, "A5");
  NodeId intro = t.add_node(F("A1>A5"));
  t.set_premisses(intro, {a5});
  t.root = intro;
  for (NodeId v = 0; v < t.node_count(); ++v)
    if (t.is_leaf(v) && t.label[v]->text() == "A1") t.discharge[v] = intro;

  w.foundation = worked_example_order();
  w.premises = {F("A1>A2"), F("A1>(A2>A3)"), F("A2>(A3>A4)"), F("A3>(A4>A5)")};
  return w;
}

// Independent dependency oracle over the raw tree semantics: a node depends
// on the labels of the leaves of its subtree whose discharging intro (if
// any) is not inside that subtree.
inline std::set<std::string> oracle_deps(const TreeDerivation& t, NodeId v) {
  std::set<NodeId> subtree;
  std::vector<NodeId> stack{v};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    subtree.insert(cur);
    for (NodeId p : t.premisses[cur]) stack.push_back(p);
  }
  std::set<std::string> deps;
  for (NodeId leafv : subtree) {
    if (!t.is_leaf(leafv)) continue;
    if (t.discharge[leafv] && subtree.count(*t.discharge[leafv])) continue;
    deps.insert(t.label[leafv]->text());
  }
  return deps;
}

// Random valid derivations built over a small atom pool, bushy enough that
// same-label same-level collisions (and hence every rule class) occur.
class RandomProofGen {
 public:
  explicit RandomProofGen(unsigned seed) : rng_(seed) {}

  TreeDerivation generate(int max_nodes) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      TreeDerivation t;
      int budget = max_nodes;
      NodeId root = build(t, 4 + pick(4), budget);
      if (root < 0) continue;
      t.root = root;
      if (t.node_count() < 3 || t.node_count() > max_nodes) continue;
      return greedify(t);
    }
    throw Error("random proof generation failed");
  }

 private:
  FormulaPtr atom() { return Formula::atom(names_[pick(names_.size())]); }

  FormulaPtr formula(int depth) {
    if (depth <= 0 || pick(2) == 0) return atom();
    return Formula::imp(formula(depth - 1), formula(depth - 1));
  }

  // returns a derivation of some formula; -1 when the budget is gone
  NodeId build(TreeDerivation& t, int depth, int& budget) {
    if (budget <= 0) return -1;
    int choice = depth <= 0 ? 0 : pick(6);
    if (choice == 0) {  // leaf
      budget -= 1;
      return t.add_node(formula(1));
    }
    if (choice <= 3) {  // elimination; the major is a leaf or a derived intro
      NodeId minor = build(t, depth - 1, budget);
      if (minor < 0) return -1;
      bool derived_major = pick(2) == 0 && budget > 4;
      if (derived_major) {
        NodeId sub = build(t, depth - 1, budget);
        if (sub < 0) return -1;
        budget -= 2;
        if (budget < 0) return -1;
        NodeId major =
            t.add_node(Formula::imp(t.label[minor], t.label[sub]));
        t.set_premisses(major, {sub});
        discharge_open(t, sub, t.label[minor], major);
        NodeId conc = t.add_node(t.label[sub]);
        t.set_premisses(conc, {minor, major});
        return conc;
      }
      budget -= 2;
      if (budget < 0) return -1;
      FormulaPtr target = formula(1);
      NodeId major = t.add_node(Formula::imp(t.label[minor], target));
      NodeId conc = t.add_node(target);
      t.set_premisses(conc, {minor, major});
      return conc;
    }
    // introduction over a recursive premiss
    NodeId prem = build(t, depth - 1, budget);
    if (prem < 0) return -1;
    budget -= 1;
    if (budget < 0) return -1;
    FormulaPtr alpha = pick(2) == 0 ? atom() : formula(1);
    NodeId conc = t.add_node(Formula::imp(alpha, t.label[prem]));
    t.set_premisses(conc, {prem});
    discharge_open(t, prem, alpha, conc);
    return conc;
  }

  static void discharge_open(TreeDerivation& t, NodeId sub,
                             const FormulaPtr& alpha, NodeId intro) {
    std::vector<NodeId> stack{sub};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      if (t.is_leaf(v)) {
        if (same_formula(t.label[v], alpha) && !t.discharge[v])
          t.discharge[v] = intro;
        continue;
      }
      for (NodeId p : t.premisses[v]) stack.push_back(p);
    }
  }

  int pick(std::size_t n) { return static_cast<int>(rng_() % n); }

  std::mt19937 rng_;
  std::vector<std::string> names_ = {"a", "b", "c"};
};

}  // namespace hc::test
