#include "hc/proof.hpp"

#include <algorithm>
#include <set>

namespace hc {

NodeId TreeDerivation::add_node(FormulaPtr f) {
  NodeId id = node_count();
  label.push_back(std::move(f));
  parent.push_back(-1);
  premisses.emplace_back();
  discharge.emplace_back();
  return id;
}

void TreeDerivation::set_premisses(NodeId conclusion, std::vector<NodeId> prems) {
  for (NodeId p : prems) parent[p] = conclusion;
  premisses[conclusion] = std::move(prems);
}

std::vector<FormulaPtr> TreeDerivation::formulas() const {
  std::vector<FormulaPtr> out;
  std::set<std::string> seen;
  for (const auto& f : label)
    if (seen.insert(f->text()).second) out.push_back(f);
  return out;
}

std::vector<FormulaPtr> TreeDerivation::open_assumptions() const {
  std::vector<FormulaPtr> out;
  std::set<std::string> seen;
  for (NodeId v = 0; v < node_count(); ++v)
    if (is_leaf(v) && !discharge[v].has_value() &&
        seen.insert(label[v]->text()).second)
      out.push_back(label[v]);
  return out;
}

std::vector<int> TreeDerivation::levels() const {
  std::vector<int> lev(node_count(), -1);
  // parents before children: walk from the root
  std::vector<NodeId> stack{root};
  lev[root] = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId p : premisses[v]) {
      lev[p] = lev[v] + 1;
      stack.push_back(p);
    }
  }
  return lev;
}

int TreeDerivation::height() const {
  auto lev = levels();
  return *std::max_element(lev.begin(), lev.end());
}

TreeReport validate_tree(const TreeDerivation& t) {
  TreeReport report;
  auto flag = [&](int cond, std::vector<NodeId> nodes, std::string msg) {
    report.violations.push_back({cond, std::move(nodes), std::move(msg)});
  };
  int n = t.node_count();
  if (n == 0 || t.root < 0 || t.root >= n) {
    flag(0, {}, "missing root");
    return report;
  }
  if (t.parent[t.root] != -1)
    flag(0, {t.root}, "root has an outgoing deductive edge");
  // reachability + tree shape
  std::vector<bool> reached(n, false);
  std::vector<NodeId> stack{t.root};
  reached[t.root] = true;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (NodeId p : t.premisses[v]) {
      if (p < 0 || p >= n || t.parent[p] != v) {
        flag(0, {v, p}, "inconsistent premiss/parent links");
        continue;
      }
      if (reached[p]) {
        flag(0, {p}, "node reached twice; not a tree");
        continue;
      }
      reached[p] = true;
      stack.push_back(p);
    }
  }
  for (NodeId v = 0; v < n; ++v)
    if (!reached[v]) flag(0, {v}, "node disconnected from root");
  if (!report.ok()) return report;

  for (NodeId v = 0; v < n; ++v) {
    int in = static_cast<int>(t.premisses[v].size());
    if (in > 2) {
      flag(1, {v}, "deductive in-degree exceeds 2");
      continue;
    }
    if (in == 1) {
      NodeId w = t.premisses[v][0];
      if (t.label[v]->is_atom() ||
          !same_formula(t.label[v]->succedent(), t.label[w])) {
        flag(2, {v, w}, "intro conclusion is not <antecedent> > <premiss>");
      }
    }
    if (in == 2) {
      NodeId minor = t.premisses[v][0], major = t.premisses[v][1];
      const auto& mf = t.label[major];
      if (mf->is_atom() || !same_formula(mf->antecedent(), t.label[minor]) ||
          !same_formula(mf->succedent(), t.label[v])) {
        flag(4, {v, minor, major},
             "elimination shape broken: major must be minor > conclusion");
      }
    }
  }
  for (NodeId d = 0; d < n; ++d) {
    if (!t.discharge[d].has_value()) continue;
    NodeId v = *t.discharge[d];
    if (!t.is_leaf(d)) flag(3, {d}, "discharge source is not a leaf");
    if (t.premisses[v].size() != 1)
      flag(2, {v}, "discharge target is not an introduction");
    else {
      if (t.label[v]->is_atom() ||
          !same_formula(t.label[v]->antecedent(), t.label[d]))
        flag(2, {v, d}, "discharged formula is not the intro antecedent");
    }
    // d must lie on the deductive path into v
    NodeId cur = d;
    bool on_path = false;
    while (cur != -1) {
      if (cur == v) {
        on_path = true;
        break;
      }
      cur = t.parent[cur];
    }
    if (!on_path) flag(3, {d, v}, "discharge source not above its intro");
  }
  return report;
}

namespace {

// Leaves in the subtree of v, in premiss order.
void collect_leaves(const TreeDerivation& t, NodeId v, std::vector<NodeId>& out) {
  if (t.is_leaf(v)) {
    out.push_back(v);
    return;
  }
  for (NodeId p : t.premisses[v]) collect_leaves(t, p, out);
}

}  // namespace

TreeDerivation greedify(const TreeDerivation& t) {
  TreeReport r = validate_tree(t);
  if (!r.ok()) throw Error("greedify: input is not a valid tree derivation");
  TreeDerivation out = t;
  auto lev = out.levels();
  // intros from the highest branch level downward, ties left to right
  std::vector<NodeId> intros;
  for (NodeId v = 0; v < out.node_count(); ++v)
    if (out.premisses[v].size() == 1) intros.push_back(v);
  std::stable_sort(intros.begin(), intros.end(),
                   [&](NodeId a, NodeId b) { return lev[a] > lev[b]; });
  for (NodeId v : intros) {
    const FormulaPtr& alpha = out.label[v]->antecedent();
    std::vector<NodeId> leaves;
    collect_leaves(out, out.premisses[v][0], leaves);
    for (NodeId d : leaves) {
      if (!same_formula(out.label[d], alpha)) continue;
      if (!out.discharge[d].has_value()) out.discharge[d] = v;
    }
  }
  return out;
}

bool is_greedy(const TreeDerivation& t) {
  for (NodeId v = 0; v < t.node_count(); ++v) {
    if (t.premisses[v].size() != 1) continue;
    const FormulaPtr& alpha = t.label[v]->antecedent();
    std::vector<NodeId> leaves;
    collect_leaves(t, t.premisses[v][0], leaves);
    for (NodeId d : leaves)
      if (same_formula(t.label[d], alpha) && !t.discharge[d].has_value())
        return false;
  }
  return true;
}

DGTD decorate(const TreeDerivation& greedy_tree, const Foundation& f) {
  TreeReport r = validate_tree(greedy_tree);
  if (!r.ok()) throw Error("decorate: input is not a valid tree derivation");
  if (!is_greedy(greedy_tree)) throw Error("decorate: input is not greedy");
  // Only formulas that can carry a dependency bit need an ordinal: leaf
  // labels.  Interior formulas may be absent (the worked example's order is).
  for (NodeId v = 0; v < greedy_tree.node_count(); ++v)
    if (greedy_tree.is_leaf(v) && !f.contains(*greedy_tree.label[v]))
      throw Error("decorate: leaf label outside foundation: " +
                  greedy_tree.label[v]->text());

  DGTD g;
  g.tree = greedy_tree;
  g.foundation = f;
  g.dep.assign(greedy_tree.node_count(), DepSet::zeros(f.size()));

  // children before parents
  std::vector<NodeId> order;
  std::vector<NodeId> stack{greedy_tree.root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (NodeId p : greedy_tree.premisses[v]) stack.push_back(p);
  }
  std::reverse(order.begin(), order.end());
  for (NodeId v : order) {
    const auto& prems = greedy_tree.premisses[v];
    if (prems.empty()) {
      g.dep[v] = DepSet::singleton(f, *greedy_tree.label[v]);
    } else if (prems.size() == 1) {
      g.dep[v] = subtract_formula(f, g.dep[prems[0]],
                                  *greedy_tree.label[v]->antecedent());
    } else {
      g.dep[v] = g.dep[prems[0]].unioned(g.dep[prems[1]]);
    }
  }
  // discharge edges are subsumed by the labeling
  for (auto& d : g.tree.discharge) d.reset();
  return g;
}

DGTD decorate(const TreeDerivation& greedy_tree) {
  return decorate(greedy_tree,
                  Foundation::from_formulas(greedy_tree.formulas()));
}

}  // namespace hc
