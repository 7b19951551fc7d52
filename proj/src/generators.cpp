#include "hc/generators.hpp"

#include <algorithm>
#include <numeric>

namespace hc {

namespace {

FormulaPtr fib_atom(int i) { return Formula::atom("A" + std::to_string(i)); }

// F(k): derivation of Ak.  F(1) is the open hypothesis A1; F(2) eliminates
// A1>A2; F(k) eliminates A{k-1}>Ak, itself obtained from F(k-2) and the
// chain axiom A{k-2}>(A{k-1}>Ak).
NodeId build_fib(TreeDerivation& t, int k) {
  if (k == 1) return t.add_node(fib_atom(1));
  if (k == 2) {
    NodeId minor = t.add_node(fib_atom(1));
    NodeId major = t.add_node(Formula::imp(fib_atom(1), fib_atom(2)));
    NodeId conc = t.add_node(fib_atom(2));
    t.set_premisses(conc, {minor, major});
    return conc;
  }
  NodeId minor = build_fib(t, k - 1);
  NodeId sub_minor = build_fib(t, k - 2);
  NodeId axiom = t.add_node(
      Formula::imp(fib_atom(k - 2), Formula::imp(fib_atom(k - 1), fib_atom(k))));
  NodeId major = t.add_node(Formula::imp(fib_atom(k - 1), fib_atom(k)));
  t.set_premisses(major, {sub_minor, axiom});
  NodeId conc = t.add_node(fib_atom(k));
  t.set_premisses(conc, {minor, major});
  return conc;
}

}  // namespace

TreeDerivation gen_fibonacci_proof(int n) {
  if (n < 3) throw Error("gen_fibonacci_proof: n must be at least 3");
  TreeDerivation t;
  NodeId body = build_fib(t, n);
  NodeId intro = t.add_node(Formula::imp(fib_atom(1), fib_atom(n)));
  t.set_premisses(intro, {body});
  t.root = intro;
  for (NodeId v = 0; v < t.node_count(); ++v)
    if (t.is_leaf(v) && same_formula(t.label[v], fib_atom(1)))
      t.discharge[v] = intro;
  return t;
}

bool is_hamiltonian(const Digraph& g) {
  if (g.n < 1) throw Error("is_hamiltonian: empty graph");
  if (g.n == 1) return true;
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    bool path = true;
    for (int i = 0; i + 1 < g.n && path; ++i)
      if (!g.edges.count({perm[i], perm[i + 1]})) path = false;
    if (path) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

namespace {

struct NonHamBuilder {
  const Digraph& g;
  TreeDerivation t;
  FormulaPtr q = Formula::atom("q");

  FormulaPtr at(int pos, int vertex) {
    return Formula::atom("X" + std::to_string(pos) + "v" +
                         std::to_string(vertex));
  }
  FormulaPtr or_atom(int pos) {
    return Formula::atom("ORX" + std::to_string(pos));
  }
  // (X{k}v1>q) > ((X{k}v2>q) > ... > (ORX{k}>q))
  FormulaPtr or_chain(int pos) {
    FormulaPtr f = Formula::imp(or_atom(pos), q);
    for (int v = g.n; v >= 1; --v)
      f = Formula::imp(Formula::imp(at(pos, v), q), f);
    return f;
  }

  // Earliest conflict of the last prefix element with an earlier one;
  // adjacent non-edges take precedence (self-pairs are non-edges too).
  std::optional<int> conflict_with(const std::vector<int>& prefix) {
    int k = static_cast<int>(prefix.size());
    if (k >= 2) {
      auto pair = std::make_pair(prefix[k - 2], prefix[k - 1]);
      if (!g.edges.count(pair)) return k - 1;  // position k-1 conflicts with k
    }
    for (int i = 0; i + 1 < k; ++i)
      if (prefix[i] == prefix[k - 1]) return i + 1;
    return std::nullopt;
  }

  // Derives q under the case hypotheses X{1}v.. X{k}v for the prefix.
  NodeId derive_q(const std::vector<int>& prefix) {
    int k = static_cast<int>(prefix.size());
    if (auto kc = conflict_with(prefix)) {
      // hyp X{kc}a, axiom X{kc}a>(X{k}b>q), case hyp X{k}b
      FormulaPtr a = at(*kc, prefix[*kc - 1]);
      FormulaPtr b = at(k, prefix[k - 1]);
      NodeId early = t.add_node(a);
      NodeId axiom = t.add_node(Formula::imp(a, Formula::imp(b, q)));
      NodeId step = t.add_node(Formula::imp(b, q));
      t.set_premisses(step, {early, axiom});
      NodeId last = t.add_node(b);
      NodeId conc = t.add_node(q);
      t.set_premisses(conc, {last, step});
      return conc;
    }
    if (k == static_cast<int>(g.n))
      throw Error("gen_nonhamiltonian_proof: graph is Hamiltonian");
    // case split over the occupant of position k+1
    int pos = k + 1;
    std::vector<NodeId> intros;
    for (int v = 1; v <= g.n; ++v) {
      auto extended = prefix;
      extended.push_back(v);
      NodeId sub = derive_q(extended);
      NodeId intro = t.add_node(Formula::imp(at(pos, v), q));
      t.set_premisses(intro, {sub});
      // greedy discharge of every open occurrence of the case hypothesis
      discharge_open(sub, at(pos, v), intro);
      intros.push_back(intro);
    }
    NodeId chain = t.add_node(or_chain(pos));
    FormulaPtr remaining = or_chain(pos);
    for (int v = 1; v <= g.n; ++v) {
      remaining = remaining->succedent();
      NodeId next = t.add_node(remaining);
      t.set_premisses(next, {intros[v - 1], chain});
      chain = next;
    }
    NodeId or_hyp = t.add_node(or_atom(pos));
    NodeId conc = t.add_node(q);
    t.set_premisses(conc, {or_hyp, chain});
    return conc;
  }

  void discharge_open(NodeId root_of_sub, const FormulaPtr& alpha,
                      NodeId intro) {
    std::vector<NodeId> stack{root_of_sub};
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
};

}  // namespace

TreeDerivation gen_nonhamiltonian_proof(const Digraph& g) {
  if (g.n < 1) throw Error("gen_nonhamiltonian_proof: empty graph");
  for (const auto& [a, b] : g.edges)
    if (a == b || a < 1 || a > g.n || b < 1 || b > g.n)
      throw Error("gen_nonhamiltonian_proof: malformed edge set");
  if (is_hamiltonian(g))
    throw Error("gen_nonhamiltonian_proof: graph is Hamiltonian");
  NonHamBuilder builder{g};
  NodeId conc = builder.derive_q({});
  builder.t.root = conc;
  return builder.t;
}

}  // namespace hc
