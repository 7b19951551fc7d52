#include <doctest.h>

#include "hc/dlds.hpp"
#include "hc/flow.hpp"
#include "support.hpp"

using namespace hc;
using hc::test::F;

TEST_CASE("worked example tree validates") {
  auto w = hc::test::worked_example();
  CHECK(w.tree.node_count() == 24);
  CHECK(validate_tree(w.tree).ok());
  CHECK(w.tree.root == 23);
  CHECK(w.tree.label[w.tree.root]->text() == "A1>A5");
  int leaves = 0;
  for (NodeId v = 0; v < w.tree.node_count(); ++v)
    if (w.tree.is_leaf(v)) leaves++;
  CHECK(leaves == 12);
}

TEST_CASE("single node is a derivation of A from A") {
  TreeDerivation t;
  t.root = t.add_node(F("A"));
  CHECK(validate_tree(t).ok());
}

TEST_CASE("broken elimination is reported as condition 4") {
  TreeDerivation t;
  NodeId minor = t.add_node(F("A"));
  NodeId major = t.add_node(F("B"));  // should be A>C
  NodeId conc = t.add_node(F("C"));
  t.set_premisses(conc, {minor, major});
  t.root = conc;
  auto report = validate_tree(t);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations[0].condition == 4);
}

TEST_CASE("greedify leaves the worked example unchanged") {
  auto w = hc::test::worked_example();
  TreeDerivation g = greedify(w.tree);
  CHECK(g.node_count() == w.tree.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v)
    CHECK(g.discharge[v] == w.tree.discharge[v]);
  CHECK(is_greedy(w.tree));
}

TEST_CASE("greedify extends partial discharges; oracle agrees") {
  auto w = hc::test::worked_example();
  // drop two of the five A1 discharges
  TreeDerivation partial = w.tree;
  int dropped = 0;
  for (NodeId v = 0; v < partial.node_count() && dropped < 2; ++v)
    if (partial.is_leaf(v) && partial.label[v]->text() == "A1" &&
        partial.discharge[v]) {
      partial.discharge[v].reset();
      dropped++;
    }
  CHECK_FALSE(is_greedy(partial));
  TreeDerivation g = greedify(partial);
  int discharged = 0;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.is_leaf(v) && g.discharge[v]) discharged++;
  CHECK(discharged == 5);
  // conclusion deps no longer contain A1
  auto deps = hc::test::oracle_deps(g, g.root);
  CHECK(deps.count("A1") == 0);
  CHECK(deps ==
        hc::test::oracle_deps(w.tree, w.tree.root));
}

TEST_CASE("greedify is idempotent and preserves shape") {
  hc::test::RandomProofGen gen(101);
  for (int i = 0; i < 40; ++i) {
    TreeDerivation t = gen.generate(40);
    TreeDerivation g1 = greedify(t);
    TreeDerivation g2 = greedify(g1);
    REQUIRE(g1.node_count() == g2.node_count());
    for (NodeId v = 0; v < g1.node_count(); ++v) {
      CHECK(same_formula(g1.label[v], g2.label[v]));
      CHECK(g1.discharge[v] == g2.discharge[v]);
      CHECK(g1.premisses[v] == g2.premisses[v]);
    }
    CHECK(hc::test::oracle_deps(t, t.root) ==
          hc::test::oracle_deps(g1, g1.root));
  }
}

TEST_CASE("decorate reproduces the corrected worked-example labels") {
  auto w = hc::test::worked_example();
  DGTD g = decorate(w.tree, w.foundation);
  // leaf A1 carries its singleton
  for (NodeId v = 0; v < g.tree.node_count(); ++v) {
    if (!g.tree.is_leaf(v)) continue;
    if (g.tree.label[v]->text() == "A1")
      CHECK(g.dep[v].to_string() == "100000000000");
  }
  // the A5 node and the conclusion: the paper's corrected linked figure
  // prints 100001000111 and 000001000111 (its earlier figure drops bit 10)
  NodeId a5 = -1;
  for (NodeId v = 0; v < g.tree.node_count(); ++v)
    if (g.tree.label[v]->text() == "A5") a5 = v;
  REQUIRE(a5 >= 0);
  CHECK(g.dep[a5].to_string() == "100001000111");
  CHECK(g.dep[g.tree.root].to_string() == "000001000111");
}

TEST_CASE("one node derivation decorates vacuously") {
  TreeDerivation t;
  t.root = t.add_node(F("A"));
  DGTD g = decorate(t);
  CHECK(g.foundation.size() == 1);
  CHECK(g.dep[t.root].to_string() == "1");
}

TEST_CASE("decorate agrees with the brute-force oracle") {
  hc::test::RandomProofGen gen(202);
  int trees = 0;
  while (trees < 200) {
    TreeDerivation t = gen.generate(40);
    DGTD g = decorate(t);
    for (NodeId v = 0; v < t.node_count(); ++v) {
      auto expect = hc::test::oracle_deps(t, v);
      std::set<std::string> got;
      for (const auto& f : bits_to_set(g.foundation, g.dep[v]))
        got.insert(f->text());
      REQUIRE(got == expect);
    }
    trees++;
  }
}

TEST_CASE("to_dlds of the worked example: 24 nodes, 23 edges, color 0") {
  auto w = hc::test::worked_example();
  DLDS d = to_dlds(decorate(w.tree, w.foundation));
  CHECK(d.alive_node_count() == 24);
  CHECK(d.alive_edge_count() == 23);
  for (int e = 0; e < d.edge_slots(); ++e)
    if (d.edge_alive(e)) CHECK(d.edge(e).color == 0);
  CHECK(d.anc_edges().empty());
  CHECK(check_validity(d).ok());
}

TEST_CASE("single node DGTD maps to a single node DLDS") {
  TreeDerivation t;
  t.root = t.add_node(F("A"));
  DLDS d = to_dlds(decorate(t));
  CHECK(d.alive_node_count() == 1);
  CHECK(d.alive_edge_count() == 0);
  CHECK(check_validity(d).ok());
}

TEST_CASE("to_dlds of random DGTDs passes check_validity with singleton flow") {
  hc::test::RandomProofGen gen(303);
  for (int i = 0; i < 25; ++i) {
    TreeDerivation t = gen.generate(40);
    DLDS d = to_dlds(decorate(t));
    REQUIRE(check_validity(d).ok());
    FlowMap fm = flow(d, d.root);
    for (const auto& [node, entries] : fm.entries) {
      CHECK(entries.size() == 1);
      CHECK(entries.begin()->path.empty());
    }
  }
}
