#include <doctest.h>

#include <map>
#include <set>

#include "hc/compress.hpp"
#include "hc/flow.hpp"
#include "hc/generators.hpp"
#include "support.hpp"

using namespace hc;
using hc::test::F;

namespace {

DLDS worked_dlds() {
  auto w = hc::test::worked_example();
  return to_dlds(decorate(w.tree, w.foundation));
}

NodeId nth_at_level(const DLDS& d, int lev, const std::string& label, int n) {
  int seen = 0;
  for (NodeId v : d.nodes_at_level(lev)) {
    if (d.node(v).label && d.node(v).label->text() == label) {
      if (seen == n) return v;
      seen++;
    }
  }
  REQUIRE(false);
  return -1;
}

std::string dep_str(const DLDS& d, NodeId src, NodeId tgt) {
  auto e = d.find_edge(src, tgt);
  REQUIRE(e);
  return d.edge(*e).dep ? d.edge(*e).dep->to_string() : "lambda";
}

int color_of(const DLDS& d, NodeId src, NodeId tgt) {
  auto e = d.find_edge(src, tgt);
  REQUIRE(e);
  return d.edge(*e).color;
}

using AncSet = std::set<std::tuple<std::string, std::string, std::vector<int>>>;

AncSet anc_set(const DLDS& d) {
  AncSet out;
  for (const auto& a : d.anc_edges())
    out.insert({d.node(a.src).label->text(), d.node(a.tgt).label->text(),
                a.path});
  return out;
}

}  // namespace

TEST_CASE("classify_pair on the walkthrough states") {
  DLDS d = worked_dlds();
  NodeId u = nth_at_level(d, 3, "A3", 0);
  NodeId v = nth_at_level(d, 3, "A3", 1);
  CHECK(*classify_pair(d, u, v) == RuleId::R0EE);
  CHECK_FALSE(classify_pair(d, u, nth_at_level(d, 3, "A3>A4", 0)).has_value());
}

TEST_CASE("two fresh sibling hypotheses collapse by R0HH") {
  TreeDerivation t2;
  NodeId x1 = t2.add_node(F("A"));
  NodeId y1 = t2.add_node(F("A>B"));
  NodeId b = t2.add_node(F("B"));
  t2.set_premisses(b, {x1, y1});
  NodeId x2 = t2.add_node(F("A"));
  NodeId y2 = t2.add_node(F("A>(B>C)"));
  NodeId bc2 = t2.add_node(F("B>C"));
  t2.set_premisses(bc2, {x2, y2});
  NodeId c2 = t2.add_node(F("C"));
  t2.set_premisses(c2, {b, bc2});
  t2.root = c2;
  DLDS d2 = to_dlds(decorate(t2));
  NodeId u = nth_at_level(d2, 2, "A", 0);
  NodeId v = nth_at_level(d2, 2, "A", 1);
  CHECK(*classify_pair(d2, u, v) == RuleId::R0HH);

  apply_rule(d2, Match{RuleId::R0HH, u, v, 2});
  CHECK(d2.node(u).hyp_mark);
  CHECK_FALSE(d2.node_alive(v));
  int outs = 0;
  for (int e : d2.out_edges(u))
    if (d2.edge_alive(e)) {
      CHECK(d2.edge(e).color == 0);
      CHECK(d2.edge(e).dep->to_string() ==
            DepSet::singleton(d2.foundation, *F("A")).to_string());
      outs++;
    }
  CHECK(outs == 2);
  CHECK(d2.anc_edges().empty());
  CHECK(check_validity(d2).ok());
}

TEST_CASE("worked example: R0EE step reproduces the figure") {
  DLDS d = worked_dlds();
  auto m = find_redex(d, 3, Phase::MUE);
  REQUIRE(m);
  CHECK(m->rule == RuleId::R0EE);
  NodeId u = m->u, v = m->v;
  CHECK(d.node(u).label->text() == "A3");
  CHECK(d.node(v).label->text() == "A3");

  apply_rule(d, *m);
  CHECK_FALSE(d.node_alive(v));
  CHECK(check_validity(d).ok());

  int in = 0;
  for (int e : d.in_edges(u))
    if (d.edge_alive(e)) in++;
  CHECK(in == 4);
  NodeId a4 = nth_at_level(d, 2, "A4", 0);
  NodeId a45 = nth_at_level(d, 2, "A4>A5", 0);
  CHECK(color_of(d, u, a4) == 1);
  CHECK(color_of(d, u, a45) == 2);
  CHECK(dep_str(d, u, a4) == "100001000100");
  CHECK(dep_str(d, u, a45) == "100001000100");

  AncSet expect{
      {"A4", "A2", {0, 1}},
      {"A4", "A2>A3", {0, 1}},
      {"A4>A5", "A2", {0, 2}},
      {"A4>A5", "A2>A3", {0, 2}},
  };
  CHECK(anc_set(d) == expect);
}

TEST_CASE("worked example: the MUE pass replays the figures") {
  DLDS d = worked_dlds();
  auto m1 = find_redex(d, 3, Phase::MUE);
  REQUIRE(m1);
  apply_rule(d, *m1);

  auto m2 = find_redex(d, 4, Phase::MUE);
  REQUIRE(m2);
  CHECK(m2->rule == RuleId::Rv2EE);
  CHECK(d.node(m2->u).label->text() == "A2");
  apply_rule(d, *m2);
  CHECK(check_validity(d).ok());

  NodeId a2 = m2->u;
  NodeId a3 = nth_at_level(d, 3, "A3", 0);
  NodeId a34 = nth_at_level(d, 3, "A3>A4", 0);
  CHECK(color_of(d, a2, a3) == 1);
  CHECK(color_of(d, a2, a34) == 2);
  CHECK(dep_str(d, a2, a3) == "100001000000");
  CHECK(dep_str(d, a2, a34) == "100001000000");
  {
    AncSet anc = anc_set(d);
    CHECK(anc.count({"A4", "A1", {0, 1, 1}}));
    CHECK(anc.count({"A4", "A1>A2", {0, 1, 1}}));
    CHECK(anc.count({"A4", "A1", {0, 2, 0}}));
    CHECK(anc.count({"A4", "A1>A2", {0, 2, 0}}));
    CHECK(anc.count({"A4", "A2>A3", {0, 1}}));
  }

  auto m3 = find_redex(d, 4, Phase::MUE);
  REQUIRE(m3);
  CHECK(m3->rule == RuleId::Re3XE);
  apply_rule(d, *m3);
  CHECK(check_validity(d).ok());
  CHECK(dep_str(d, a2, a3) == "lambda");
  CHECK(color_of(d, a2, a3) == 1);
  CHECK(dep_str(d, a2, a34) == "100001000000");
  {
    AncSet anc = anc_set(d);
    CHECK(anc.count({"A4>A5", "A1", {0, 1, 2}}));
    CHECK(anc.count({"A4>A5", "A1>A2", {0, 1, 2}}));
  }

  auto m4 = find_redex(d, 4, Phase::MUE);
  REQUIRE(m4);
  CHECK(m4->rule == RuleId::Re2EE);
  apply_rule(d, *m4);
  CHECK(check_validity(d).ok());
  NodeId a23 = m4->u;
  CHECK(dep_str(d, a23, a3) == "lambda");
  CHECK(color_of(d, a23, a3) == 0);
  {
    AncSet anc = anc_set(d);
    CHECK(anc.count({"A4", "A1", {0, 0, 1}}));
    CHECK(anc.count({"A4", "A1>A2>A3", {0, 0, 1}}));
    CHECK(anc.count({"A4>A5", "A1", {0, 0, 2}}));
    CHECK(anc.count({"A4>A5", "A1>A2>A3", {0, 0, 2}}));
  }
  CHECK_FALSE(find_redex(d, 4, Phase::MUE).has_value());
}

TEST_CASE("worked example: full compression matches the final figure") {
  DLDS d0 = worked_dlds();
  std::vector<TraceEntry> trace;
  DLDS d = compress(d0, false, &trace);
  REQUIRE(check_validity(d).ok());

  std::map<std::pair<int, std::string>, int> input_pairs, output_nodes;
  for (int lev = 0; lev <= d0.height(); ++lev)
    for (NodeId v : d0.nodes_at_level(lev))
      input_pairs[{lev, d0.node(v).label->text()}]++;
  for (int lev = 0; lev <= d.height(); ++lev)
    for (NodeId v : d.nodes_at_level(lev))
      output_nodes[{lev, d.node(v).label->text()}]++;
  CHECK(output_nodes.size() == input_pairs.size());
  for (const auto& [key, count] : output_nodes) {
    CHECK(count == 1);
    CHECK(input_pairs.count(key));
  }
  CHECK(d.alive_node_count() == 13);

  AncSet expect{
      {"A4", "A2", {1, 1}},
      {"A4", "A2", {2, 0}},
      {"A4>A5", "A2", {1, 2}},
      {"A4", "A2>A3", {0, 1}},
      {"A4>A5", "A2>A3", {0, 2}},
  };
  CHECK(anc_set(d) == expect);

  NodeId a2 = nth_at_level(d, 4, "A2", 0);
  NodeId a23 = nth_at_level(d, 4, "A2>A3", 0);
  NodeId a3 = nth_at_level(d, 3, "A3", 0);
  NodeId a34 = nth_at_level(d, 3, "A3>A4", 0);
  CHECK(dep_str(d, a2, a3) == "lambda");
  CHECK(color_of(d, a2, a3) == 1);
  CHECK(dep_str(d, a2, a34) == "100001000000");
  CHECK(color_of(d, a2, a34) == 2);
  CHECK(dep_str(d, a23, a3) == "lambda");
  CHECK(color_of(d, a23, a3) == 0);

  NodeId a1 = nth_at_level(d, 5, "A1", 0);
  CHECK(d.node(a1).hyp_mark);
  CHECK(dep_str(d, a1, a2) == "100000000000");
  CHECK(color_of(d, a1, a2) == 0);
  CHECK(dep_str(d, a1, a23) == "100000000000");
  CHECK(color_of(d, a1, a23) == 0);

  GroundedDLDS grounded = ground(d);
  CHECK(grounded.final_dep.to_string() == "000001000111");

  DLDS replay = worked_dlds();
  for (const auto& t : trace)
    apply_rule(replay, Match{t.rule, t.u, t.v, t.level});
  CHECK(anc_set(replay) == anc_set(d));
  CHECK(size_of(replay) == size_of(d));
}

TEST_CASE("single-branch derivation with no duplicates is untouched") {
  TreeDerivation t;
  NodeId a = t.add_node(F("A"));
  NodeId ab = t.add_node(F("A>B"));
  NodeId b = t.add_node(F("B"));
  t.set_premisses(b, {a, ab});
  t.root = b;
  DLDS d = to_dlds(decorate(t));
  DLDS c = compress(d);
  CHECK(c.alive_node_count() == d.alive_node_count());
  CHECK(c.alive_edge_count() == d.alive_edge_count());
  CHECK(c.anc_edges().empty());
}

TEST_CASE("fib(8): node count equals per-level distinct labels") {
  TreeDerivation t = gen_fibonacci_proof(8);
  DLDS d0 = to_dlds(decorate(greedify(t)));
  DLDS d = compress(d0);
  REQUIRE(check_validity(d).ok());
  std::set<std::pair<int, std::string>> distinct;
  for (int lev = 0; lev <= d0.height(); ++lev)
    for (NodeId v : d0.nodes_at_level(lev))
      distinct.insert({lev, d0.node(v).label->text()});
  CHECK(d.alive_node_count() == static_cast<int>(distinct.size()));
}

TEST_CASE("single-step soundness on random derivations") {
  hc::test::RandomProofGen gen(404);
  int applications = 0;
  for (int i = 0; i < 60; ++i) {
    TreeDerivation t = gen.generate(60);
    DLDS d = to_dlds(decorate(t));
    for (Phase phase : {Phase::MUE, Phase::MDE}) {
      for (int lev = 1; lev <= d.height(); ++lev) {
        while (auto m = find_redex(d, lev, phase)) {
          apply_rule(d, *m);
          auto report = check_validity(d);
          if (!report.ok()) {
            CAPTURE(rule_name(m->rule));
            CAPTURE(report.summary());
            REQUIRE(report.ok());
          }
          applications++;
        }
      }
    }
  }
  CHECK(applications > 50);
}

TEST_CASE("termination measure and idempotence") {
  hc::test::RandomProofGen gen(505);
  for (int i = 0; i < 20; ++i) {
    TreeDerivation t = gen.generate(50);
    DLDS d = to_dlds(decorate(t));
    std::vector<TraceEntry> trace;
    DLDS c = compress(d, false, &trace);
    CHECK(static_cast<int>(trace.size()) ==
          d.alive_node_count() - c.alive_node_count());
    for (int lev = 0; lev <= c.height(); ++lev) {
      std::set<std::string> labels;
      for (NodeId v : c.nodes_at_level(lev))
        CHECK(labels.insert(c.node(v).label->text()).second);
    }
    DLDS again = compress(c);
    CHECK(again.alive_node_count() == c.alive_node_count());
    CHECK(again.alive_edge_count() == c.alive_edge_count());
    CHECK(anc_set(again) == anc_set(c));
  }
}

TEST_CASE("node count decreases per step; the result is smaller") {
  // Intermediate sizes can grow while ancestor edges multiply; the node
  // count is the termination measure and the final size must shrink.
  DLDS d = worked_dlds();
  long long original_size = size_of(d);
  int nodes = d.alive_node_count();
  for (Phase phase : {Phase::MUE, Phase::MDE}) {
    for (int lev = 1; lev <= d.height(); ++lev) {
      while (auto m = find_redex(d, lev, phase)) {
        apply_rule(d, *m);
        CHECK(d.alive_node_count() == nodes - 1);
        nodes--;
      }
    }
  }
  CHECK(size_of(d) < original_size);
}

TEST_CASE("mue-only pass: duplicates and ancestor targets are tops") {
  DLDS d = compress(worked_dlds(), true);
  REQUIRE(check_validity(d).ok());
  for (int lev = 0; lev <= d.height(); ++lev) {
    std::map<std::string, std::vector<NodeId>> groups;
    for (NodeId v : d.nodes_at_level(lev))
      groups[d.node(v).label->text()].push_back(v);
    for (const auto& [label, nodes] : groups) {
      if (nodes.size() < 2) continue;
      for (NodeId v : nodes) {
        int in = 0;
        for (int e : d.in_edges(v))
          if (d.edge_alive(e)) in++;
        CHECK(in == 0);
      }
    }
  }
  for (const auto& a : d.anc_edges()) {
    int in = 0;
    for (int e : d.in_edges(a.tgt))
      if (d.edge_alive(e)) in++;
    CHECK(in == 0);
  }
}
