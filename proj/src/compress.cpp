// Rule catalogue and driver for horizontal compression.
//
// Every rule is one surgery parameterized by the kinds of the two nodes
// (hypothesis / intro / elim / already-collapsed) and by whether they share
// their child:
//   - the right node's premiss edges retarget to the left node;
//   - with distinct children, interior out-edges take fresh colors and the
//     right node's edge moves over (hypothesis edges keep color 0 unless the
//     survivor already carries colored out-edges);
//   - with a shared child the two out-edges merge into one whose label is
//     dynamically computed (lambda), except for pure hypothesis merges;
//   - ancestor edges targeting an interior side move up to its premisses
//     with the in-edge color and the new out-color prefixed; ancestor edges
//     targeting a hypothesis side either follow the surviving node (route
//     unchanged up to the merged color) or, when both sides are top nodes,
//     move down to the child with the spent head popped (MDE);
//   - a fresh interior side that was not yet an ancestor-edge target gets
//     new ancestor edges recording the reading of its premisses.
// Each rewritten address is round-tripped through resolve_address before the
// application commits.

#include "hc/compress.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include <json.hpp>

namespace hc {

namespace {

constexpr std::array<const char*, 38> kRuleNames = {
    "R0HH",  "R0HI",  "R0HE",  "R0IH",  "R0IE",  "R0II",  "R0EH",  "R0EI",
    "R0EE",  "R1XH",  "R1XI",  "R1XE",  "Rv2EI", "Re2EI", "Rv2EE", "Re2EE",
    "Rv2EH", "Re2EH", "Rv2II", "Re2II", "Rv2IE", "Re2IE", "Rv2IH", "Re2IH",
    "Rv2HI", "Re2HI", "Rv2HE", "Re2HE", "Rv2HH", "Re2HH", "Rv2XH", "Re2XH",
    "Rv3XH", "Re3XH", "Rv3XE", "Re3XE", "Rv3XI", "Re3XI",
};

enum class Kind { H, I, E, X };

char kind_letter(Kind k) {
  switch (k) {
    case Kind::H: return 'H';
    case Kind::I: return 'I';
    case Kind::E: return 'E';
    case Kind::X: return 'X';
  }
  return '?';
}

int in_degree(const DLDS& d, NodeId v) {
  int n = 0;
  for (int e : d.in_edges(v))
    if (d.edge_alive(e)) n++;
  return n;
}

int out_degree(const DLDS& d, NodeId v) {
  int n = 0;
  for (int e : d.out_edges(v))
    if (d.edge_alive(e)) n++;
  return n;
}

std::optional<Kind> kind_of(const DLDS& d, NodeId v) {
  if (d.node(v).collapsed) return Kind::X;
  int in = in_degree(d, v);
  if (in == 0) return Kind::H;
  if (in == 1) return Kind::I;
  if (in == 2) return Kind::E;
  return std::nullopt;
}

bool pure_top(const DLDS& d, NodeId v) { return in_degree(d, v) == 0; }

int next_color(const DLDS& d, NodeId v) {
  int mx = 0;
  for (int e : d.out_edges(v))
    if (d.edge_alive(e)) mx = std::max(mx, d.edge(e).color);
  return mx + 1;
}

std::vector<int> prefixed(std::initializer_list<int> head,
                          const std::vector<int>& old_tail) {
  std::vector<int> out(head);
  out.insert(out.end(), old_tail.begin() + 1, old_tail.end());
  return out;
}

}  // namespace

const char* rule_name(RuleId r) { return kRuleNames[static_cast<int>(r)]; }

std::optional<RuleId> rule_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (name == kRuleNames[i]) return static_cast<RuleId>(i);
  return std::nullopt;
}

bool is_mde(RuleId r) {
  return r == RuleId::Rv2HH || r == RuleId::Re2HH || r == RuleId::Rv2XH ||
         r == RuleId::Re2XH;
}

std::optional<RuleId> classify_pair(const DLDS& d, NodeId u, NodeId v) {
  if (u == v || !d.node_alive(u) || !d.node_alive(v)) return std::nullopt;
  if (d.level(u) != d.level(v)) return std::nullopt;
  if (!same_formula(d.node(u).label, d.node(v).label)) return std::nullopt;
  if (d.node(v).collapsed) return std::nullopt;  // only the leftmost may be
  auto ku = kind_of(d, u), kv = kind_of(d, v);
  if (!ku || !kv || *kv == Kind::X) return std::nullopt;
  if (out_degree(d, v) != 1) return std::nullopt;  // root never collapses

  bool tu = d.is_anc_target(u), tv = d.is_anc_target(v);
  // shared child?
  int ev = -1;
  for (int e : d.out_edges(v))
    if (d.edge_alive(e)) ev = e;
  bool shared = d.find_edge(u, d.edge(ev).tgt).has_value();
  char variant = shared ? 'e' : 'v';

  std::string name;
  if (*ku == Kind::X) {
    if (*kv == Kind::H && tv && pure_top(d, u)) {
      name = std::string("R") + variant + "2XH";  // MDE: collapsed top + hyp
    } else if (!tv) {
      name = std::string("R1X") + kind_letter(*kv);
    } else {
      name = std::string("R") + variant + "3X" + kind_letter(*kv);
    }
  } else if (!tu && !tv) {
    name = std::string("R0") + kind_letter(*ku) + kind_letter(*kv);
  } else {
    name = std::string("R") + variant + "2" + kind_letter(*ku) +
           kind_letter(*kv);
  }
  return rule_from_name(name);
}

std::optional<Match> find_redex(const DLDS& d, int lev, Phase phase) {
  const auto& row = d.nodes_at_level(lev);
  for (std::size_t i = 0; i < row.size(); ++i) {
    for (std::size_t j = i + 1; j < row.size(); ++j) {
      auto rule = classify_pair(d, row[i], row[j]);
      if (!rule) continue;
      bool mde = is_mde(*rule);
      if ((phase == Phase::MDE) != mde) continue;
      return Match{*rule, row[i], row[j], lev};
    }
  }
  return std::nullopt;
}

void apply_rule(DLDS& d, const Match& m) {
  auto rule = classify_pair(d, m.u, m.v);
  if (!rule || *rule != m.rule)
    throw Error(std::string("apply_rule: stale match for ") +
                rule_name(m.rule));
  NodeId u = m.u, v = m.v;
  Kind ku = *kind_of(d, u), kv = *kind_of(d, v);

  int e_v = -1;
  for (int e : d.out_edges(v))
    if (d.edge_alive(e)) e_v = e;
  if (d.edge(e_v).color != 0)
    throw Error("apply_rule: right node's out-edge is not color 0");
  NodeId x_v = d.edge(e_v).tgt;

  std::vector<int> u_prem_edges, v_prem_edges;
  for (int e : d.in_edges(u))
    if (d.edge_alive(e)) u_prem_edges.push_back(e);
  for (int e : d.in_edges(v))
    if (d.edge_alive(e)) v_prem_edges.push_back(e);
  auto anc_u = d.anc_edges_targeting(u);
  auto anc_v = d.anc_edges_targeting(v);

  // moving hypothesis tops: both sides are top nodes, addresses go below
  bool mde_case = (kv == Kind::H) && (ku == Kind::H ||
                                      (ku == Kind::X && pure_top(d, u)));

  auto check_path = [&](NodeId src, NodeId tgt, const std::vector<int>& path) {
    auto res = resolve_address(d, tgt, path);
    if (!res || *res != src) {
      std::ostringstream os;
      os << "apply_rule(" << rule_name(m.rule) << "): rewritten address [";
      for (std::size_t i = 0; i < path.size(); ++i)
        os << (i ? "," : "") << path[i];
      os << "] from node " << tgt << " does not resolve to node " << src;
      throw Error(os.str());
    }
  };
  struct PendingAnc {
    NodeId src, tgt;
    std::vector<int> path;
  };
  std::vector<PendingAnc> pending;

  int shared_edge = d.find_edge(u, x_v) ? *d.find_edge(u, x_v) : -1;
  if (shared_edge >= 0) {
    if (kv != Kind::H && anc_v.empty())
      throw Error(std::string("apply_rule(") + rule_name(m.rule) +
                  "): interior side shares its child but carries no "
                  "ancestor edge");
    // edge collapse: merge the two parallel out-edges
    int c0 = d.edge(shared_edge).color;
    if (!mde_case) d.edge(shared_edge).dep.reset();  // lambda
    d.remove_edge(e_v);

    if (ku == Kind::I || ku == Kind::E) {
      for (const auto& a : anc_u)
        for (int pe : u_prem_edges)
          pending.push_back(
              {a.src, d.edge(pe).src, prefixed({0, c0}, a.path)});
      d.remove_anc_edges_targeting(u);
    } else if (mde_case && ku == Kind::H && !anc_u.empty()) {
      // both sides are tops: addresses must live below the merge point
      for (const auto& a : anc_u)
        pending.push_back({a.src, x_v, {a.path.begin() + 1, a.path.end()}});
      d.remove_anc_edges_targeting(u);
    }
    // ku == H in a mixed pair: the ancestor edges stay on u, resolvable
    // through the merged color-0 edge.  ku == X: handled in earlier steps.
    if (kv == Kind::H) {
      for (const auto& a : anc_v) {
        if (mde_case)
          pending.push_back({a.src, x_v, {a.path.begin() + 1, a.path.end()}});
        else
          pending.push_back({a.src, u, prefixed({c0}, a.path)});
      }
    } else {
      for (const auto& a : anc_v)
        for (int pe : v_prem_edges)
          pending.push_back(
              {a.src, d.edge(pe).src, prefixed({0, c0}, a.path)});
    }
    d.remove_anc_edges_targeting(v);
  } else {
    // vertex collapse: distinct children
    int n1 = -1;
    NodeId x_u = -1;
    if (ku != Kind::X) {
      int e_u = -1;
      for (int e : d.out_edges(u))
        if (d.edge_alive(e)) e_u = e;
      x_u = d.edge(e_u).tgt;
      if (ku != Kind::H) {
        n1 = next_color(d, u);
        d.edge(e_u).color = n1;
      }
    }
    int n2;
    if (kv == Kind::H)
      n2 = (ku == Kind::X && !pure_top(d, u)) ? next_color(d, u) : 0;
    else
      n2 = std::max(next_color(d, u), n1 + 1);
    d.set_edge_source(e_v, u);
    d.edge(e_v).color = n2;

    if (!anc_u.empty()) {
      if (mde_case) {
        for (const auto& a : anc_u)
          pending.push_back({a.src, x_u, {a.path.begin() + 1, a.path.end()}});
        d.remove_anc_edges_targeting(u);
      } else if (ku == Kind::I || ku == Kind::E) {
        for (const auto& a : anc_u)
          for (int pe : u_prem_edges)
            pending.push_back(
                {a.src, d.edge(pe).src, prefixed({0, n1}, a.path)});
        d.remove_anc_edges_targeting(u);
      }
      // ku == H in a mixed pair, or ku == X: edges stay put
    }
    if (!anc_v.empty()) {
      for (const auto& a : anc_v) {
        if (kv == Kind::H) {
          if (mde_case)
            pending.push_back(
                {a.src, x_v, {a.path.begin() + 1, a.path.end()}});
          else
            pending.push_back({a.src, u, prefixed({n2}, a.path)});
        } else {
          for (int pe : v_prem_edges)
            pending.push_back(
                {a.src, d.edge(pe).src, prefixed({0, n2}, a.path)});
        }
      }
      d.remove_anc_edges_targeting(v);
    }
    // fresh interior sides that carried no ancestor edges get new ones
    bool type0 = ku != Kind::X && anc_u.empty() && anc_v.empty();
    auto create_for = [&](Kind k, const std::vector<int>& prem_edges,
                          NodeId x, int n, bool had_anc) {
      if (had_anc || (k != Kind::I && k != Kind::E)) return;
      NodeId anchor = x;
      std::vector<int> path{0, n};
      if (!type0 && ku != Kind::X) {
        // deeper anchor, one step below the child, per the type-2 figures
        int cont = -1;
        for (int e : d.out_edges(x))
          if (d.edge_alive(e)) cont = e;
        if (cont >= 0 && out_degree(d, x) == 1) {
          anchor = d.edge(cont).tgt;
          path.push_back(d.edge(cont).color);
        }
      }
      for (int pe : prem_edges) pending.push_back({anchor, d.edge(pe).src, path});
    };
    create_for(ku, u_prem_edges, x_u, n1, !anc_u.empty());
    create_for(kv, v_prem_edges, x_v, n2, !anc_v.empty());
  }

  for (int pe : v_prem_edges) d.set_edge_target(pe, u);
  d.remove_node(v);

  for (const auto& p : pending) {
    check_path(p.src, p.tgt, p.path);
    d.add_anc_edge(p.src, p.tgt, p.path);
  }
  if (ku == Kind::H || kv == Kind::H) d.node(u).hyp_mark = true;
  d.node(u).collapsed = true;
}

std::string trace_to_jsonl(const std::vector<TraceEntry>& trace) {
  std::ostringstream os;
  for (const auto& t : trace) {
    nlohmann::json j;
    j["step"] = t.step;
    j["rule"] = rule_name(t.rule);
    j["u"] = t.u;
    j["v"] = t.v;
    j["level"] = t.level;
    os << j.dump() << "\n";
  }
  return os.str();
}

DLDS compress(const DLDS& input, bool mue_only,
              std::vector<TraceEntry>* trace) {
  DLDS d = input;
  int step = 0;
  auto run_phase = [&](Phase phase) {
    for (int lev = 1; lev <= d.height(); ++lev) {
      while (auto m = find_redex(d, lev, phase)) {
        apply_rule(d, *m);
        if (trace) trace->push_back({step, m->rule, m->u, m->v, m->level});
        ++step;
        if (step > input.alive_node_count() + 8)
          throw Error("compress: exceeded the termination bound");
      }
    }
  };
  run_phase(Phase::MUE);
  if (!mue_only) {
    run_phase(Phase::MDE);
    for (int lev = 0; lev <= d.height(); ++lev) {
      const auto& row = d.nodes_at_level(lev);
      for (std::size_t i = 0; i < row.size(); ++i)
        for (std::size_t j = i + 1; j < row.size(); ++j)
          if (same_formula(d.node(row[i]).label, d.node(row[j]).label))
            throw Error("compress: duplicate label survived at level " +
                        std::to_string(lev));
    }
  }
  return d;
}

}  // namespace hc
