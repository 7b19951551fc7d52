#include "hc/flow.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace hc {

namespace {

bool dep_matches(const DepSet& dep, const std::optional<DepSet>& label) {
  return !label || *label == dep;  // lambda agrees with anything
}

std::vector<int> tail_of(const std::vector<int>& path) {
  return {path.begin() + 1, path.end()};
}

struct Propagation {
  std::map<NodeId, FlowEntries> node_entries;
  std::map<int, FlowEntries> edge_entries;
  std::vector<Diagnostic> diagnostics;

  void diag(std::string clause, NodeId node, int color, std::string msg) {
    diagnostics.push_back(
        {std::move(clause), node, color, std::move(msg)});
  }
};

FlowEntries hypothesis_entries(const DLDS& d, NodeId p) {
  FlowEntries out;
  auto anc = d.anc_edges_targeting(p);
  DepSet self = DepSet::singleton(d.foundation, *d.node(p).label);
  if (anc.empty()) {
    out.insert({self, {}});
  } else {
    for (const auto& a : anc) out.insert({self, a.path});
  }
  return out;
}

// Pairs minor/major readings: routes must agree after the pop done at the
// edges; a spent route pairs with anything and adopts the partner's route.
void pair_elim(const std::vector<FlowEntry>& minor, std::vector<char>& minor_used,
               const std::vector<FlowEntry>& major, std::vector<char>& major_used,
               const DepSet& union_ignore, FlowEntries& raw) {
  (void)union_ignore;
  std::unordered_map<std::string, std::vector<std::size_t>> major_by_path;
  std::vector<std::size_t> major_eps;
  auto key = [](const std::vector<int>& p) {
    std::string k;
    for (int c : p) {
      k += std::to_string(c);
      k += ';';
    }
    return k;
  };
  for (std::size_t j = 0; j < major.size(); ++j) {
    if (major[j].path.empty())
      major_eps.push_back(j);
    else
      major_by_path[key(major[j].path)].push_back(j);
  }
  auto emit = [&](std::size_t i, std::size_t j) {
    raw.insert({minor[i].dep.unioned(major[j].dep),
                minor[i].path.empty() ? major[j].path : minor[i].path});
    minor_used[i] = 1;
    major_used[j] = 1;
  };
  for (std::size_t i = 0; i < minor.size(); ++i) {
    if (minor[i].path.empty()) {
      for (std::size_t j = 0; j < major.size(); ++j) emit(i, j);
    } else {
      auto it = major_by_path.find(key(minor[i].path));
      if (it != major_by_path.end())
        for (std::size_t j : it->second) emit(i, j);
      for (std::size_t j : major_eps) emit(i, j);
    }
  }
}

// Shared top-down sweep.  `subset` (when non-null) restricts the walk to an
// upward-closed node set; diagnostics and consumption checks run only in
// strict mode (check_validity / verify_derivation).
Propagation propagate(const DLDS& d, const std::vector<NodeId>& order,
                      const std::vector<char>* subset, bool strict) {
  Propagation pr;
  for (NodeId p : order) {
    if (d.ground_node && p == *d.ground_node) continue;

    std::vector<int> ins;
    for (int e : d.in_edges(p))
      if (d.edge_alive(e)) ins.push_back(e);

    FlowEntries raw;
    const auto anc = d.anc_edges_targeting(p);
    if (ins.empty()) {
      raw = hypothesis_entries(d, p);
    } else {
      // materialize per-edge entries for consumption accounting
      std::vector<std::vector<FlowEntry>> ee(ins.size());
      std::vector<std::vector<char>> used(ins.size());
      for (std::size_t i = 0; i < ins.size(); ++i) {
        auto it = pr.edge_entries.find(ins[i]);
        if (it != pr.edge_entries.end())
          ee[i].assign(it->second.begin(), it->second.end());
        used[i].assign(ee[i].size(), 0);
      }
      const FormulaPtr& lp = d.node(p).label;
      // An uncollapsed node is one rule application: in-degree 1 is an
      // intro, 2 an elimination.  A collapsed node superposes several
      // applications; every shape-compatible reading is considered and the
      // route pairing keeps the instances apart.
      bool superposed = d.node(p).collapsed;
      if (superposed || ins.size() == 1) {
        // intro readings
        if (!lp->is_atom()) {
          for (std::size_t i = 0; i < ins.size(); ++i) {
            if (!same_formula(d.node(d.edge(ins[i]).src).label,
                              lp->succedent()))
              continue;
            for (std::size_t k = 0; k < ee[i].size(); ++k) {
              raw.insert({subtract_formula(d.foundation, ee[i][k].dep,
                                           *lp->antecedent()),
                          ee[i][k].path});
              used[i][k] = 1;
            }
          }
        }
      }
      if (superposed || ins.size() == 2) {
        // elimination readings over every minor/major shaped pair
        for (std::size_t i = 0; i < ins.size(); ++i) {
          const FormulaPtr& li = d.node(d.edge(ins[i]).src).label;
          for (std::size_t j = 0; j < ins.size(); ++j) {
            if (i == j) continue;
            const FormulaPtr& lj = d.node(d.edge(ins[j]).src).label;
            if (lj->is_atom() || !same_formula(lj->antecedent(), li) ||
                !same_formula(lj->succedent(), lp))
              continue;
            pair_elim(ee[i], used[i], ee[j], used[j], DepSet(), raw);
          }
        }
      }
      if (d.node(p).hyp_mark) {
        for (const auto& en : hypothesis_entries(d, p)) raw.insert(en);
      }
      if (strict) {
        for (std::size_t i = 0; i < ins.size(); ++i) {
          for (std::size_t k = 0; k < ee[i].size(); ++k) {
            if (used[i][k]) continue;
            std::string clause = d.node(p).hyp_mark ? "hypothesis-with-premisses"
                                 : ins.size() == 1  ? "wrong-intro-application"
                                                    : "wrong-elim-application";
            pr.diag(clause, p, d.edge(ins[i]).color,
                    "premiss reading from node " +
                        std::to_string(d.edge(ins[i]).src) +
                        " is not consumed by any rule shape");
          }
        }
      }
      // ancestor edges re-route spent readings at their interior targets
      if (!anc.empty()) {
        FlowEntries rerouted;
        for (const auto& en : raw) {
          if (en.path.empty()) {
            for (const auto& a : anc) rerouted.insert({en.dep, a.path});
          } else {
            rerouted.insert(en);
          }
        }
        raw = std::move(rerouted);
      }
      // A routed reading exists only where an out-edge accepts it (the ~
      // compatibility from the Flow definition); superposed nodes produce
      // shape-coincidence readings that simply do not form.
      if (p != d.root) {
        FlowEntries kept;
        for (const auto& en : raw) {
          if (en.path.empty()) {
            kept.insert(en);
            continue;
          }
          for (int e : d.out_edges(p)) {
            if (!d.edge_alive(e)) continue;
            if (d.edge(e).color == en.path.front() &&
                dep_matches(en.dep, d.edge(e).dep)) {
              kept.insert(en);
              break;
            }
          }
        }
        raw = std::move(kept);
      }
    }

    if (raw.empty() && strict)
      pr.diag("flow-undefined", p, -1,
              "no reading could be computed at node " + std::to_string(p));
    pr.node_entries[p] = raw;

    if (p == d.root) continue;  // the conclusion edge is handled by callers
    // route readings into the out-edges
    std::vector<int> outs;
    for (int e : d.out_edges(p)) {
      if (!d.edge_alive(e)) continue;
      if (subset && d.edge(e).tgt != d.root && !(*subset)[d.edge(e).tgt])
        continue;
      outs.push_back(e);
    }
    std::vector<const FlowEntry*> order_entries;
    for (const auto& en : raw) order_entries.push_back(&en);
    std::vector<int> hits(order_entries.size(), 0);
    std::vector<int> lambda_hits(order_entries.size(), 0);
    for (int e : outs) {
      const auto& ed = d.edge(e);
      FlowEntries routed;
      for (std::size_t k = 0; k < order_entries.size(); ++k) {
        const FlowEntry& en = *order_entries[k];
        if (en.path.empty()) {
          if (dep_matches(en.dep, ed.dep)) {
            routed.insert({en.dep, {}});
            ++hits[k];
            if (!ed.dep) ++lambda_hits[k];
          }
        } else if (en.path.front() == ed.color &&
                   dep_matches(en.dep, ed.dep)) {
          routed.insert({en.dep, tail_of(en.path)});
          ++hits[k];
        }
      }
      pr.edge_entries[e] = std::move(routed);
    }
    if (strict && !outs.empty()) {
      for (std::size_t k = 0; k < order_entries.size(); ++k) {
        if (hits[k] == 0)
          pr.diag("invalid-color-path", p,
                  order_entries[k]->path.empty()
                      ? -1
                      : order_entries[k]->path.front(),
                  "reading at node " + std::to_string(p) +
                      " routes into no out-edge");
        if (lambda_hits[k] >= 2)
          pr.diag("multiple-lambda-out", p, -1,
                  "spent reading duplicates into several lambda out-edges");
      }
    }
  }
  return pr;
}

std::vector<NodeId> level_desc_order(const DLDS& d,
                                     const std::vector<char>* subset) {
  std::vector<NodeId> order = d.topo_desc();
  if (subset) {
    order.erase(std::remove_if(order.begin(), order.end(),
                               [&](NodeId v) { return !(*subset)[v]; }),
                order.end());
  }
  return order;
}

}  // namespace

std::vector<NodeId> pre_set(const DLDS& d, NodeId w) {
  std::vector<char> seen(d.node_slots(), 0);
  std::vector<NodeId> stack{w}, out;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (int e : d.in_edges(v)) {
      if (!d.edge_alive(e)) continue;
      NodeId s = d.edge(e).src;
      if (!seen[s]) {
        seen[s] = 1;
        out.push_back(s);
        stack.push_back(s);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> top_set(const DLDS& d, NodeId w) {
  std::vector<NodeId> out;
  for (NodeId v : pre_set(d, w)) {
    bool has_in = false;
    for (int e : d.in_edges(v))
      if (d.edge_alive(e)) has_in = true;
    if (!has_in || d.node(v).hyp_mark) out.push_back(v);
  }
  return out;
}

FlowMap flow(const DLDS& d, NodeId w) {
  if (w < 0 || w >= d.node_slots() || !d.node_alive(w))
    throw Error("flow: unknown node");
  std::vector<char> subset(d.node_slots(), 0);
  subset[w] = 1;
  auto pre = pre_set(d, w);
  for (NodeId v : pre) subset[v] = 1;
  auto order = level_desc_order(d, &subset);
  Propagation pr = propagate(d, order, &subset, false);
  for (NodeId v : pre)
    if (pr.node_entries[v].empty())
      throw Error("flow: undefined at node " + std::to_string(v));
  FlowMap fm;
  fm.target = w;
  for (NodeId v : pre) fm.entries[v] = pr.node_entries[v];
  return fm;
}

bool ValidityReport::ok() const {
  for (const auto& c : conditions)
    if (!c.pass) return false;
  return true;
}

const ValidityCondition& ValidityReport::condition(
    const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw Error("unknown validity condition: " + name);
}

std::string ValidityReport::summary() const {
  std::ostringstream os;
  for (const auto& c : conditions) {
    if (c.pass) continue;
    os << c.name << " failed";
    if (!c.witnesses.empty()) os << " (" << c.witnesses.front() << ")";
    os << "; ";
  }
  std::string s = os.str();
  return s.empty() ? "all conditions pass" : s;
}

ValidityReport check_validity(const DLDS& d) {
  ValidityReport report;
  auto add = [&](std::string name) -> ValidityCondition& {
    report.conditions.push_back({std::move(name), true, {}});
    return report.conditions.back();
  };
  auto fail = [&](ValidityCondition& c, std::string witness) {
    c.pass = false;
    c.witnesses.push_back(std::move(witness));
  };

  // ColorAcyclicity: per-color depth-first cycle search
  {
    auto& c = add("ColorAcyclicity");
    std::map<int, std::vector<int>> by_color;
    for (int e = 0; e < d.edge_slots(); ++e)
      if (d.edge_alive(e)) by_color[d.edge(e).color].push_back(e);
    for (auto& [color, edges] : by_color) {
      std::map<NodeId, std::vector<NodeId>> adj;
      for (int e : edges) adj[d.edge(e).src].push_back(d.edge(e).tgt);
      std::map<NodeId, int> state;  // 0 new, 1 open, 2 done
      std::vector<std::pair<NodeId, std::size_t>> stack;
      for (const auto& [start, _] : adj) {
        if (state[start]) continue;
        stack.push_back({start, 0});
        state[start] = 1;
        while (!stack.empty()) {
          auto& [v, idx] = stack.back();
          auto it = adj.find(v);
          if (it == adj.end() || idx >= it->second.size()) {
            state[v] = 2;
            stack.pop_back();
            continue;
          }
          NodeId next = it->second[idx++];
          if (state[next] == 1) {
            fail(c, "color " + std::to_string(color) + " cycle through node " +
                        std::to_string(next));
            stack.clear();
            break;
          }
          if (state[next] == 0) {
            state[next] = 1;
            stack.push_back({next, 0});
          }
        }
      }
    }
  }

  // LeveledColored: every deductive path from a node to the root has one
  // length; recomputed from scratch
  bool leveled = true;
  {
    auto& c = add("LeveledColored");
    std::vector<int> depth(d.node_slots(), -1);
    std::vector<NodeId> queue{d.root};
    depth[d.root] = 0;
    std::size_t qi = 0;
    while (qi < queue.size()) {
      NodeId v = queue[qi++];
      for (int e : d.in_edges(v)) {
        if (!d.edge_alive(e)) continue;
        NodeId s = d.edge(e).src;
        if (depth[s] == -1) {
          depth[s] = depth[v] + 1;
          queue.push_back(s);
        } else if (depth[s] != depth[v] + 1) {
          fail(c, "node " + std::to_string(s) + " sits at depths " +
                      std::to_string(depth[s]) + " and " +
                      std::to_string(depth[v] + 1));
        }
      }
    }
    for (NodeId v = 0; v < d.node_slots(); ++v) {
      if (!d.node_alive(v)) continue;
      if (d.ground_node && v == *d.ground_node) continue;
      if (depth[v] == -1)
        fail(c, "node " + std::to_string(v) + " cannot reach the root");
    }
    leveled = c.pass;
  }

  // AncestorEdges: source strictly below target
  {
    auto& c = add("AncestorEdges");
    for (const auto& a : d.anc_edges())
      if (!(d.level(a.src) < d.level(a.tgt)))
        fail(c, "ancestor edge " + std::to_string(a.src) + "->" +
                    std::to_string(a.tgt) + " does not go upward");
  }

  // AncestorBackwayInformation: the path resolves target -> source
  {
    auto& c = add("AncestorBackwayInformation");
    for (const auto& a : d.anc_edges()) {
      auto res = resolve_address(d, a.tgt, a.path);
      if (!res || *res != a.src)
        fail(c, "path on " + std::to_string(a.src) + "->" +
                    std::to_string(a.tgt) + " resolves to " +
                    (res ? std::to_string(*res) : std::string("nothing")));
    }
  }

  // Simplicity: at most one deductive edge per ordered node pair
  {
    auto& c = add("Simplicity");
    std::set<std::pair<NodeId, NodeId>> seen;
    for (int e = 0; e < d.edge_slots(); ++e) {
      if (!d.edge_alive(e)) continue;
      auto key = std::make_pair(d.edge(e).src, d.edge(e).tgt);
      if (!seen.insert(key).second)
        fail(c, "parallel deductive edges " + std::to_string(key.first) +
                    "->" + std::to_string(key.second));
    }
  }

  // AncestorSimplicity: no duplicated (source, target, path) triple
  {
    auto& c = add("AncestorSimplicity");
    std::set<std::tuple<NodeId, NodeId, std::vector<int>>> seen;
    for (const auto& a : d.anc_edges())
      if (!seen.insert({a.src, a.tgt, a.path}).second)
        fail(c, "duplicate ancestor edge " + std::to_string(a.src) + "->" +
                    std::to_string(a.tgt));
  }

  // NonNestedAncestorEdges: no interior node of a resolved path is the
  // source of another ancestor edge
  {
    auto& c = add("NonNestedAncestorEdges");
    std::set<NodeId> sources;
    for (const auto& a : d.anc_edges()) sources.insert(a.src);
    for (const auto& a : d.anc_edges()) {
      NodeId cur = a.tgt;
      for (std::size_t i = 0; i + 1 < a.path.size(); ++i) {
        auto e = d.out_edge_with_color(cur, a.path[i]);
        if (!e) break;  // backway condition reports this
        cur = d.edge(*e).tgt;
        if (sources.count(cur))
          fail(c, "node " + std::to_string(cur) +
                      " inside the path of ancestor edge " +
                      std::to_string(a.src) + "->" + std::to_string(a.tgt) +
                      " is an ancestor-edge source");
      }
    }
  }

  // CorrectRuleApp: the flow is defined everywhere and forces the labels
  {
    auto& c = add("CorrectRuleApp");
    if (!leveled) {
      fail(c, "skipped: dag is not leveled");
    } else {
      auto order = level_desc_order(d, nullptr);
      Propagation pr = propagate(d, order, nullptr, true);
      for (const auto& diag : pr.diagnostics)
        fail(c, diag.clause + " at node " + std::to_string(diag.node) + ": " +
                    diag.message);
      for (int e = 0; e < d.edge_slots(); ++e) {
        if (!d.edge_alive(e)) continue;
        const auto& ed = d.edge(e);
        if (d.ground_node && ed.tgt == *d.ground_node) continue;
        const auto& received = pr.edge_entries[e];
        if (received.empty()) {
          fail(c, "edge " + std::to_string(ed.src) + "->" +
                      std::to_string(ed.tgt) + " receives no flow");
        } else if (received.size() == 1) {
          if (!ed.dep || !(*ed.dep == received.begin()->dep))
            fail(c, "edge " + std::to_string(ed.src) + "->" +
                        std::to_string(ed.tgt) +
                        " must carry the unique flow dependency " +
                        received.begin()->dep.to_string());
        } else {
          if (ed.dep)
            fail(c, "edge " + std::to_string(ed.src) + "->" +
                        std::to_string(ed.tgt) +
                        " carries several readings and must be lambda");
        }
      }
    }
  }

  return report;
}

std::string VerifyResult::diagnostics_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& dg : diagnostics) {
    nlohmann::json item;
    item["clause"] = dg.clause;
    item["node"] = dg.node;
    if (dg.color >= 0) item["color"] = dg.color;
    item["message"] = dg.message;
    arr.push_back(item);
  }
  return arr.dump();
}

VerifyResult verify_derivation(const GroundedDLDS& g,
                               const std::vector<FormulaPtr>& delta) {
  const DLDS& d = g.dlds;
  VerifyResult result;
  result.final_dep = DepSet::zeros(d.foundation.size());

  DepSet expected = DepSet::zeros(d.foundation.size());
  for (const auto& f : delta) {
    auto idx = d.foundation.find(*f);
    if (!idx) {
      result.diagnostics.push_back(
          {"unknown-assumption", -1, -1,
           "assumption " + f->text() + " is not in the foundation"});
      return result;
    }
    expected.set(*idx);
  }

  // rooted-leveled structural precheck
  {
    std::vector<int> depth(d.node_slots(), -1);
    std::vector<NodeId> queue{d.root};
    depth[d.root] = 0;
    std::size_t qi = 0;
    bool ok = true;
    while (qi < queue.size()) {
      NodeId v = queue[qi++];
      for (int e : d.in_edges(v)) {
        if (!d.edge_alive(e)) continue;
        NodeId s = d.edge(e).src;
        if (depth[s] == -1) {
          depth[s] = depth[v] + 1;
          queue.push_back(s);
        } else if (depth[s] != depth[v] + 1) {
          ok = false;
        }
      }
    }
    for (NodeId v = 0; v < d.node_slots(); ++v)
      if (d.node_alive(v) && depth[v] == -1 &&
          !(d.ground_node && v == *d.ground_node))
        ok = false;
    if (!ok) {
      result.diagnostics.push_back(
          {"not-leveled", -1, -1,
           "the deductive graph is not a leveled rooted dag"});
      return result;
    }
  }

  auto order = level_desc_order(d, nullptr);
  Propagation pr = propagate(d, order, nullptr, true);
  result.diagnostics = pr.diagnostics;

  const FlowEntries& at_root = pr.node_entries[d.root];
  if (at_root.empty()) {
    result.diagnostics.push_back(
        {"flow-undefined", d.root, -1, "no reading reaches the conclusion"});
  }
  bool final_ok = !at_root.empty();
  for (const auto& en : at_root) {
    result.final_dep = result.final_dep.unioned(en.dep);
    if (!en.path.empty()) {
      final_ok = false;
      result.diagnostics.push_back(
          {"invalid-color-path", d.root, en.path.front(),
           "conclusion reading still carries an unconsumed route"});
    } else if (!(en.dep == expected)) {
      final_ok = false;
      result.diagnostics.push_back(
          {"final-dep-mismatch", d.root, 0,
           "conclusion depends on " + en.dep.to_string() + " but delta is " +
               expected.to_string()});
    }
  }
  result.valid = final_ok && result.diagnostics.empty();
  return result;
}

}  // namespace hc
