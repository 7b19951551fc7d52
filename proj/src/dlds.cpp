#include "hc/dlds.hpp"

#include <algorithm>
#include <sstream>

#include "hc/flow.hpp"

namespace hc {

NodeId DLDS::add_node(FormulaPtr label, int level) {
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{std::move(label)});
  alive_.push_back(true);
  out_.emplace_back();
  in_.emplace_back();
  level_.push_back(level);
  if (level >= static_cast<int>(level_nodes_.size()))
    level_nodes_.resize(level + 1);
  level_nodes_[level].push_back(id);
  return id;
}

int DLDS::alive_node_count() const {
  return static_cast<int>(std::count(alive_.begin(), alive_.end(), true));
}

void DLDS::remove_node(NodeId v) {
  for (int e : out_[v])
    if (edge_alive_[e]) throw Error("remove_node: node still has out-edges");
  for (int e : in_[v])
    if (edge_alive_[e]) throw Error("remove_node: node still has in-edges");
  alive_[v] = false;
  drop_from_level_order(v);
}

int DLDS::add_edge(NodeId src, NodeId tgt, int color, std::optional<DepSet> dep) {
  int e = static_cast<int>(edges_.size());
  edges_.push_back(Edge{src, tgt, color, std::move(dep)});
  edge_alive_.push_back(true);
  out_[src].push_back(e);
  in_[tgt].push_back(e);
  return e;
}

void DLDS::remove_edge(int e) {
  if (!edge_alive_[e]) return;
  edge_alive_[e] = false;
  auto& o = out_[edges_[e].src];
  o.erase(std::find(o.begin(), o.end(), e));
  auto& i = in_[edges_[e].tgt];
  i.erase(std::find(i.begin(), i.end(), e));
}

void DLDS::set_edge_source(int e, NodeId new_src) {
  auto& o = out_[edges_[e].src];
  o.erase(std::find(o.begin(), o.end(), e));
  edges_[e].src = new_src;
  out_[new_src].push_back(e);
}

void DLDS::set_edge_target(int e, NodeId new_tgt) {
  auto& i = in_[edges_[e].tgt];
  i.erase(std::find(i.begin(), i.end(), e));
  edges_[e].tgt = new_tgt;
  in_[new_tgt].push_back(e);
}

int DLDS::alive_edge_count() const {
  return static_cast<int>(
      std::count(edge_alive_.begin(), edge_alive_.end(), true));
}

std::optional<int> DLDS::find_edge(NodeId src, NodeId tgt) const {
  for (int e : out_[src])
    if (edge_alive_[e] && edges_[e].tgt == tgt) return e;
  return std::nullopt;
}

std::optional<int> DLDS::out_edge_with_color(NodeId v, int color) const {
  std::optional<int> found;
  for (int e : out_[v]) {
    if (!edge_alive_[e] || edges_[e].color != color) continue;
    if (found) return std::nullopt;  // ambiguous
    found = e;
  }
  return found;
}

void DLDS::add_anc_edge(NodeId src, NodeId tgt, std::vector<int> path) {
  for (const auto& a : anc_)
    if (a.src == src && a.tgt == tgt && a.path == path) return;  // coalesce
  anc_.push_back(AncEdge{src, tgt, std::move(path)});
}

void DLDS::remove_anc_edges_targeting(NodeId tgt) {
  anc_.erase(std::remove_if(anc_.begin(), anc_.end(),
                            [&](const AncEdge& a) { return a.tgt == tgt; }),
             anc_.end());
}

std::vector<DLDS::AncEdge> DLDS::anc_edges_targeting(NodeId tgt) const {
  std::vector<AncEdge> out;
  for (const auto& a : anc_)
    if (a.tgt == tgt) out.push_back(a);
  return out;
}

bool DLDS::is_anc_target(NodeId v) const {
  for (const auto& a : anc_)
    if (a.tgt == v) return true;
  return false;
}

int DLDS::height() const {
  int h = 0;
  for (NodeId v = 0; v < node_slots(); ++v)
    if (alive_[v]) h = std::max(h, level_[v]);
  return h;
}

const std::vector<NodeId>& DLDS::nodes_at_level(int lev) const {
  static const std::vector<NodeId> empty;
  if (lev < 0 || lev >= static_cast<int>(level_nodes_.size())) return empty;
  return level_nodes_[lev];
}

void DLDS::drop_from_level_order(NodeId v) {
  auto& row = level_nodes_[level_[v]];
  auto it = std::find(row.begin(), row.end(), v);
  if (it != row.end()) row.erase(it);
}

void DLDS::set_level_row(int lev, std::vector<NodeId> row) {
  if (lev >= static_cast<int>(level_nodes_.size()))
    level_nodes_.resize(lev + 1);
  level_nodes_[lev] = std::move(row);
}

std::vector<NodeId> DLDS::topo_desc() const {
  std::vector<NodeId> order;
  for (int lev = static_cast<int>(level_nodes_.size()) - 1; lev >= 0; --lev)
    for (NodeId v : level_nodes_[lev]) order.push_back(v);
  return order;
}

DLDS to_dlds(const DGTD& g) {
  DLDS d;
  d.foundation = g.foundation;
  auto lev = g.tree.levels();
  // Tree node i becomes DLDS node i; the level rows are refilled in
  // left-to-right premiss (reading) order so redex scans match the paper's.
  for (NodeId v = 0; v < g.tree.node_count(); ++v)
    d.add_node(g.tree.label[v], lev[v]);
  std::vector<std::vector<NodeId>> rows(g.tree.height() + 1);
  std::vector<NodeId> stack{g.tree.root};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    rows[lev[v]].push_back(v);
    const auto& prems = g.tree.premisses[v];
    for (auto it = prems.rbegin(); it != prems.rend(); ++it)
      stack.push_back(*it);
  }
  for (int l = 0; l <= g.tree.height(); ++l) d.set_level_row(l, rows[l]);
  for (NodeId v = 0; v < g.tree.node_count(); ++v)
    for (NodeId p : g.tree.premisses[v]) d.add_edge(p, v, 0, g.dep[p]);
  d.root = g.tree.root;
  return d;
}

int level_of(const DLDS& d, NodeId v) {
  if (!d.node_alive(v)) throw Error("level_of: dead node");
  // breadth-first over out-edges; all paths to the root must agree
  std::vector<int> depth(d.node_slots(), -1);
  std::vector<NodeId> stack{v};
  depth[v] = 0;
  bool reached_root = false;
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (cur == d.root) reached_root = true;
    for (int e : d.out_edges(cur)) {
      if (!d.edge_alive(e)) continue;
      NodeId nxt = d.edge(e).tgt;
      if (d.ground_node && nxt == *d.ground_node) continue;
      int nd = depth[cur] + 1;
      if (depth[nxt] == -1) {
        depth[nxt] = nd;
        stack.push_back(nxt);
      } else if (depth[nxt] != nd) {
        throw Error("level_of: node " + std::to_string(v) +
                    " has inconsistent path lengths (not leveled)");
      }
    }
  }
  if (!reached_root) throw Error("level_of: root unreachable");
  return depth[d.root];
}

std::optional<NodeId> resolve_address(const DLDS& d, NodeId start,
                                      const std::vector<int>& addr) {
  NodeId cur = start;
  for (int color : addr) {
    auto e = d.out_edge_with_color(cur, color);
    if (!e) return std::nullopt;
    cur = d.edge(*e).tgt;
  }
  return cur;
}

GroundedDLDS ground(const DLDS& d) {
  ValidityReport report = check_validity(d);
  if (!report.ok())
    throw Error("ground: DLDS is not valid: " + report.summary());
  std::vector<int> in;
  for (int e : d.in_edges(d.root))
    if (d.edge_alive(e)) in.push_back(e);
  if (in.empty() || in.size() > 2)
    throw Error("ground: root must have one or two in-edges, has " +
                std::to_string(in.size()));

  auto dep_of = [&](int e) -> DepSet {
    if (d.edge(e).dep) return *d.edge(e).dep;
    // lambda label: use the flow-computed dependency set
    FlowMap fm = flow(d, d.root);
    const auto& entries = fm.entries.at(d.edge(e).src);
    if (entries.empty()) throw Error("ground: no flow at lambda edge");
    DepSet u = entries.begin()->dep;
    for (const auto& en : entries) u = u.unioned(en.dep);
    return u;
  };

  GroundedDLDS g{d, -1, DepSet::zeros(d.foundation.size())};
  const FormulaPtr& rl = d.node(d.root).label;
  if (in.size() == 1) {
    if (rl->is_atom())
      throw Error("ground: intro root must be an implication");
    g.final_dep =
        subtract_formula(d.foundation, dep_of(in[0]), *rl->antecedent());
  } else {
    g.final_dep = dep_of(in[0]).unioned(dep_of(in[1]));
  }
  // ground sits one level below the root; level rows shift conceptually, the
  // stored levels keep root = 0 and ground = -1 is avoided by reusing 0
  NodeId gn = g.dlds.add_node(nullptr, 0);
  g.dlds.drop_from_level_order(gn);
  g.dlds.ground_node = gn;
  g.dlds.add_edge(g.dlds.root, gn, 0, g.final_dep);
  g.ground = gn;
  return g;
}

long long size_of(const DLDS& d) {
  long long total = 0;
  for (NodeId v = 0; v < d.node_slots(); ++v)
    if (d.node_alive(v)) total += 2;
  for (int e = 0; e < d.edge_slots(); ++e) {
    if (!d.edge_alive(e)) continue;
    total += 2;
    total += d.edge(e).dep ? d.edge(e).dep->width() : 1;
  }
  for (const auto& a : d.anc_edges())
    total += 2 + static_cast<long long>(a.path.size());
  return total;
}

long long size_of(const GroundedDLDS& g) { return size_of(g.dlds); }

std::string export_dot(const DLDS& d) {
  std::ostringstream os;
  os << "digraph dlds {\n";
  os << "  rankdir=TB;\n";
  for (NodeId v = 0; v < d.node_slots(); ++v) {
    if (!d.node_alive(v)) continue;
    os << "  n" << v << " [label=\"";
    if (d.ground_node && v == *d.ground_node)
      os << "ground";
    else
      os << d.node(v).label->text();
    if (d.node(v).hyp_mark) os << " (h)";
    os << "\"";
    if (d.ground_node && v == *d.ground_node) os << ", shape=circle";
    if (d.node(v).hyp_mark) os << ", color=red";
    os << "];\n";
  }
  std::vector<int> es;
  for (int e = 0; e < d.edge_slots(); ++e)
    if (d.edge_alive(e)) es.push_back(e);
  std::sort(es.begin(), es.end(), [&](int a, int b) {
    const auto &ea = d.edge(a), &eb = d.edge(b);
    return std::tie(ea.src, ea.tgt, ea.color) <
           std::tie(eb.src, eb.tgt, eb.color);
  });
  for (int e : es) {
    const auto& ed = d.edge(e);
    os << "  n" << ed.src << " -> n" << ed.tgt << " [label=\"";
    if (ed.dep)
      os << ed.dep->to_string();
    else
      os << "lambda";
    if (ed.color != 0) os << " #" << ed.color;
    os << "\"";
    if (ed.color != 0) os << ", fontcolor=red";
    os << "];\n";
  }
  auto anc = d.anc_edges();
  std::sort(anc.begin(), anc.end(),
            [](const DLDS::AncEdge& a, const DLDS::AncEdge& b) {
              return std::tie(a.src, a.tgt, a.path) <
                     std::tie(b.src, b.tgt, b.path);
            });
  for (const auto& a : anc) {
    os << "  n" << a.src << " -> n" << a.tgt << " [color=blue, fontcolor=red, label=\"[";
    for (std::size_t i = 0; i < a.path.size(); ++i) {
      if (i) os << ",";
      os << a.path[i];
    }
    os << "]\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hc
