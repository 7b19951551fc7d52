#include "hc/json_io.hpp"

#include <json.hpp>

namespace hc {

using nlohmann::json;

namespace {

json foundation_to_json(const Foundation& f) {
  json arr = json::array();
  for (const auto& x : f.formulas()) arr.push_back(x->text());
  return arr;
}

Foundation foundation_from_json(const json& arr) {
  std::vector<FormulaPtr> order;
  for (const auto& s : arr) order.push_back(parse_formula(s.get<std::string>()));
  return Foundation::with_order(order);
}

}  // namespace

std::string proof_to_json(const TreeDerivation& t, const Foundation* foundation) {
  json j;
  Foundation def;
  if (!foundation) {
    def = Foundation::from_formulas(t.formulas());
    foundation = &def;
  }
  j["foundation"] = foundation_to_json(*foundation);
  json nodes = json::array();
  for (NodeId v = 0; v < t.node_count(); ++v)
    nodes.push_back({{"id", v}, {"label", t.label[v]->text()}});
  j["nodes"] = nodes;
  json ded = json::array();
  for (NodeId v = 0; v < t.node_count(); ++v)
    for (NodeId p : t.premisses[v]) ded.push_back(json::array({p, v}));
  j["ded_edges"] = ded;
  json dis = json::array();
  for (NodeId v = 0; v < t.node_count(); ++v)
    if (t.discharge[v])
      dis.push_back(json::array({v, *t.discharge[v]}));
  j["discharge_edges"] = dis;
  j["root"] = t.root;
  return j.dump(2);
}

LoadedProof proof_from_json(const std::string& text) {
  json j = json::parse(text);
  LoadedProof out;
  std::vector<FormulaPtr> labels;
  std::vector<int> ids;
  for (const auto& n : j.at("nodes")) {
    ids.push_back(n.at("id").get<int>());
    labels.push_back(parse_formula(n.at("label").get<std::string>()));
  }
  int max_id = -1;
  for (int id : ids) max_id = std::max(max_id, id);
  if (max_id + 1 != static_cast<int>(ids.size()))
    throw Error("proof json: node ids must be dense 0..n-1");
  out.tree.label.resize(ids.size());
  out.tree.parent.assign(ids.size(), -1);
  out.tree.premisses.assign(ids.size(), {});
  out.tree.discharge.assign(ids.size(), std::nullopt);
  for (std::size_t i = 0; i < ids.size(); ++i)
    out.tree.label[ids[i]] = labels[i];
  for (const auto& e : j.at("ded_edges")) {
    NodeId child = e.at(0).get<int>(), parent = e.at(1).get<int>();
    out.tree.premisses[parent].push_back(child);
    out.tree.parent[child] = parent;
  }
  if (j.contains("discharge_edges"))
    for (const auto& e : j.at("discharge_edges"))
      out.tree.discharge[e.at(0).get<int>()] = e.at(1).get<int>();
  out.tree.root = j.at("root").get<int>();
  if (j.contains("foundation") && !j.at("foundation").empty()) {
    out.foundation = foundation_from_json(j.at("foundation"));
    out.explicit_foundation = true;
    for (NodeId v = 0; v < out.tree.node_count(); ++v)
      if (out.tree.is_leaf(v) && !out.foundation.contains(*out.tree.label[v]))
        throw Error("proof json: leaf label missing from foundation: " +
                    out.tree.label[v]->text());
  } else {
    out.foundation = Foundation::from_formulas(out.tree.formulas());
  }
  return out;
}

std::string dlds_to_json(const DLDS& d) {
  json j;
  j["foundation"] = foundation_to_json(d.foundation);
  json nodes = json::array();
  for (NodeId v = 0; v < d.node_slots(); ++v) {
    if (!d.node_alive(v)) continue;
    if (d.ground_node && v == *d.ground_node) continue;
    nodes.push_back({{"id", v}, {"label", d.node(v).label->text()}});
  }
  j["nodes"] = nodes;
  json ded = json::array(), colors = json::array(), dep = json::object();
  for (int e = 0; e < d.edge_slots(); ++e) {
    if (!d.edge_alive(e)) continue;
    const auto& ed = d.edge(e);
    if (d.ground_node && ed.tgt == *d.ground_node) continue;
    ded.push_back(json::array({ed.src, ed.tgt}));
    colors.push_back(ed.color);
    std::string key = std::to_string(ed.src) + "-" + std::to_string(ed.tgt);
    dep[key] = ed.dep ? json(ed.dep->to_string()) : json("lambda");
  }
  j["ded_edges"] = ded;
  j["colors"] = colors;
  j["dep"] = dep;
  json anc = json::array();
  for (const auto& a : d.anc_edges())
    anc.push_back({{"src", a.src}, {"tgt", a.tgt}, {"path", a.path}});
  j["anc_edges"] = anc;
  json hyp = json::array();
  for (NodeId v = 0; v < d.node_slots(); ++v)
    if (d.node_alive(v) && d.node(v).hyp_mark) hyp.push_back(v);
  j["hyp_marks"] = hyp;
  json collapsed = json::array();
  for (NodeId v = 0; v < d.node_slots(); ++v)
    if (d.node_alive(v) && d.node(v).collapsed) collapsed.push_back(v);
  j["collapsed"] = collapsed;
  json levels = json::array();
  for (int lev = 0; lev <= d.height(); ++lev)
    levels.push_back(d.nodes_at_level(lev));
  j["levels"] = levels;
  j["root"] = d.root;
  if (d.ground_node) {
    auto ge = d.find_edge(d.root, *d.ground_node);
    j["ground"] = {{"final_dep", d.edge(*ge).dep->to_string()}};
  }
  return j.dump(2);
}

DLDS dlds_from_json(const std::string& text) {
  json j = json::parse(text);
  DLDS d;
  d.foundation = foundation_from_json(j.at("foundation"));
  std::vector<std::pair<int, FormulaPtr>> nodes;
  int max_id = -1;
  for (const auto& n : j.at("nodes")) {
    nodes.push_back({n.at("id").get<int>(),
                     parse_formula(n.at("label").get<std::string>())});
    max_id = std::max(max_id, nodes.back().first);
  }
  std::vector<FormulaPtr> labels(max_id + 1);
  for (auto& [id, f] : nodes) labels[id] = std::move(f);
  std::vector<std::vector<NodeId>> levels;
  for (const auto& row : j.at("levels"))
    levels.push_back(row.get<std::vector<NodeId>>());
  std::vector<int> level_of_node(max_id + 1, -1);
  for (std::size_t lev = 0; lev < levels.size(); ++lev)
    for (NodeId v : levels[lev]) level_of_node[v] = static_cast<int>(lev);
  for (int v = 0; v <= max_id; ++v) {
    if (!labels[v]) throw Error("dlds json: missing node " + std::to_string(v));
    if (level_of_node[v] < 0)
      throw Error("dlds json: node missing from levels: " + std::to_string(v));
    d.add_node(labels[v], level_of_node[v]);
  }
  for (std::size_t lev = 0; lev < levels.size(); ++lev)
    d.set_level_row(static_cast<int>(lev), levels[lev]);
  const auto& ded = j.at("ded_edges");
  const auto& colors = j.at("colors");
  const auto& dep = j.at("dep");
  if (colors.size() != ded.size())
    throw Error("dlds json: colors must align with ded_edges");
  for (std::size_t i = 0; i < ded.size(); ++i) {
    NodeId src = ded[i].at(0).get<int>(), tgt = ded[i].at(1).get<int>();
    std::string key = std::to_string(src) + "-" + std::to_string(tgt);
    std::optional<DepSet> ds;
    std::string s = dep.at(key).get<std::string>();
    if (s != "lambda") {
      DepSet parsed = DepSet::from_string(s);
      if (parsed.width() != d.foundation.size())
        throw Error("dlds json: dependency width mismatch on edge " + key);
      ds = parsed;
    }
    d.add_edge(src, tgt, colors[i].get<int>(), ds);
  }
  for (const auto& a : j.at("anc_edges"))
    d.add_anc_edge(a.at("src").get<int>(), a.at("tgt").get<int>(),
                   a.at("path").get<std::vector<int>>());
  if (j.contains("hyp_marks"))
    for (const auto& v : j.at("hyp_marks")) d.node(v.get<int>()).hyp_mark = true;
  if (j.contains("collapsed"))
    for (const auto& v : j.at("collapsed"))
      d.node(v.get<int>()).collapsed = true;
  d.root = j.at("root").get<int>();
  return d;
}

bool looks_like_dlds_json(const std::string& text) {
  json j = json::parse(text);
  return j.contains("dep") || j.contains("anc_edges");
}

}  // namespace hc
