#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hc/dlds.hpp"

namespace hc {

// One reading of a node: the dependency set it carries and the remaining
// color route below it (one color per edge; empty once the route is spent).
struct FlowEntry {
  DepSet dep;
  std::vector<int> path;
  friend bool operator<(const FlowEntry& a, const FlowEntry& b) {
    if (a.dep != b.dep) return a.dep < b.dep;
    return a.path < b.path;
  }
  friend bool operator==(const FlowEntry& a, const FlowEntry& b) {
    return a.dep == b.dep && a.path == b.path;
  }
};

using FlowEntries = std::set<FlowEntry>;

struct FlowMap {
  NodeId target = -1;
  std::map<NodeId, FlowEntries> entries;  // domain: Pre(target)
};

struct Diagnostic {
  std::string clause;
  NodeId node = -1;
  int color = -1;
  std::string message;
};

// Nodes with a deductive path into w, over all colors.
std::vector<NodeId> pre_set(const DLDS& d, NodeId w);
// Pre(w) members with no deductive in-edge or marked as hypothesis.
std::vector<NodeId> top_set(const DLDS& d, NodeId w);

// The Flow function: per predecessor of w, its set of (dep, route) readings.
// Top nodes yield their hypothesis entries (one per incoming ancestor edge,
// else a single spent route); eliminations pair premiss readings whose routes
// agree after popping the premiss edge colors (a spent route pairs with
// anything); intros subtract the antecedent bit; ancestor edges re-route
// spent readings at their targets.  Throws when Flow is undefined somewhere.
FlowMap flow(const DLDS& d, NodeId w);

struct ValidityCondition {
  std::string name;
  bool pass = true;
  std::vector<std::string> witnesses;
};

struct ValidityReport {
  std::vector<ValidityCondition> conditions;
  bool ok() const;
  const ValidityCondition& condition(const std::string& name) const;
  std::string summary() const;
};

// The eight validity conditions: ColorAcyclicity, LeveledColored,
// AncestorEdges, AncestorBackwayInformation, Simplicity, AncestorSimplicity,
// NonNestedAncestorEdges, CorrectRuleApp.
ValidityReport check_validity(const DLDS& d);

struct VerifyResult {
  bool valid = false;
  DepSet final_dep;
  std::vector<Diagnostic> diagnostics;
  std::string diagnostics_json() const;
};

// Level sweep of the appendix verifier: propagates per-edge partial flows
// from the tops down, checks every rule application shape and label, and
// accepts iff the dummy conclusion edge collects exactly (b(delta), empty).
VerifyResult verify_derivation(const GroundedDLDS& g,
                               const std::vector<FormulaPtr>& delta);

}  // namespace hc
