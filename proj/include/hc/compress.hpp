#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hc/dlds.hpp"

namespace hc {

// The HC rule catalogue.  Names follow the paper's schema R<type><left><right>
// with H/I/E for hypothesis, intro and elim conclusions and X for a node that
// already absorbed a collapse; v/e marks whether only vertexes or also edges
// collapse.  Rules missing from the catalogue's figures are the mirrored
// counterparts of drawn ones and share their surgery.
enum class RuleId {
  R0HH, R0HI, R0HE, R0IH, R0IE, R0II, R0EH, R0EI, R0EE,
  R1XH, R1XI, R1XE,
  Rv2EI, Re2EI, Rv2EE, Re2EE, Rv2EH, Re2EH,
  Rv2II, Re2II, Rv2IE, Re2IE, Rv2IH, Re2IH,
  Rv2HI, Re2HI, Rv2HE, Re2HE, Rv2HH, Re2HH,
  Rv2XH, Re2XH,
  Rv3XH, Re3XH, Rv3XE, Re3XE, Rv3XI, Re3XI,
};

const char* rule_name(RuleId r);
std::optional<RuleId> rule_from_name(const std::string& name);

// Rules that move ancestor edges downward while collapsing hypothesis tops.
bool is_mde(RuleId r);

enum class Phase { MUE, MDE };

struct Match {
  RuleId rule;
  NodeId u = -1;  // leftmost; survives
  NodeId v = -1;  // removed
  int level = -1;
};

// Selects the unique applicable rule for a same-level, same-label pair, or
// nothing when the pair is not collapsible (e.g. the right node already
// collapsed).
std::optional<RuleId> classify_pair(const DLDS& d, NodeId u, NodeId v);

// Scans one level left to right and returns the first same-label pair whose
// rule belongs to the requested phase.
std::optional<Match> find_redex(const DLDS& d, int lev, Phase phase);

// Collapses m.v into m.u.  Deductive edges are retargeted or merged, fresh
// colors are allocated per the catalogue, dependency labels become lambda on
// merged edges, and every ancestor edge touching the pair is moved with its
// relative address kept resolvable.  Throws when the match is stale or a
// rewritten path fails its resolution round-trip.
void apply_rule(DLDS& d, const Match& m);

struct TraceEntry {
  int step = 0;
  RuleId rule = RuleId::R0HH;
  NodeId u = -1;
  NodeId v = -1;
  int level = -1;
};

std::string trace_to_jsonl(const std::vector<TraceEntry>& trace);

// Two-pass horizontal compression: first everything except the MDE rules,
// level by level bottom-up, then the MDE rules.  With mue_only the second
// pass is skipped, leaving the MUE+-compressed intermediate.
DLDS compress(const DLDS& input, bool mue_only = false,
              std::vector<TraceEntry>* trace = nullptr);

}  // namespace hc
