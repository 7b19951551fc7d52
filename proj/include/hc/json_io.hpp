#pragma once

#include <string>

#include "hc/compress.hpp"
#include "hc/dlds.hpp"
#include "hc/proof.hpp"

namespace hc {

// Proof file: {"foundation":[...], "nodes":[{"id","label"}],
// "ded_edges":[[child,parent]] (minor edge first), "discharge_edges":
// [[leaf,intro]], "root":n}.  The foundation array fixes the bitstring order.
std::string proof_to_json(const TreeDerivation& t,
                          const Foundation* foundation = nullptr);
struct LoadedProof {
  TreeDerivation tree;
  Foundation foundation;  // explicit file order, or default order
  bool explicit_foundation = false;
};
LoadedProof proof_from_json(const std::string& text);

// DLDS file: the proof fields plus "colors" (aligned with ded_edges),
// "dep" keyed "src-tgt" with a bitstring or "lambda",
// "anc_edges":[{"src","tgt","path"}], "hyp_marks", optional "ground".
std::string dlds_to_json(const DLDS& d);
DLDS dlds_from_json(const std::string& text);

bool looks_like_dlds_json(const std::string& text);

}  // namespace hc
