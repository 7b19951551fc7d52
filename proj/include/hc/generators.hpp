#pragma once

#include <set>
#include <utility>

#include "hc/proof.hpp"

namespace hc {

struct Digraph {
  int n = 0;                              // vertices 1..n
  std::set<std::pair<int, int>> edges;    // ordered pairs, no self-loops
};

// Fibonacci-style family: premises A1>A2 and Ai>(A{i+1}>A{i+2}), with the
// derivation of Ak combining the derivations of A{k-1} and A{k-2}; the final
// greedy intro discharges every open A1 and concludes A1>An.  n = 5 is the
// worked 24-node example.
TreeDerivation gen_fibonacci_proof(int n);

// Brute force over all vertex orderings: true iff some ordering is a
// directed path visiting every vertex once.
bool is_hamiltonian(const Digraph& g);

// Case analysis over position assignments with atoms X{k}v{j} ("vertex j at
// position k"), goal atom q, per-position ORX{k} scaffolding and conflict
// hypotheses X{k}a>(X{k+1}b>q) for adjacent non-edges plus repeated-vertex
// conflicts.  Requires a non-Hamiltonian graph.
TreeDerivation gen_nonhamiltonian_proof(const Digraph& g);

}  // namespace hc
