#pragma once

#include <optional>
#include <vector>

#include "qcert/graph.hpp"

namespace qcert {

struct CutWitness {
  std::vector<int> cut;                     // empty when the graph is disconnected
  std::vector<std::vector<int>> components;  // components of G - cut, ordered by size then lex
};

struct ConnectivityResult {
  int kappa = 0;
  CutWitness witness;
};

bool is_connected(const Graph& g);
std::vector<std::vector<int>> components(const Graph& g);

// kappa(G) by maximum-flow vertex splitting between non-adjacent pairs.
// Complete graphs give n-1 with an (n-1)-set cut (the G - C = K_1 convention);
// disconnected graphs give 0 with an empty cut.
ConnectivityResult vertex_connectivity(const Graph& g);

// Independent subset-scan route for kappa; small-graph oracle regime.
int brute_force_connectivity(const Graph& g);

// Every vertex set of size kappa(G) whose removal disconnects g or leaves K_1.
// Enumeration regime n <= 16.
std::vector<std::vector<int>> all_min_cuts(const Graph& g);
// Variant for callers that already know kappa(G).
std::vector<std::vector<int>> all_min_cuts(const Graph& g, int kappa);

// Components of G - cut, ordered by size then lexicographically.
std::vector<std::vector<int>> components_after_removal(const Graph& g,
                                                       const std::vector<int>& cut);

// Length of a shortest cycle; nullopt when acyclic.
std::optional<int> girth(const Graph& g);

bool is_triangle_free(const Graph& g);

// kappa(G) = delta(G); false for disconnected graphs.
bool is_maximally_connected(const Graph& g);

// Every minimum vertex cut isolates a vertex of minimum degree (true for
// complete graphs under the K_1 convention); false for disconnected graphs.
// Regime n <= 16.
bool is_super_kappa(const Graph& g);

struct StructureReport {
  int n = 0;
  long long m = 0;
  int min_degree = 0;
  std::optional<int> girth;  // nullopt = infinite (acyclic)
  int kappa = 0;
  bool connected = false;
  bool triangle_free = false;
  bool maximally_connected = false;
  std::optional<bool> super_kappa;  // nullopt when n > 16 (cut enumeration regime)
  std::optional<CutWitness> witness;  // present when kappa < n-1
};

StructureReport structure_report(const Graph& g);

}  // namespace qcert
