#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcert/errors.hpp"

namespace qcert {

// Undirected simple graph stored as per-vertex neighbour bitsets.
// Vertices are 0-based and contiguous; the row stride is a whole number of
// 64-bit words so neighbourhood intersections and unions stay word-parallel.
class Graph {
 public:
  static constexpr int kMaxOrder = 512;

  explicit Graph(int n);

  int order() const { return n_; }
  long long size() const;  // edge count m
  int stride() const { return stride_; }

  bool has_edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * stride_ + (static_cast<unsigned>(v) >> 6)] >>
            (v & 63)) &
           1u;
  }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  int degree(int v) const;
  int min_degree() const;
  std::vector<int> degree_sequence() const;  // sorted ascending
  std::vector<int> neighbors(int v) const;

  std::span<const std::uint64_t> row(int v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * stride_,
            static_cast<std::size_t>(stride_)};
  }

  bool operator==(const Graph&) const = default;

 private:
  void check_vertex(int v) const;

  int n_;
  int stride_;
  std::vector<std::uint64_t> bits_;
};

// --- graph6 (one graph per line, 63-offset ASCII, column-major upper triangle) ---

Graph from_graph6(std::string_view line);
std::string to_graph6(const Graph& g);

// --- operators ---

Graph complement(const Graph& g);
Graph join(const Graph& g, const Graph& h);
Graph disjoint_union(const Graph& g, const Graph& h);

// Induced subgraph on V(g) minus `drop`; survivors keep their relative order.
Graph induced_delete(const Graph& g, const std::vector<int>& drop);

// Degree-partition refinement plus backtracking; intended regime n <= 16.
bool is_isomorphic(const Graph& g, const Graph& h);

// --- extremal families ---

struct JoinCliques {  // K_kappa v (K_a u K_b)
  int kappa = 0;
  int a = 0;
  int b = 0;
  bool operator==(const JoinCliques&) const = default;
};

struct JoinCliquesMinusEdge {  // (K_delta v (K_2 u K_{n-delta-2})) - e, d(x)=delta+1, d(y)=n-1
  int delta = 0;
  int n = 0;
  bool operator==(const JoinCliquesMinusEdge&) const = default;
};

struct CompleteBipartite {
  int a = 0;
  int b = 0;
  bool operator==(const CompleteBipartite&) const = default;
};

struct Complete {
  int n = 0;
  bool operator==(const Complete&) const = default;
};

struct EmptyGraph {
  int n = 0;
  bool operator==(const EmptyGraph&) const = default;
};

// V = X u C u Y with |C| = k-1, G[C] edgeless, G[X u C] = K_{delta,delta} and
// G[Y u C] = K_{floor(s/2),ceil(s/2)} (s = n-2*delta+k-1), C inside one side of
// both bipartitions, no X-Y edges.
struct TriangleFreeExtremal {
  int n = 0;
  int delta = 0;
  int k = 0;
  bool operator==(const TriangleFreeExtremal&) const = default;
};

using FamilySpec = std::variant<JoinCliques, JoinCliquesMinusEdge, CompleteBipartite, Complete,
                                EmptyGraph, TriangleFreeExtremal>;

Graph construct(const FamilySpec& spec);

// Parses CLI construction strings such as "join-cliques:k=1,a=3,b=3".
FamilySpec parse_family(std::string_view text);
std::string family_to_string(const FamilySpec& spec);

}  // namespace qcert
