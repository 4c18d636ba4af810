#include "qcert/graph.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "qcert/structure.hpp"
#include "test_support.hpp"

using namespace qcert;
using namespace qcert::test;

TEST_CASE("graph6 hand-encoded fixtures") {
  // K_2: header 'A' (63+2), body bit 100000 -> 63+32 = '_'
  Graph k2(2);
  k2.add_edge(0, 1);
  CHECK(to_graph6(k2) == "A_");
  CHECK(from_graph6("A_") == k2);

  Graph e2(2);
  CHECK(to_graph6(e2) == "A?");
  CHECK(from_graph6("A?") == e2);

  // K_3: bits 111000 -> 63+56 = 'w'
  Graph k3 = construct(Complete{3});
  CHECK(to_graph6(k3) == "Bw");
  CHECK(from_graph6("Bw") == k3);
}

TEST_CASE("graph6 parse errors carry byte offsets") {
  CHECK_THROWS_AS(from_graph6(""), ParseError);
  CHECK_THROWS_AS(from_graph6("B"), ParseError);     // truncated body
  CHECK_THROWS_AS(from_graph6("Bw!"), ParseError);   // trailing data
  CHECK_THROWS_AS(from_graph6("B\x1f"), ParseError); // out-of-range character
  try {
    from_graph6("Bw!");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
  // order above the 512 capacity: '~' header encoding 600
  std::string big = "~";
  big += static_cast<char>(63 + 0);
  big += static_cast<char>(63 + (600 >> 6));
  big += static_cast<char>(63 + (600 & 63));
  CHECK_THROWS_AS(from_graph6(big), ParseError);
}

TEST_CASE("graph6 long-form header round-trips") {
  std::mt19937 rng(7);
  Graph g = random_graph(70, 0.3, rng);
  std::string s = to_graph6(g);
  CHECK(s.size() == 4 + (70 * 69 / 2 + 5) / 6);
  CHECK(from_graph6(s) == g);
}

TEST_CASE("graph6 round-trip on every labeled graph of order 4") {
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    Graph g(4);
    int bit = 0;
    for (int j = 1; j < 4; ++j)
      for (int i = 0; i < j; ++i, ++bit)
        if ((mask >> bit) & 1) g.add_edge(i, j);
    CHECK(from_graph6(to_graph6(g)) == g);
  }
}

TEST_CASE("complement identities") {
  CHECK(complement(construct(Complete{5})) == Graph(5));
  Graph c5 = cycle(5);
  CHECK(is_isomorphic(complement(c5), c5));  // C_5 is self-complementary

  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_graph(9, 0.4, rng);
    CHECK(complement(complement(g)) == g);
    CHECK(g.size() + complement(g).size() == 9 * 8 / 2);
  }

  // join vertices dominate: complement of K_{k-1} v (K_a u K_b) is K_{a,b}
  // plus k-1 isolated vertices
  Graph jc = construct(JoinCliques{2, 3, 4});
  Graph expect = disjoint_union(construct(CompleteBipartite{3, 4}), Graph(2));
  CHECK(is_isomorphic(complement(jc), expect));
}

TEST_CASE("join and disjoint union sizes") {
  Graph star = join(construct(Complete{1}), Graph(4));
  CHECK(is_isomorphic(star, construct(CompleteBipartite{1, 4})));

  Graph g = join(construct(Complete{2}), disjoint_union(construct(Complete{2}), construct(Complete{2})));
  CHECK(g.order() == 6);
  CHECK(g.size() == 1 + 1 + 1 + 2 * 4);

  CHECK(is_isomorphic(join(Graph(3), Graph(4)), construct(CompleteBipartite{3, 4})));

  Graph du = disjoint_union(construct(Complete{3}), construct(Complete{1}));
  CHECK(du.order() == 4);
  CHECK(du.size() == 3);
  CHECK(disjoint_union(Graph(2), Graph(3)) == Graph(5));
  CHECK(disjoint_union(construct(Complete{2}), construct(Complete{2})).degree_sequence() ==
        std::vector<int>{1, 1, 1, 1});

  CHECK_THROWS_AS(join(Graph(400), Graph(400)), CapacityError);
}

TEST_CASE("join-cliques construction") {
  Graph g = construct(JoinCliques{1, 3, 3});
  CHECK(g.order() == 7);
  CHECK(g.size() == 3 + 3 + 6);
  CHECK(brute_force_connectivity(g) == 1);  // the join vertex is a cut vertex

  // degree pattern: K_a part has degree a-1+kappa, join vertices n-1
  Graph h = construct(JoinCliques{2, 3, 4});
  for (int v = 0; v < 2; ++v) CHECK(h.degree(v) == 8);
  for (int v = 2; v < 5; ++v) CHECK(h.degree(v) == 3 - 1 + 2);
  for (int v = 5; v < 9; ++v) CHECK(h.degree(v) == 4 - 1 + 2);

  CHECK_THROWS_AS(construct(JoinCliques{1, 0, 3}), ConstructionError);
}

TEST_CASE("join-cliques-minus-edge construction") {
  Graph g = construct(JoinCliquesMinusEdge{3, 8});
  CHECK(g.order() == 8);
  CHECK(g.size() == (8 - 2) * (8 - 3) / 2 + 2 * 3);  // 21
  // x keeps degree delta, y drops to n-2
  CHECK(g.degree(3) == 3);
  CHECK(g.degree(0) == 6);
  CHECK(g.min_degree() == 3);
  CHECK_THROWS_AS(construct(JoinCliquesMinusEdge{3, 5}), ConstructionError);
}

TEST_CASE("triangle-free extremal construction") {
  Graph g = construct(TriangleFreeExtremal{10, 3, 2});
  CHECK(g.order() == 10);
  CHECK(g.size() == 3 * 3 + (5 * 5) / 4);  // 15
  CHECK(is_triangle_free(g));
  CHECK(brute_force_connectivity(g) == 1);

  CHECK_THROWS_AS(construct(TriangleFreeExtremal{6, 3, 2}), ConstructionError);
  CHECK_THROWS_AS(construct(TriangleFreeExtremal{9, 4, 1}), ConstructionError);
  // cut does not fit in either side of the small block
  CHECK_THROWS_AS(construct(TriangleFreeExtremal{7, 3, 4}), ConstructionError);
}

TEST_CASE("isomorphism fixtures") {
  CHECK(is_isomorphic(construct(CompleteBipartite{2, 3}), construct(CompleteBipartite{3, 2})));
  CHECK_FALSE(is_isomorphic(construct(CompleteBipartite{1, 3}),
                            disjoint_union(construct(Complete{3}), construct(Complete{1}))));
  CHECK(is_isomorphic(cycle(5), complement(cycle(5))));
  // same degree sequence, different structure: C_6 vs two triangles
  CHECK_FALSE(is_isomorphic(cycle(6), disjoint_union(construct(Complete{3}), construct(Complete{3}))));
}

TEST_CASE("isomorphism is invariant under random relabeling") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_graph(8, 0.45, rng);
    Graph h = relabel(g, rng);
    CHECK(is_isomorphic(g, h));
  }
  // and perturbing one edge breaks it unless the graphs happen to coincide
  Graph g = petersen();
  Graph h = relabel(g, rng);
  CHECK(is_isomorphic(g, h));
  h.remove_edge(h.neighbors(0)[0], 0);
  CHECK_FALSE(is_isomorphic(g, h));
}

TEST_CASE("induced deletion") {
  CHECK(is_isomorphic(induced_delete(cycle(5), {0}), path(4)));
  CHECK(is_isomorphic(induced_delete(construct(Complete{5}), {1, 3}), construct(Complete{3})));
  Graph jc = construct(JoinCliques{1, 2, 2});
  CHECK(is_isomorphic(induced_delete(jc, {0}),
                      disjoint_union(construct(Complete{2}), construct(Complete{2}))));
  CHECK_THROWS_AS(induced_delete(cycle(3), {0, 1, 2}), Error);
}

TEST_CASE("family spec strings round-trip") {
  for (const char* text :
       {"join-cliques:k=1,a=3,b=3", "join-cliques-minus-edge:delta=3,n=8",
        "complete-bipartite:a=2,b=5", "complete:n=4", "empty:n=3",
        "triangle-free-extremal:n=10,delta=3,k=2"}) {
    FamilySpec spec = parse_family(text);
    CHECK(family_to_string(spec) == text);
  }
  CHECK_THROWS_AS(parse_family("frobnicate:n=3"), Error);
  CHECK_THROWS_AS(parse_family("complete:n=x"), Error);
  CHECK_THROWS_AS(parse_family("complete"), Error);
}
