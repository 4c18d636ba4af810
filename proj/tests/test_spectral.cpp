#include "qcert/spectral.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace qcert;
using namespace qcert::test;

TEST_CASE("signless laplacian entries") {
  Graph k2(2);
  k2.add_edge(0, 1);
  QMatrix m = signless_laplacian(k2);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(1, 1) == 1);

  QMatrix z = signless_laplacian(Graph(3));
  for (double x : z.a) CHECK(x == 0);

  QMatrix c4 = signless_laplacian(cycle(4));
  for (int i = 0; i < 4; ++i) CHECK(c4.at(i, i) == 2);
  CHECK(c4.at(0, 1) == 1);
  CHECK(c4.at(0, 2) == 0);
  // row sums are twice the degree
  for (int i = 0; i < 4; ++i) {
    double s = 0;
    for (int j = 0; j < 4; ++j) s += c4.at(i, j);
    CHECK(s == 4);
  }
}

TEST_CASE("q-index closed forms") {
  CHECK(q_index(construct(Complete{4})) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(q_index(construct(CompleteBipartite{2, 3})) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(q_index(cycle(5)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(q_index(construct(CompleteBipartite{1, 4})) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(q_index(Graph(1)) == 0.0);
  CHECK(q_index(Graph(6)) == 0.0);
}

TEST_CASE("q-index of complete bipartite graphs is a+b") {
  for (int a = 1; a <= 12; ++a)
    for (int b = a; b <= 12; ++b)
      CHECK(std::fabs(q_index(construct(CompleteBipartite{a, b})) - (a + b)) < 1e-9);
}

TEST_CASE("q-index agrees with the power-iteration oracle") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    Graph g = random_graph(8, 0.5, rng);
    CHECK(std::fabs(q_index(g) - power_iteration_q(g)) < 1e-7);
  }
  CHECK(std::fabs(q_index(petersen()) - power_iteration_q(petersen())) < 1e-7);
}

TEST_CASE("disconnected graphs take the componentwise maximum") {
  Graph g = disjoint_union(construct(Complete{4}), cycle(5));
  CHECK(q_index(g) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("bound sandwich and edge monotonicity") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_graph(9, 0.4, rng);
    double q = q_index(g);
    long long m = g.size();
    CHECK(q >= 4.0 * m / 9 - 1e-9);
    // add a random missing edge; q never decreases
    std::vector<std::pair<int, int>> missing;
    for (int u = 0; u < 9; ++u)
      for (int v = u + 1; v < 9; ++v)
        if (!g.has_edge(u, v)) missing.emplace_back(u, v);
    if (missing.empty()) continue;
    auto [u, v] = missing[rng() % missing.size()];
    g.add_edge(u, v);
    CHECK(q_index(g) >= q - 1e-9);
  }
}

TEST_CASE("join cubic matches the eigensolver") {
  auto check_pair = [](int n, int kappa, int a, int b) {
    double root = largest_real_root(join_cubic(n, kappa, a, b));
    double q = q_index(construct(JoinCliques{kappa, a, b}));
    CHECK(std::fabs(root - q) <= 1e-8);
  };
  check_pair(6, 2, 2, 2);
  check_pair(7, 1, 3, 3);
  check_pair(12, 4, 3, 5);

  // q(K_2 v (K_2 u K_2)) is exactly 8
  CHECK(largest_real_root(join_cubic(6, 2, 2, 2)) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(largest_real_root(join_cubic(9, 3, 2, 4)) > 7.0);

  CHECK_THROWS_AS(join_cubic(6, 2, 2, 3), RangeError);
  CHECK_THROWS_AS(join_cubic(6, 2, 0, 4), RangeError);
}

TEST_CASE("q0/q1/q2 specializations") {
  // q0 at k = delta has the q1 coefficients
  for (int n = 7; n <= 14; ++n)
    for (int delta = 2; delta <= n - 3; ++delta) {
      Cubic a = q0_cubic(n, delta, delta);
      Cubic b = q1_cubic(n, delta);
      CHECK(a.c2 == b.c2);
      CHECK(a.c1 == b.c1);
      CHECK(a.c0 == b.c0);
    }

  CHECK(std::fabs(largest_real_root(q2_cubic(8, 3)) -
                  q_index(construct(JoinCliques{3, 2, 3}))) <= 1e-8);
  // q0 at (n=7, delta=3, k=2) belongs to K_1 v (K_3 u K_3)
  CHECK(std::fabs(largest_real_root(q0_cubic(7, 3, 2)) -
                  q_index(construct(JoinCliques{1, 3, 3}))) <= 1e-8);

  CHECK_THROWS_AS(q0_cubic(7, 2, 3), RangeError);
  CHECK_THROWS_AS(q1_cubic(5, 3), RangeError);
  CHECK_THROWS_AS(q2_cubic(5, 1), RangeError);
}

TEST_CASE("largest real root fixtures") {
  Cubic factored{6, 11, 6, {}, {}};  // (x-1)(x-2)(x-3)
  CHECK(largest_real_root(factored) == doctest::Approx(3.0).epsilon(1e-12));

  Cubic zero{0, 0, 0, {}, {}};
  CHECK(largest_real_root(zero) == doctest::Approx(0.0).epsilon(1e-12));

  // single real root: x^3 - 2 = 0
  Cubic c{0, 0, 2, {}, {}};
  CHECK(largest_real_root(c) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));

  // triple root from the degenerate join family K_2 u K_2
  CHECK(largest_real_root(join_cubic(4, 0, 2, 2)) == doctest::Approx(2.0).epsilon(1e-10));

  // residual invariant |p(root)| <= 1e-6 max(1, |c0|)
  Cubic j = join_cubic(15, 4, 5, 6);
  double r = largest_real_root(j);
  CHECK(std::fabs(j.eval(r)) <= 1e-6 * std::max<double>(1.0, std::fabs(double(j.c0))));

  CHECK_THROWS_AS(largest_real_root(factored, 10.0, 20.0), RangeError);
  CHECK(largest_real_root(factored, 2.5, 3.5) == doctest::Approx(3.0).epsilon(1e-12));
}
