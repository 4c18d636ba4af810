#pragma once

#include <optional>
#include <vector>

#include "qcert/graph.hpp"

namespace qcert {

// single global tolerance for spectral comparisons
inline constexpr double kSpectralEps = 1e-9;
// cubic-root vs eigensolver cross checks (two numerical pipelines)
inline constexpr double kCubicEps = 1e-8;

// Dense symmetric signless Laplacian Q = D + A.
struct QMatrix {
  int n = 0;
  std::vector<double> a;  // row-major, n*n

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

QMatrix signless_laplacian(const Graph& g);

// Largest eigenvalue by cyclic Jacobi sweeps; destroys its argument.
// Sweeps stop once the off-diagonal Frobenius norm drops below 1e-12 * ||Q||.
double largest_eigenvalue(QMatrix m);

// Q-index q(G). Disconnected graphs are fine: the Q-matrix is block diagonal,
// so the largest eigenvalue is the componentwise maximum. q(K_1) = 0.
double q_index(const Graph& g);

// Monic cubic  p(x) = x^3 - c2 x^2 + c1 x - c0  with exact integer
// coefficients (the sign convention of the characteristic equations).
struct Cubic {
  long long c2 = 0;
  long long c1 = 0;
  long long c0 = 0;
  // Perron bracket [n-2, 2(n-1)] attached by join_cubic.
  std::optional<double> bracket_lo;
  std::optional<double> bracket_hi;

  double eval(double x) const {
    return ((x - static_cast<double>(c2)) * x + static_cast<double>(c1)) * x -
           static_cast<double>(c0);
  }
};

// Characteristic cubic of q(K_kappa v (K_a u K_b)), n = kappa+a+b.
Cubic join_cubic(int n, int kappa, int a, int b);

// q0 = q(K_{k-1} v (K_{delta-k+2} u K_{n-delta-1})), delta >= k >= 2
Cubic q0_cubic(int n, int delta, int k);
// q1 = q(K_{delta-1} v (K_2 u K_{n-delta-1})), delta >= 2, n >= delta+3
Cubic q1_cubic(int n, int delta);
// q2 = q(K_delta v (K_2 u K_{n-delta-2})), delta >= 2, n >= delta+3
Cubic q2_cubic(int n, int delta);

// Maximum real root, found by isolating the rightmost increasing segment of
// the cubic, sign-bisection on it, then Newton polishing. When the cubic
// carries a Perron bracket the result is checked against it.
double largest_real_root(const Cubic& c);

// Bracketed variant; throws RangeError if the maximum real root is not inside
// [lo, hi] (callers with non-join cubics must supply a valid bracket).
double largest_real_root(const Cubic& c, double lo, double hi);

struct SpectralReport {
  double q = 0;
  double q_bar = 0;
  double lower_bound = 0;  // 4m/n
  double upper_bound = 0;  // 2m/(n-1) + n - 2
  double tolerance = kSpectralEps;
  bool complement_connected = false;
};

}  // namespace qcert
