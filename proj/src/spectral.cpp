#include "qcert/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcert/errors.hpp"

namespace qcert {

QMatrix signless_laplacian(const Graph& g) {
  int n = g.order();
  QMatrix m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int v = 0; v < n; ++v) {
    m.at(v, v) = g.degree(v);
    for (int u : g.neighbors(v)) m.at(v, u) = 1.0;
  }
  return m;
}

namespace {

double frobenius(const QMatrix& m) {
  double s = 0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

double offdiag_frobenius(const QMatrix& m) {
  double s = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (i != j) s += m.at(i, j) * m.at(i, j);
  return std::sqrt(s);
}

}  // namespace

double largest_eigenvalue(QMatrix m) {
  int n = m.n;
  if (n <= 0) return 0.0;
  if (n == 1) return m.at(0, 0);
  double scale = frobenius(m);
  if (scale == 0.0) return 0.0;
  const double target = 1e-12 * scale;
  for (int sweep = 0; sweep < 60; ++sweep) {
    if (offdiag_frobenius(m) < target) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = m.at(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double tau = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        double app = m.at(p, p), aqq = m.at(q, q);
        m.at(p, p) = app - t * apq;
        m.at(q, q) = aqq + t * apq;
        m.at(p, q) = 0.0;
        m.at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          double arp = m.at(r, p), arq = m.at(r, q);
          m.at(r, p) = c * arp - s * arq;
          m.at(p, r) = m.at(r, p);
          m.at(r, q) = s * arp + c * arq;
          m.at(q, r) = m.at(r, q);
        }
      }
    }
  }
  double best = m.at(0, 0);
  for (int i = 1; i < n; ++i) best = std::max(best, m.at(i, i));
  return best;
}

double q_index(const Graph& g) { return largest_eigenvalue(signless_laplacian(g)); }

// ---------------------------------------------------------------------------
// join-family cubics, exact integer coefficients

Cubic join_cubic(int n, int kappa, int a, int b) {
  if (kappa < 0 || a < 1 || b < 1 || kappa + a + b != n)
    throw RangeError("join_cubic needs kappa >= 0, a,b >= 1 and kappa+a+b = n (got n=" +
                     std::to_string(n) + ", kappa=" + std::to_string(kappa) +
                     ", a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
  long long N = n, K = kappa, ab = static_cast<long long>(a) * b;
  Cubic c;
  c.c2 = 3 * N + K - 6;
  c.c1 = 2 * N * N - 12 * N + 3 * N * K - 4 * K + 12 + 4 * ab;
  c.c0 = 4 * ab * (N - 2) + (N - K) * (2 * N - K) * (K - 2) + (3 * N - 2 * K) * (K - 2) * (K - 2) +
         (K - 2) * (K - 2) * (K - 2);
  c.bracket_lo = static_cast<double>(N - 2);
  c.bracket_hi = static_cast<double>(2 * (N - 1));
  return c;
}

Cubic q0_cubic(int n, int delta, int k) {
  if (!(delta >= k && k >= 2))
    throw RangeError("q0 needs delta >= k >= 2 (got delta=" + std::to_string(delta) +
                     ", k=" + std::to_string(k) + ")");
  return join_cubic(n, k - 1, delta - k + 2, n - delta - 1);
}

Cubic q1_cubic(int n, int delta) {
  if (delta < 2 || n < delta + 3)
    throw RangeError("q1 needs delta >= 2 and n >= delta+3 (got n=" + std::to_string(n) +
                     ", delta=" + std::to_string(delta) + ")");
  return join_cubic(n, delta - 1, 2, n - delta - 1);
}

Cubic q2_cubic(int n, int delta) {
  if (delta < 2 || n < delta + 3)
    throw RangeError("q2 needs delta >= 2 and n >= delta+3 (got n=" + std::to_string(n) +
                     ", delta=" + std::to_string(delta) + ")");
  return join_cubic(n, delta, 2, n - delta - 2);
}

// ---------------------------------------------------------------------------
// largest real root

namespace {

double bisect_increasing(const Cubic& c, double lo, double hi) {
  // p(lo) <= 0 <= p(hi) on an increasing segment
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi)); ++it) {
    double mid = 0.5 * (lo + hi);
    if (c.eval(mid) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  // Newton polish; fall back to the bisection midpoint if it wanders
  for (int it = 0; it < 8; ++it) {
    double d = (3.0 * x - 2.0 * c.c2) * x + c.c1;
    if (d == 0) break;
    double step = c.eval(x) / d;
    double next = x - step;
    if (!(next >= lo - 1.0 && next <= hi + 1.0)) break;
    x = next;
    if (std::fabs(step) < 1e-14 * std::max(1.0, std::fabs(x))) break;
  }
  return x;
}

double cauchy_bound(const Cubic& c) {
  double m = std::max({std::fabs(static_cast<double>(c.c2)), std::fabs(static_cast<double>(c.c1)),
                       std::fabs(static_cast<double>(c.c0))});
  return 1.0 + m;
}

}  // namespace

double largest_real_root(const Cubic& c) {
  // triple roots defeat floating evaluation (cancellation noise near the
  // root), but they are exact in the integer coefficients: (x-r)^3
  if (c.c2 % 3 == 0) {
    long long r = c.c2 / 3;
    if (c.c1 == 3 * r * r && c.c0 == r * r * r) return static_cast<double>(r);
  }
  double hi = cauchy_bound(c);  // p(hi) > 0
  double root;
  double disc = static_cast<double>(c.c2) * c.c2 - 3.0 * static_cast<double>(c.c1);
  if (disc <= 0) {
    // p is non-decreasing: single real root
    root = bisect_increasing(c, -hi, hi);
  } else {
    double t1 = (c.c2 - std::sqrt(disc)) / 3.0;  // local max
    double t2 = (c.c2 + std::sqrt(disc)) / 3.0;  // local min
    if (c.eval(t2) <= 0) {
      root = bisect_increasing(c, t2, hi);
    } else {
      // only real root lies left of the local max
      root = bisect_increasing(c, -hi, t1);
    }
  }
  if (c.bracket_lo && c.bracket_hi) {
    if (root < *c.bracket_lo - 1e-6 || root > *c.bracket_hi + 1e-6)
      throw RangeError("join cubic root escaped its Perron bracket");
  }
  return root;
}

double largest_real_root(const Cubic& c, double lo, double hi) {
  double root = largest_real_root(c);
  if (root < lo - 1e-12 || root > hi + 1e-12)
    throw RangeError("largest real root " + std::to_string(root) +
                     " lies outside the supplied bracket; supply an explicit bracket containing "
                     "the maximum real root");
  return root;
}

}  // namespace qcert
