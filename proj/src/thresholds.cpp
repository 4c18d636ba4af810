#include "qcert/thresholds.hpp"

#include <array>
#include <cmath>

#include "qcert/spectral.hpp"

namespace qcert {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rat make_rat(i128 num, i128 den) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr i128 lim = 0x7fffffffffffffffLL;
  if (num > lim || num < -lim || den > lim) throw Error("rational overflow");
  Rat r;
  r.num = static_cast<long long>(num);
  r.den = static_cast<long long>(den);
  return r;
}

}  // namespace

Rat::Rat(long long n, long long d) { *this = make_rat(n, d); }

Rat Rat::operator+(const Rat& o) const {
  return make_rat(static_cast<i128>(num) * o.den + static_cast<i128>(o.num) * den,
                  static_cast<i128>(den) * o.den);
}
Rat Rat::operator-(const Rat& o) const {
  return make_rat(static_cast<i128>(num) * o.den - static_cast<i128>(o.num) * den,
                  static_cast<i128>(den) * o.den);
}
Rat Rat::operator*(const Rat& o) const {
  return make_rat(static_cast<i128>(num) * o.num, static_cast<i128>(den) * o.den);
}
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw Error("rational division by zero");
  return make_rat(static_cast<i128>(num) * o.den, static_cast<i128>(den) * o.num);
}
bool Rat::operator<(const Rat& o) const {
  return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
}

long long Rat::floor_div() const {
  long long q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------

long long nu(int delta, int g, int kappa) {
  if (delta < 2 || g < 3 || kappa < 0 || kappa > delta)
    throw RangeError("nu needs delta >= 2, g >= 3, 0 <= kappa <= delta (got delta=" +
                     std::to_string(delta) + ", g=" + std::to_string(g) +
                     ", kappa=" + std::to_string(kappa) + ")");
  int t = (g - 1) / 2;
  if (g % 2 == 0 && delta == 2) return 2LL * t + 1;
  long long geom = 0, pw = 1;
  for (int i = 0; i < t; ++i) {
    geom += pw;
    pw *= delta - 1;
  }
  if (g % 2 == 1) return 1 + static_cast<long long>(delta - kappa) * geom;
  return 2 + static_cast<long long>(2 * delta - 2 - kappa) * geom;
}

double girth_edge_bound(long long n, int g) {
  if (n < 3 || g < 3) throw RangeError("girth_edge_bound needs n >= 3 and g >= 3");
  int t = (g - 1) / 2;
  double e = 1.0 + 1.0 / t;
  double p = std::pow(static_cast<double>(n), e);
  if (g % 2 == 1) return 0.5 * p + 0.5 * static_cast<double>(n);
  return std::pow(2.0, -e) * p + 0.5 * static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// catalog

namespace {

constexpr std::array<RuleInfo, 22> kCatalog{{
    {RuleId::L3_1_edge, "L3.1-edge", Property::KConnected, GraphClass::GeneralGirth,
     Side::EdgeAtLeast, true, false, false,
     "m >= (nu+k-1)^(1+1/t)/s + (n-nu)^(1+1/t)/s + (n+k-1)/2, s = 2 for odd g, 2^(1+1/t) for "
     "even g; t = floor((g-1)/2), nu = nu(delta,g,k-1)",
     ""},
    {RuleId::T3_2_q, "T3.2-q", Property::KConnected, GraphClass::GeneralGirth, Side::QAtLeast,
     true, false, false,
     "q(G) >= ((nu+k-1)^(1+1/t)+(n-nu)^(1+1/t))/(s*(n-1)) + k/(n-1) + (n-1), s = 1 odd g, "
     "2^(1/t) even g",
     ""},
    {RuleId::T3_3_qbar, "T3.3-qbar", Property::KConnected, GraphClass::GeneralGirth,
     Side::QBarAtMost, true, false, false,
     "q(comp G) <= 2(n-1) - (2/(n*s))((nu+k-1)^(1+1/t)+(n-nu)^(1+1/t)) - 2(n+k-1)/n, s = 1 odd "
     "g, 2^(1/t) even g",
     ""},
    {RuleId::T4_1_q0, "T4.1-q0", Property::KConnected, GraphClass::AnyGraph, Side::QAtLeast, true,
     false, true, "q(G) >= q0 = q(K_{k-1} v (K_{delta-k+2} u K_{n-delta-1}))",
     "K_{k-1} v (K_{delta-k+2} u K_{n-delta-1}) (if and only if)"},
    {RuleId::T4_2_edge, "T4.2-edge", Property::KConnected, GraphClass::AnyGraph, Side::EdgeAtLeast,
     true, false, true, "m >= n(n-1)/2 - (delta-k+2)(n-delta-1)",
     "K_{k-1} v (K_{delta-k+2} u K_{n-delta-1}) (unless)"},
    {RuleId::C4_3_q, "C4.3-q", Property::KConnected, GraphClass::AnyGraph, Side::QAtLeast, true,
     false, false, "q(G) >= 2(n-delta+k-3) + 2 delta (delta-k+2)/(n-1)", ""},
    {RuleId::T4_4_qbar, "T4.4-qbar", Property::KConnected, GraphClass::AnyGraph, Side::QBarAtMost,
     true, false, true, "q(comp G) <= n-k+1",
     "K_{k-1} v (K_a u K_{n-k+1-a}), delta-k+2 <= a <= n-delta-1 (if and only if)"},
    {RuleId::C4_5_q1, "C4.5-q1", Property::MaximallyConnected, GraphClass::AnyGraph,
     Side::QAtLeast, false, false, true,
     "q(G) >= q1 = q(K_{delta-1} v (K_2 u K_{n-delta-1}))",
     "K_{delta-1} v (K_2 u K_{n-delta-1}) (if and only if)"},
    {RuleId::C4_6_q, "C4.6-q", Property::MaximallyConnected, GraphClass::AnyGraph, Side::QAtLeast,
     false, false, false, "q(G) >= 2(n-3) + 4 delta/(n-1)", ""},
    {RuleId::C4_7_qbar, "C4.7-qbar", Property::MaximallyConnected, GraphClass::AnyGraph,
     Side::QBarAtMost, false, false, true, "q(comp G) <= n-delta+1",
     "K_{delta-1} v (K_a u K_{n-delta+1-a}), 2 <= a <= n-delta-1 (if and only if)"},
    {RuleId::T4_8_q2, "T4.8-q2", Property::SuperKappa, GraphClass::AnyGraph, Side::QAtLeast, false,
     false, false, "q(G) >= q2 = q(K_delta v (K_2 u K_{n-delta-2}))", ""},
    {RuleId::T4_9_edge, "T4.9-edge", Property::SuperKappa, GraphClass::AnyGraph, Side::EdgeAtLeast,
     false, false, true, "m >= (n-2)(n-3)/2 + 2 delta",
     "(K_delta v (K_2 u K_{n-delta-2})) - e, d(x)=delta+1, d(y)=n-1 (unless)"},
    {RuleId::C4_10_q, "C4.10-q", Property::SuperKappa, GraphClass::AnyGraph, Side::QAtLeast, false,
     false, false, "q(G) >= 2(n-3) + (4 delta+2)/(n-1)", ""},
    {RuleId::T4_11_qbar, "T4.11-qbar", Property::SuperKappa, GraphClass::AnyGraph,
     Side::QBarAtMost, false, false, false, "q(comp G) <= n-delta", ""},
    {RuleId::T5_1_edge, "T5.1-edge", Property::KConnected, GraphClass::TriangleFree,
     Side::EdgeAtLeast, true, false, true, "m >= delta^2 + floor((n-2 delta+k-1)^2/4)",
     "X u C u Y: K_{delta,delta} and K_{floor(s/2),ceil(s/2)} glued on the edgeless cut C, "
     "s = n-2 delta+k-1 (unless)"},
    {RuleId::C5_2_q, "C5.2-q", Property::KConnected, GraphClass::TriangleFree, Side::QAtLeast,
     true, false, false,
     "q(G) >= n+k-2 delta-2 + 2 delta^2/(n-1) + floor((n-1+(k-2 delta)^2/(n-1))/2)", ""},
    {RuleId::T5_3_qbar, "T5.3-qbar", Property::KConnected, GraphClass::TriangleFree,
     Side::QBarAtMost, true, true, false,
     "q(comp G) <= 2(n-1) - 4 delta^2/n - floor((n-2 delta+k-1)^2/n)", ""},
    {RuleId::C5_4_q, "C5.4-q", Property::MaximallyConnected, GraphClass::TriangleFree,
     Side::QAtLeast, false, false, false,
     "q(G) >= n-delta-2 + 2 delta^2/(n-1) + floor((n-1+delta^2/(n-1))/2)", ""},
    {RuleId::C5_5_qbar, "C5.5-qbar", Property::MaximallyConnected, GraphClass::TriangleFree,
     Side::QBarAtMost, false, true, false,
     "q(comp G) <= 2(n-1) - 4 delta^2/n - floor((n-delta-1)^2/n)", ""},
    {RuleId::T5_6_edge, "T5.6-edge", Property::SuperKappa, GraphClass::TriangleFree,
     Side::EdgeAtLeast, false, false, false, "m >= delta^2 + floor((n-delta)^2/4)", ""},
    {RuleId::C5_6_q, "C5.6-q", Property::SuperKappa, GraphClass::TriangleFree, Side::QAtLeast,
     false, false, false,
     "q(G) >= n-delta-1 + 2 delta^2/(n-1) + floor((n-1+(delta-1)^2/(n-1))/2)", ""},
    {RuleId::T5_7_qbar, "T5.7-qbar", Property::SuperKappa, GraphClass::TriangleFree,
     Side::QBarAtMost, false, true, false,
     "q(comp G) <= 2(n-1) - 4 delta^2/n - floor((n-delta)^2/n)", ""},
}};

const std::vector<RuleInfo>& catalog_vector() {
  static const std::vector<RuleInfo> v(kCatalog.begin(), kCatalog.end());
  return v;
}

ThresholdValue from_rat(Rat r) {
  ThresholdValue v;
  v.value = r.to_double();
  v.exact = true;
  v.rational = r;
  return v;
}

ThresholdValue from_double(double d) {
  ThresholdValue v;
  v.value = d;
  v.exact = false;
  return v;
}

void require(bool ok, const std::string& hypothesis) {
  if (!ok) throw RangeError("rule hypothesis violated: " + hypothesis);
}

struct GirthPieces {
  int t;
  long long nu_value;
  double power_sum;  // (nu+k-1)^(1+1/t) + (n-nu)^(1+1/t)
  double scale;      // 1 for odd girth, 2^(1/t) for even girth
};

GirthPieces girth_pieces(const ThresholdContext& ctx) {
  require(ctx.girth.has_value(), "girth-parameterized rule needs a finite girth g >= 3");
  require(ctx.delta >= ctx.k && ctx.k >= 2, "delta >= k >= 2");
  int g = *ctx.girth;
  require(g >= 3, "g >= 3");
  GirthPieces p;
  p.t = (g - 1) / 2;
  p.nu_value = nu(ctx.delta, g, ctx.k - 1);
  // any graph that realizes (n, delta, g) satisfies the Moore bound, which
  // dominates nu; reject synthetic parameter tuples that do not
  require(ctx.n >= p.nu_value, "n >= nu(delta, g, k-1) so the power bases are nonnegative");
  double e = 1.0 + 1.0 / p.t;
  p.power_sum = std::pow(static_cast<double>(p.nu_value + ctx.k - 1), e) +
                std::pow(static_cast<double>(ctx.n - p.nu_value), e);
  p.scale = (g % 2 == 1) ? 1.0 : std::pow(2.0, 1.0 / p.t);
  return p;
}

}  // namespace

const std::vector<RuleInfo>& rule_catalog() { return catalog_vector(); }

const RuleInfo& rule_info(RuleId id) {
  for (const auto& r : catalog_vector())
    if (r.id == id) return r;
  throw Error("rule id not in catalog");
}

RuleId rule_from_name(std::string_view name) {
  for (const auto& r : catalog_vector())
    if (r.name == name) return r.id;
  throw Error("unknown rule '" + std::string(name) + "'");
}

ThresholdValue edge_threshold(RuleId rule, const ThresholdContext& ctx) {
  long long n = ctx.n, d = ctx.delta, k = ctx.k;
  switch (rule) {
    case RuleId::L3_1_edge: {
      GirthPieces p = girth_pieces(ctx);
      return from_double(p.power_sum / (2.0 * p.scale) + 0.5 * static_cast<double>(n + k - 1));
    }
    case RuleId::T4_2_edge:
      require(d >= k && k >= 2, "delta >= k >= 2");
      return from_rat(Rat(n * (n - 1) / 2 - (d - k + 2) * (n - d - 1)));
    case RuleId::T4_9_edge:
      require(d >= 1, "delta >= 1");
      return from_rat(Rat((n - 2) * (n - 3) / 2 + 2 * d));
    case RuleId::T5_1_edge: {
      require(d >= k && k >= 2, "delta >= k >= 2 (triangle-free)");
      long long s = n - 2 * d + k - 1;
      return from_rat(Rat(d * d + (s * s) / 4));
    }
    case RuleId::T5_6_edge:
      require(d >= 2, "delta >= 2 (triangle-free)");
      return from_rat(Rat(d * d + ((n - d) * (n - d)) / 4));
    default:
      throw RangeError("rule " + std::string(rule_info(rule).name) + " is not an edge rule");
  }
}

ThresholdValue q_threshold(RuleId rule, const ThresholdContext& ctx) {
  long long n = ctx.n, d = ctx.delta, k = ctx.k;
  switch (rule) {
    case RuleId::T3_2_q: {
      GirthPieces p = girth_pieces(ctx);
      return from_double(p.power_sum / (p.scale * (n - 1)) +
                         static_cast<double>(k) / static_cast<double>(n - 1) +
                         static_cast<double>(n - 1));
    }
    case RuleId::T4_1_q0:
      return from_double(largest_real_root(q0_cubic(ctx.n, ctx.delta, ctx.k)));
    case RuleId::C4_3_q:
      require(d >= k && k >= 2, "delta >= k >= 2");
      return from_rat(Rat(2 * (n - d + k - 3)) + Rat(2 * d * (d - k + 2), n - 1));
    case RuleId::C4_5_q1:
      return from_double(largest_real_root(q1_cubic(ctx.n, ctx.delta)));
    case RuleId::C4_6_q:
      require(d >= 2, "delta >= 2");
      return from_rat(Rat(2 * (n - 3)) + Rat(4 * d, n - 1));
    case RuleId::T4_8_q2:
      return from_double(largest_real_root(q2_cubic(ctx.n, ctx.delta)));
    case RuleId::C4_10_q:
      require(d >= 1, "delta >= 1");
      return from_rat(Rat(2 * (n - 3)) + Rat(4 * d + 2, n - 1));
    case RuleId::C5_2_q: {
      require(d >= k && k >= 2, "delta >= k >= 2 (triangle-free)");
      long long sq = (k - 2 * d) * (k - 2 * d);
      long long floor_term = ((n - 1) * (n - 1) + sq) / (2 * (n - 1));
      return from_rat(Rat(n + k - 2 * d - 2) + Rat(2 * d * d, n - 1) + Rat(floor_term));
    }
    case RuleId::C5_4_q: {
      require(d >= 2, "delta >= 2 (triangle-free)");
      ThresholdContext at_delta = ctx;
      at_delta.k = ctx.delta;
      return q_threshold(RuleId::C5_2_q, at_delta);
    }
    case RuleId::C5_6_q: {
      require(d >= 2, "delta >= 2 (triangle-free)");
      long long sq = (d - 1) * (d - 1);
      long long floor_term = ((n - 1) * (n - 1) + sq) / (2 * (n - 1));
      return from_rat(Rat(n - d - 1) + Rat(2 * d * d, n - 1) + Rat(floor_term));
    }
    default:
      throw RangeError("rule " + std::string(rule_info(rule).name) + " is not a q(G) rule");
  }
}

ThresholdValue q_complement_threshold(RuleId rule, const ThresholdContext& ctx) {
  long long n = ctx.n, d = ctx.delta, k = ctx.k;
  switch (rule) {
    case RuleId::T3_3_qbar: {
      GirthPieces p = girth_pieces(ctx);
      return from_double(2.0 * (n - 1) - 2.0 * p.power_sum / (p.scale * n) -
                         2.0 * static_cast<double>(n + k - 1) / static_cast<double>(n));
    }
    case RuleId::T4_4_qbar:
      require(d >= k && k >= 2, "delta >= k >= 2");
      require(d - k + 2 <= n - d - 1,
              "an admissible part size a with delta-k+2 <= a <= n-delta-1 must exist");
      return from_rat(Rat(n - k + 1));
    case RuleId::C4_7_qbar: {
      require(d >= 2, "delta >= 2");
      ThresholdContext at_delta = ctx;
      at_delta.k = ctx.delta;
      return q_complement_threshold(RuleId::T4_4_qbar, at_delta);
    }
    case RuleId::T4_11_qbar:
      require(d >= 1, "delta >= 1");
      return from_rat(Rat(n - d));
    case RuleId::T5_3_qbar: {
      require(d >= k && k >= 2, "delta >= k >= 2 (triangle-free)");
      long long s = n - 2 * d + k - 1;
      return from_rat(Rat(2 * (n - 1)) - Rat(4 * d * d, n) - Rat((s * s) / n));
    }
    case RuleId::C5_5_qbar: {
      require(d >= 2, "delta >= 2 (triangle-free)");
      ThresholdContext at_delta = ctx;
      at_delta.k = ctx.delta;
      return q_complement_threshold(RuleId::T5_3_qbar, at_delta);
    }
    case RuleId::T5_7_qbar:
      require(d >= 2, "delta >= 2 (triangle-free)");
      return from_rat(Rat(2 * (n - 1)) - Rat(4 * d * d, n) - Rat(((n - d) * (n - d)) / n));
    default:
      throw RangeError("rule " + std::string(rule_info(rule).name) + " is not a q(complement) rule");
  }
}

ThresholdValue threshold_value(RuleId rule, const ThresholdContext& ctx) {
  switch (rule_info(rule).side) {
    case Side::EdgeAtLeast:
      return edge_threshold(rule, ctx);
    case Side::QAtLeast:
      return q_threshold(rule, ctx);
    case Side::QBarAtMost:
      return q_complement_threshold(rule, ctx);
  }
  throw Error("unreachable");
}

}  // namespace qcert
