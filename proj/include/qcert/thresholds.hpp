#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcert/errors.hpp"

namespace qcert {

// Exact rational over long long; every rational bound formula is evaluated in
// this type so integer-scaled comparisons carry no floating error.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rat(long long n, long long d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return *this < o || *this == o; }

  long long floor_div() const;  // floor(num/den)
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

// nu(delta, g, kappa): lower bound on the order of a component left by a
// kappa-cut in a graph of minimum degree delta and girth g; t = floor((g-1)/2).
long long nu(int delta, int g, int kappa);

// Strict girth edge bound: 1/2 n^{1+1/t} + n/2 for odd girth 2t+1, and
// 2^{-(1+1/t)} n^{1+1/t} + n/2 for even girth 2t+2.
double girth_edge_bound(long long n, int g);

enum class RuleId {
  L3_1_edge,
  T3_2_q,
  T3_3_qbar,
  T4_1_q0,
  T4_2_edge,
  C4_3_q,
  T4_4_qbar,
  C4_5_q1,
  C4_6_q,
  C4_7_qbar,
  T4_8_q2,
  T4_9_edge,
  C4_10_q,
  T4_11_qbar,
  T5_1_edge,
  C5_2_q,
  T5_3_qbar,
  C5_4_q,
  C5_5_qbar,
  T5_6_edge,
  C5_6_q,
  T5_7_qbar,
};

enum class Property { KConnected, MaximallyConnected, SuperKappa };
enum class GraphClass { GeneralGirth, AnyGraph, TriangleFree };
enum class Side { EdgeAtLeast, QAtLeast, QBarAtMost };

struct RuleInfo {
  RuleId id;
  std::string_view name;  // "T4.1-q0" etc.
  Property property;
  GraphClass cls;
  Side side;
  bool needs_k;                         // k-parameterized hypothesis
  bool needs_connected_complement;      // triangle-free complement rules
  bool has_exceptional_family;
  std::string_view formula;
  std::string_view exceptional;  // family description, empty when none
};

const std::vector<RuleInfo>& rule_catalog();
const RuleInfo& rule_info(RuleId id);
RuleId rule_from_name(std::string_view name);

// Parameter tuple of the bound formulas. `girth` is consulted only by the
// exact-girth rules (L3.1, T3.2, T3.3); `k` only by k-parameterized rules.
struct ThresholdContext {
  int n = 0;
  int delta = 0;
  std::optional<int> girth;
  int k = 0;
};

struct ThresholdValue {
  double value = 0;
  bool exact = false;            // rational in the integer inputs
  std::optional<Rat> rational;   // present when exact
};

// Per-side entry points; each validates that the rule has the right
// comparison side and that the context satisfies the rule's hypothesis
// ranges, throwing RangeError naming the violated hypothesis otherwise.
ThresholdValue edge_threshold(RuleId rule, const ThresholdContext& ctx);
ThresholdValue q_threshold(RuleId rule, const ThresholdContext& ctx);
ThresholdValue q_complement_threshold(RuleId rule, const ThresholdContext& ctx);

// Side-dispatching convenience wrapper.
ThresholdValue threshold_value(RuleId rule, const ThresholdContext& ctx);

}  // namespace qcert
