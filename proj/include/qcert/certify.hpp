#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcert/graph.hpp"
#include "qcert/spectral.hpp"
#include "qcert/structure.hpp"
#include "qcert/thresholds.hpp"

namespace qcert {

enum class TargetProperty { KConnected, MaximallyConnected, SuperKappa };

std::string_view target_property_name(TargetProperty p);
TargetProperty target_property_from_name(std::string_view name);

// Everything a rule evaluation needs to know about one graph. The graph
// pointer is only consulted for exceptional-family isomorphism checks.
struct GraphFacts {
  const Graph* graph = nullptr;
  int n = 0;
  long long m = 0;
  int delta = 0;
  std::optional<int> girth;
  bool triangle_free = false;
  double q = 0;
  double q_bar = 0;
  bool complement_connected = false;
};

GraphFacts compute_facts(const Graph& g);

struct RuleResult {
  RuleId rule;
  std::string label;  // rule name, or derived id such as "T3.2-q@k=delta"
  int k = 0;          // k the rule was evaluated at (0 when k-free)
  bool applicable = false;
  std::optional<double> hypothesis_value;
  std::optional<ThresholdValue> threshold;
  bool fired = false;
  std::optional<double> margin;
  bool near_boundary = false;
  std::optional<FamilySpec> exceptional_match;
  bool boundary_exceptional = false;  // hypothesis held and graph is excluded
  // Exclusion beyond the printed family: the q(complement) rules T4.4, C4.7
  // and T4.11 admit extra graphs at their exact equality boundary (any graph
  // whose complement has a complete bipartite component of the forced part
  // sizes attains the bound and fails the conclusion). The engine excludes
  // them so fired certificates stay sound.
  bool extended_exclusion = false;
  std::string exclusion_note;
  std::string inapplicable_reason;  // empty when applicable
};

// Evaluates one catalog rule against precomputed facts. Class or range
// mismatches are reported as inapplicable, never thrown.
RuleResult evaluate_rule(const GraphFacts& facts, RuleId rule, int k, double eps = kSpectralEps);

// The family excluded by the rule's "unless"/"if and only if" clause that g is
// isomorphic to, if any. Rules without exceptional families return nullopt.
std::optional<FamilySpec> exceptional_match(const Graph& g, RuleId rule,
                                            const ThresholdContext& ctx);

// Rules whose exclusion clause is an "if and only if" (the template provably
// fails the property): T4.1, T4.4, C4.5, C4.7.
bool rule_is_biconditional(RuleId rule);

struct Certificate {
  std::string graph6;
  TargetProperty property = TargetProperty::KConnected;
  std::optional<int> k;  // set for k-connected certificates
  StructureReport structure;
  SpectralReport spectra;
  std::vector<RuleResult> rule_results;
  bool certified = false;  // verdict: certified | not-certified-by-these-rules
  bool ground_truth_known = false;
  bool ground_truth_holds = false;
  bool ground_truth_agrees = false;
};

// Both reports for a connected graph; throws Error listing components when
// the input is disconnected.
std::pair<StructureReport, SpectralReport> analyze(const Graph& g, double eps = kSpectralEps);

// Evaluates every catalog rule targeting `property` (k-connected rules at the
// given k; others at k = delta or k-free) and cross-checks ground truth.
Certificate certify(const Graph& g, TargetProperty property, int k = 0,
                    double eps = kSpectralEps);

}  // namespace qcert
