#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcert/certify.hpp"

namespace qcert {

// Labeled graph on n vertices from a C(n,2)-bit edge mask; bit j(j-1)/2 + i
// is the edge {i,j} for i < j (the graph6 bit order).
Graph graph_from_mask(int n, std::uint64_t mask);

// Deterministic mask-order enumeration of labeled connected graphs.
// Exhaustive regime is 2 <= n <= 7; larger orders need a corpus file.
void enumerate_connected(int n, const std::function<bool(const Graph&)>& filter,
                         const std::function<void(const Graph&)>& yield);

struct VerifyOptions {
  int n_min = 2;
  int n_max = 7;
  std::string corpus_path;  // graph6 lines; supplies every order above 7
  int workers = 0;          // 0 = QCERT_WORKERS env or hardware concurrency
  double eps = kSpectralEps;
};

struct NKCount {
  int n = 0;
  int k = 0;  // 0 for k-free rules
  long long eligible = 0;
  long long satisfying = 0;
};

struct MarginBin {
  double lo = 0;
  double hi = 0;
  long long count = 0;
};

struct RuleVerification {
  RuleId rule{};
  std::string source;  // "exhaustive" or "exhaustive+corpus:<path>"
  int n_min = 0;
  int n_max = 0;
  long long scanned = 0;      // connected graphs scanned in range
  long long eligible = 0;     // applicable (graph, k) instances
  long long satisfying = 0;   // hypothesis satisfied, before exclusion
  long long fired = 0;        // hypothesis satisfied, after exclusion
  long long boundary_exceptional = 0;
  long long extended_exclusions = 0;      // equality-boundary guard hits
  long long complete_graphs_skipped = 0;  // super-kappa rules skip K_n
  std::vector<std::string> counterexamples;           // fired but property fails
  std::vector<std::string> biconditional_violations;  // template satisfied hypothesis, property holds
  std::optional<double> min_positive_margin;
  std::string min_positive_witness;
  std::vector<MarginBin> histogram;  // margins of applicable instances
  std::vector<NKCount> per_nk;       // vacuity bookkeeping
  // Observational only: rules that hypothesize a connected complement,
  // re-examined on graphs whose complement is disconnected.
  long long obs_disc_complement_checked = 0;
  long long obs_disc_complement_would_fire = 0;
  long long obs_disc_complement_violations = 0;

  bool pass() const { return counterexamples.empty() && biconditional_violations.empty(); }
};

struct ScanReport {
  std::vector<RuleVerification> rules;
  std::vector<std::pair<int, long long>> connected_counts;  // per order
  long long scanned = 0;
  long long corpus_lines_skipped = 0;     // disconnected or out-of-range corpus lines
  long long kappa_oracle_mismatches = 0;  // flow route vs subset-scan route
  long long graph6_roundtrip_failures = 0;
  // lemma suite violation counters (zero on a correct build)
  long long q_lower_bound_violations = 0;
  long long q_lower_equality_mismatches = 0;
  long long q_upper_bound_violations = 0;
  long long q_upper_equality_mismatches = 0;
  long long edge_cap_violations = 0;
  long long edge_cap_equality_mismatches = 0;
  long long component_bound_violations = 0;
  long long girth_bound_violations = 0;
  bool bound_suite_ran = false;
};

// One parallel pass over the range: evaluates the requested rules on every
// enumerated (or corpus) connected graph, with ground truth from the
// subset-scan kappa oracle cross-checked against the flow route.
ScanReport run_scan(const std::vector<RuleId>& rules, const VerifyOptions& opt,
                    bool bound_suite = false);

RuleVerification verify_rule(RuleId rule, const VerifyOptions& opt);

// --- extremal-family tightness ---

struct TightnessPoint {
  int n = 0;
  int delta = 0;
  int k = 0;
  std::optional<int> a;  // family parameter for the T4.4 / C4.7 families
  bool feasible = false;
  std::string note;  // why a point was skipped
  std::string graph6;
  double hypothesis_value = 0;
  double threshold = 0;
  bool meets_threshold = false;   // equality, exact or within the cubic tolerance
  bool fails_conclusion = false;  // kappa = k-1, or not super-kappa
  bool pass = false;
};

struct TightnessReport {
  RuleId rule{};
  std::vector<TightnessPoint> points;
  bool pass = false;
};

// Grid of (n, delta, k); rules without an exceptional family are rejected.
TightnessReport tightness(RuleId rule, const std::vector<std::array<int, 3>>& grid);

// --- margin sweep ---

struct SweepRow {
  int n = 0;
  int delta = 0;
  int k = 0;
  long long eligible = 0;
  long long satisfying = 0;
  double min_margin = 0;
  double max_margin = 0;
  double min_abs_gap = 0;
  std::string min_abs_gap_graph6;
  bool min_abs_gap_is_template = false;
  std::optional<double> min_positive_margin;
  std::string min_positive_graph6;
};

struct SweepTable {
  RuleId rule{};
  std::vector<SweepRow> rows;  // sorted by (n, delta, k)
};

SweepTable margin_sweep(RuleId rule, const VerifyOptions& opt);

int resolve_workers(int requested);

}  // namespace qcert
