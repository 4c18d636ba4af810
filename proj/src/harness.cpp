#include "qcert/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace qcert {

Graph graph_from_mask(int n, std::uint64_t mask) {
  if (n < 1 || n > 11) throw RegimeError("graph_from_mask supports n <= 11 (64 mask bits)");
  Graph g(n);
  int bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit)
      if ((mask >> bit) & 1) g.add_edge(i, j);
  return g;
}

void enumerate_connected(int n, const std::function<bool(const Graph&)>& filter,
                         const std::function<void(const Graph&)>& yield) {
  if (n < 2 || n > 7)
    throw RegimeError(
        "exhaustive labeled enumeration supports 2 <= n <= 7; supply a corpus file for larger "
        "orders");
  std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Graph g = graph_from_mask(n, mask);
    if (!is_connected(g)) continue;
    if (filter && !filter(g)) continue;
    yield(g);
  }
}

int resolve_workers(int requested) {
  if (requested > 0) return std::min(requested, 256);
  if (const char* env = std::getenv("QCERT_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, 256);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 256u));
}

// ---------------------------------------------------------------------------
// parallel scan driver

namespace {

constexpr std::array<double, 15> kBinEdges{-1e300, -8, -4, -2, -1, -0.5, -0.25, 0,
                                           0.25,   0.5, 1,  2,  4,  8,   1e300};
constexpr int kBinCount = 14;

int margin_bin(double m) {
  for (int b = 0; b < kBinCount; ++b)
    if (m <= kBinEdges[b + 1]) return b;
  return kBinCount - 1;
}

// ground truth for one scanned graph; kappa comes from the subset-scan oracle
struct Profile {
  Graph g;
  std::string g6;
  GraphFacts facts;
  int kappa = 0;
  bool maximal = false;
  bool super = false;
  bool complete = false;
  std::vector<std::vector<int>> min_cuts;

  explicit Profile(Graph&& graph) : g(std::move(graph)) {}
};

struct CommonStats {
  long long scanned = 0;
  long long skipped = 0;
  long long kappa_mismatches = 0;
  long long roundtrip_failures = 0;
  std::map<int, long long> counts;

  void merge(const CommonStats& o) {
    scanned += o.scanned;
    skipped += o.skipped;
    kappa_mismatches += o.kappa_mismatches;
    roundtrip_failures += o.roundtrip_failures;
    for (auto& [n, c] : o.counts) counts[n] += c;
  }
};

struct Task {
  int n = 0;                 // enumeration order, 0 for corpus tasks
  std::uint64_t mask_lo = 0;
  std::uint64_t mask_hi = 0;
  std::size_t line_lo = 0;
  std::size_t line_hi = 0;
};

// facts.graph is left null; the caller re-points it at the profile's own
// graph once the object has its final address
Profile build_profile(Graph&& graph, CommonStats& stats) {
  Profile p(std::move(graph));
  p.g6 = to_graph6(p.g);
  if (from_graph6(p.g6) != p.g) ++stats.roundtrip_failures;
  p.facts = compute_facts(p.g);
  p.facts.graph = nullptr;
  p.kappa = brute_force_connectivity(p.g);
  if (vertex_connectivity(p.g).kappa != p.kappa) ++stats.kappa_mismatches;
  p.complete = p.facts.m == static_cast<long long>(p.facts.n) * (p.facts.n - 1) / 2;
  p.maximal = p.kappa == p.facts.delta;
  p.min_cuts = all_min_cuts(p.g, p.kappa);
  p.super = true;
  for (const auto& cut : p.min_cuts) {
    bool isolates = false;
    for (const auto& comp : components_after_removal(p.g, cut))
      if (comp.size() == 1 && p.g.degree(comp[0]) == p.facts.delta) {
        isolates = true;
        break;
      }
    if (!isolates) {
      p.super = false;
      break;
    }
  }
  return p;
}

std::vector<std::string> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      (void)from_graph6(line);
    } catch (const ParseError& e) {
      throw Error("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
    lines.push_back(line);
  }
  return lines;
}

// Visit must be thread-compatible: it only touches its own accumulator.
template <typename Acc>
std::pair<Acc, CommonStats> parallel_scan(const VerifyOptions& opt,
                                          const std::function<void(const Profile&, Acc&)>& visit) {
  if (opt.n_max > 7 && opt.corpus_path.empty())
    throw RegimeError("orders above 7 need a corpus file of graph6 lines");

  std::vector<std::string> corpus;
  if (!opt.corpus_path.empty() && opt.n_max > 7) corpus = load_corpus(opt.corpus_path);

  std::vector<Task> tasks;
  constexpr std::uint64_t kMaskChunk = 1 << 14;
  for (int n = std::max(2, opt.n_min); n <= std::min(7, opt.n_max); ++n) {
    std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
    for (std::uint64_t lo = 0; lo < total; lo += kMaskChunk) {
      Task t;
      t.n = n;
      t.mask_lo = lo;
      t.mask_hi = std::min(total, lo + kMaskChunk);
      tasks.push_back(t);
    }
  }
  constexpr std::size_t kLineChunk = 2048;
  for (std::size_t lo = 0; lo < corpus.size(); lo += kLineChunk) {
    Task t;
    t.line_lo = lo;
    t.line_hi = std::min(corpus.size(), lo + kLineChunk);
    tasks.push_back(t);
  }

  int workers = resolve_workers(opt.workers);
  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  Acc global;
  CommonStats global_stats;
  std::exception_ptr first_error;

  auto work = [&]() {
    Acc local;
    CommonStats stats;
    try {
      for (;;) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= tasks.size()) break;
        const Task& t = tasks[idx];
        if (t.n > 0) {
          for (std::uint64_t mask = t.mask_lo; mask < t.mask_hi; ++mask) {
            Graph g = graph_from_mask(t.n, mask);
            if (!is_connected(g)) continue;
            Profile p = build_profile(std::move(g), stats);
            p.facts.graph = &p.g;
            ++stats.scanned;
            ++stats.counts[t.n];
            visit(p, local);
          }
        } else {
          for (std::size_t i = t.line_lo; i < t.line_hi; ++i) {
            Graph g = from_graph6(corpus[i]);
            int n = g.order();
            if (n <= 7 || n < opt.n_min || n > opt.n_max || !is_connected(g)) {
              ++stats.skipped;
              continue;
            }
            Profile p = build_profile(std::move(g), stats);
            p.facts.graph = &p.g;
            ++stats.scanned;
            ++stats.counts[n];
            visit(p, local);
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(merge_mutex);
      if (!first_error) first_error = std::current_exception();
      return;
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    global.merge(local);
    global_stats.merge(stats);
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return {std::move(global), std::move(global_stats)};
}

bool property_holds(Property property, const Profile& p, int k) {
  switch (property) {
    case Property::KConnected:
      return p.kappa >= k;
    case Property::MaximallyConnected:
      return p.maximal;
    case Property::SuperKappa:
      return p.super;
  }
  return false;
}

// --- rule verification accumulator ---

struct MinWitness {
  double value = 0;
  std::string g6;
  bool set = false;

  void offer(double v, const std::string& w) {
    if (!set || v < value || (v == value && w < g6)) {
      value = v;
      g6 = w;
      set = true;
    }
  }
  void merge(const MinWitness& o) {
    if (o.set) offer(o.value, o.g6);
  }
};

struct RuleAccum {
  long long eligible = 0;
  long long satisfying = 0;
  long long fired = 0;
  long long boundary = 0;
  long long extended_exclusions = 0;
  long long complete_skipped = 0;
  std::vector<std::string> counterexamples;
  std::vector<std::string> bicond_violations;
  MinWitness min_positive;
  std::array<long long, kBinCount> bins{};
  std::map<std::pair<int, int>, std::pair<long long, long long>> per_nk;
  long long obs_checked = 0;
  long long obs_fire = 0;
  long long obs_viol = 0;

  void merge(const RuleAccum& o) {
    eligible += o.eligible;
    satisfying += o.satisfying;
    fired += o.fired;
    boundary += o.boundary;
    extended_exclusions += o.extended_exclusions;
    complete_skipped += o.complete_skipped;
    counterexamples.insert(counterexamples.end(), o.counterexamples.begin(),
                           o.counterexamples.end());
    bicond_violations.insert(bicond_violations.end(), o.bicond_violations.begin(),
                             o.bicond_violations.end());
    min_positive.merge(o.min_positive);
    for (int b = 0; b < kBinCount; ++b) bins[b] += o.bins[b];
    for (auto& [key, val] : o.per_nk) {
      auto& slot = per_nk[key];
      slot.first += val.first;
      slot.second += val.second;
    }
    obs_checked += o.obs_checked;
    obs_fire += o.obs_fire;
    obs_viol += o.obs_viol;
  }
};

struct BoundAccum {
  long long lower = 0, lower_eq = 0;    // q >= 4m/n, equality iff regular
  long long upper = 0, upper_eq = 0;    // q <= 2m/(n-1)+n-2, equality iff K_n or star
  long long cap = 0, cap_eq = 0;        // triangle-free m <= n^2/4, equality iff balanced
  long long component = 0;              // min-cut components have >= nu vertices
  long long girth_edges = 0;            // m < girth edge bound, strictly

  void merge(const BoundAccum& o) {
    lower += o.lower;
    lower_eq += o.lower_eq;
    upper += o.upper;
    upper_eq += o.upper_eq;
    cap += o.cap;
    cap_eq += o.cap_eq;
    component += o.component;
    girth_edges += o.girth_edges;
  }
};

struct VerifyAccum {
  std::vector<RuleAccum> rules;
  BoundAccum bounds;

  void merge(const VerifyAccum& o) {
    if (rules.size() < o.rules.size()) rules.resize(o.rules.size());
    for (std::size_t i = 0; i < o.rules.size(); ++i) rules[i].merge(o.rules[i]);
    bounds.merge(o.bounds);
  }
};

bool graph_is_balanced_complete_bipartite(const Graph& g) {
  int n = g.order();
  if (n < 2) return false;
  return is_isomorphic(g, construct(CompleteBipartite{n / 2, (n + 1) / 2}));
}

bool graph_is_star(const Graph& g) {
  int n = g.order();
  if (n < 2) return false;
  auto ds = g.degree_sequence();
  if (ds.back() != n - 1) return false;
  for (int i = 0; i + 1 < n; ++i)
    if (ds[i] != 1) return false;
  return true;
}

void check_bound_suite(const Profile& p, double eps, BoundAccum& acc) {
  int n = p.facts.n;
  double m = static_cast<double>(p.facts.m);
  bool regular = p.g.degree_sequence().front() == p.g.degree_sequence().back();

  double lower = 4.0 * m / n;
  if (p.facts.q < lower - eps) ++acc.lower;
  if ((std::fabs(p.facts.q - lower) <= eps) != regular) ++acc.lower_eq;

  if (n >= 2) {
    double upper = 2.0 * m / (n - 1) + n - 2;
    if (p.facts.q > upper + eps) ++acc.upper;
    bool extremal = p.complete || graph_is_star(p.g);
    if ((std::fabs(p.facts.q - upper) <= eps) != extremal) ++acc.upper_eq;
  }

  if (p.facts.triangle_free) {
    long long cap = static_cast<long long>(n) * n / 4;
    if (p.facts.m > cap) ++acc.cap;
    if ((p.facts.m == cap) != graph_is_balanced_complete_bipartite(p.g)) ++acc.cap_eq;
  }

  if (p.facts.delta >= 2 && p.kappa >= 1 && p.kappa < p.facts.delta && p.facts.girth) {
    long long bound = nu(p.facts.delta, *p.facts.girth, p.kappa);
    for (const auto& cut : p.min_cuts)
      for (const auto& comp : components_after_removal(p.g, cut))
        if (static_cast<long long>(comp.size()) < bound) ++acc.component;
  }

  if (p.facts.girth) {
    double bound = girth_edge_bound(n, *p.facts.girth);
    if (m >= bound - eps) ++acc.girth_edges;
  }
}

void visit_rules(const Profile& p, const std::vector<RuleId>& rules, double eps,
                 bool bound_suite, VerifyAccum& acc) {
  if (acc.rules.size() < rules.size()) acc.rules.resize(rules.size());
  if (bound_suite) check_bound_suite(p, eps, acc.bounds);

  for (std::size_t ri = 0; ri < rules.size(); ++ri) {
    RuleId rule = rules[ri];
    const RuleInfo& info = rule_info(rule);
    RuleAccum& ra = acc.rules[ri];

    // convention insensitivity: complete graphs stay out of super-kappa checks
    if (info.property == Property::SuperKappa && p.complete) {
      ++ra.complete_skipped;
      continue;
    }

    int klo = info.needs_k ? 2 : 0;
    int khi = info.needs_k ? p.facts.delta : 0;
    for (int k = klo; k <= khi; ++k) {
      RuleResult rr = evaluate_rule(p.facts, rule, k, eps);
      if (!rr.applicable) {
        // observational corner: the "complement connected" hypothesis dropped
        if (info.needs_connected_complement && !p.facts.complement_connected &&
            (info.cls != GraphClass::TriangleFree || p.facts.triangle_free)) {
          ThresholdContext ctx{p.facts.n, p.facts.delta, p.facts.girth,
                               info.needs_k ? k : p.facts.delta};
          try {
            ThresholdValue thr = threshold_value(rule, ctx);
            ++ra.obs_checked;
            if (p.facts.q_bar <= thr.value + eps) {
              ++ra.obs_fire;
              if (!property_holds(info.property, p, k)) ++ra.obs_viol;
            }
          } catch (const RangeError&) {
          }
        }
        continue;
      }

      auto& nk = ra.per_nk[{p.facts.n, info.needs_k ? k : 0}];
      ++ra.eligible;
      ++nk.first;
      double margin = *rr.margin;
      ++ra.bins[margin_bin(margin)];

      bool satisfied = rr.fired || rr.boundary_exceptional;
      if (satisfied) {
        ++ra.satisfying;
        ++nk.second;
        if (margin > 0) ra.min_positive.offer(margin, p.g6);
      }
      bool holds = property_holds(info.property, p, k);
      if (rr.fired) {
        ++ra.fired;
        if (!holds) ra.counterexamples.push_back(p.g6);
      }
      if (rr.boundary_exceptional) {
        ++ra.boundary;
        if (rr.extended_exclusion) ++ra.extended_exclusions;
        // the exclusion (printed family or equality guard) asserts failure
        if ((rule_is_biconditional(rule) || rr.extended_exclusion) && holds)
          ra.bicond_violations.push_back(p.g6);
      }
    }
  }
}

void sorted_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ScanReport run_scan(const std::vector<RuleId>& rules, const VerifyOptions& opt,
                    bool bound_suite) {
  auto [acc, stats] = parallel_scan<VerifyAccum>(opt, [&](const Profile& p, VerifyAccum& a) {
    visit_rules(p, rules, opt.eps, bound_suite, a);
  });
  acc.rules.resize(rules.size());

  ScanReport report;
  report.scanned = stats.scanned;
  report.corpus_lines_skipped = stats.skipped;
  report.kappa_oracle_mismatches = stats.kappa_mismatches;
  report.graph6_roundtrip_failures = stats.roundtrip_failures;
  for (auto& [n, c] : stats.counts) report.connected_counts.emplace_back(n, c);

  std::string source = "exhaustive";
  if (!opt.corpus_path.empty() && opt.n_max > 7) source += "+corpus:" + opt.corpus_path;

  for (std::size_t i = 0; i < rules.size(); ++i) {
    RuleAccum& ra = acc.rules[i];
    RuleVerification v;
    v.rule = rules[i];
    v.source = source;
    v.n_min = opt.n_min;
    v.n_max = opt.n_max;
    v.scanned = stats.scanned;
    v.eligible = ra.eligible;
    v.satisfying = ra.satisfying;
    v.fired = ra.fired;
    v.boundary_exceptional = ra.boundary;
    v.extended_exclusions = ra.extended_exclusions;
    v.complete_graphs_skipped = ra.complete_skipped;
    sorted_unique(ra.counterexamples);
    sorted_unique(ra.bicond_violations);
    v.counterexamples = std::move(ra.counterexamples);
    v.biconditional_violations = std::move(ra.bicond_violations);
    if (ra.min_positive.set) {
      v.min_positive_margin = ra.min_positive.value;
      v.min_positive_witness = ra.min_positive.g6;
    }
    for (int b = 0; b < kBinCount; ++b)
      v.histogram.push_back({kBinEdges[b], kBinEdges[b + 1], ra.bins[b]});
    for (auto& [key, val] : ra.per_nk)
      v.per_nk.push_back({key.first, key.second, val.first, val.second});
    v.obs_disc_complement_checked = ra.obs_checked;
    v.obs_disc_complement_would_fire = ra.obs_fire;
    v.obs_disc_complement_violations = ra.obs_viol;
    report.rules.push_back(std::move(v));
  }
  report.bound_suite_ran = bound_suite;
  report.q_lower_bound_violations = acc.bounds.lower;
  report.q_lower_equality_mismatches = acc.bounds.lower_eq;
  report.q_upper_bound_violations = acc.bounds.upper;
  report.q_upper_equality_mismatches = acc.bounds.upper_eq;
  report.edge_cap_violations = acc.bounds.cap;
  report.edge_cap_equality_mismatches = acc.bounds.cap_eq;
  report.component_bound_violations = acc.bounds.component;
  report.girth_bound_violations = acc.bounds.girth_edges;
  return report;
}

RuleVerification verify_rule(RuleId rule, const VerifyOptions& opt) {
  ScanReport report = run_scan({rule}, opt, false);
  return std::move(report.rules.front());
}

// ---------------------------------------------------------------------------
// tightness of the extremal families

namespace {

TightnessPoint check_template(RuleId rule, int n, int delta, int k, std::optional<int> a_param,
                              const FamilySpec& spec, const ThresholdValue& thr,
                              Side side, Property property) {
  TightnessPoint pt;
  pt.n = n;
  pt.delta = delta;
  pt.k = k;
  pt.a = a_param;
  pt.feasible = true;
  Graph t = construct(spec);
  pt.graph6 = to_graph6(t);
  pt.threshold = thr.value;
  switch (side) {
    case Side::EdgeAtLeast: {
      long long m = t.size();
      pt.hypothesis_value = static_cast<double>(m);
      pt.meets_threshold = thr.rational.has_value() && Rat(m) == *thr.rational;
      break;
    }
    case Side::QAtLeast:
      pt.hypothesis_value = q_index(t);
      pt.meets_threshold = std::fabs(pt.hypothesis_value - thr.value) <= kCubicEps;
      break;
    case Side::QBarAtMost:
      pt.hypothesis_value = q_index(complement(t));
      pt.meets_threshold = std::fabs(pt.hypothesis_value - thr.value) <= kSpectralEps;
      break;
  }
  int kappa = vertex_connectivity(t).kappa;
  switch (property) {
    case Property::KConnected:
      pt.fails_conclusion = kappa == k - 1;
      break;
    case Property::MaximallyConnected:
      // families with a > 2 have minimum degree above the nominal delta;
      // failing the conclusion means kappa is below the graph's own delta
      pt.fails_conclusion = kappa == delta - 1 && kappa < t.min_degree();
      break;
    case Property::SuperKappa:
      pt.fails_conclusion = t.order() <= 16 && !is_super_kappa(t);
      break;
  }
  if (rule == RuleId::T5_1_edge) pt.fails_conclusion = pt.fails_conclusion && is_triangle_free(t);
  pt.pass = pt.meets_threshold && pt.fails_conclusion;
  return pt;
}

TightnessPoint skipped_point(int n, int delta, int k, const std::string& note) {
  TightnessPoint pt;
  pt.n = n;
  pt.delta = delta;
  pt.k = k;
  pt.feasible = false;
  pt.note = note;
  pt.pass = true;  // infeasible points are skipped, not failed
  return pt;
}

}  // namespace

TightnessReport tightness(RuleId rule, const std::vector<std::array<int, 3>>& grid) {
  const RuleInfo& info = rule_info(rule);
  if (!info.has_exceptional_family)
    throw Error("rule " + std::string(info.name) + " has no exceptional family");

  TightnessReport report;
  report.rule = rule;
  for (auto [n, delta, k] : grid) {
    ThresholdContext ctx{n, delta, std::nullopt, k};
    try {
      switch (rule) {
        case RuleId::T4_1_q0:
        case RuleId::T4_2_edge: {
          if (n < delta + 2) {
            report.points.push_back(skipped_point(n, delta, k, "needs n >= delta+2"));
            break;
          }
          ThresholdValue thr = threshold_value(rule, ctx);
          report.points.push_back(check_template(
              rule, n, delta, k, std::nullopt,
              JoinCliques{k - 1, delta - k + 2, n - delta - 1}, thr, info.side, info.property));
          break;
        }
        case RuleId::T4_4_qbar: {
          if (delta - k + 2 > n - delta - 1) {
            report.points.push_back(skipped_point(n, delta, k, "empty part-size range"));
            break;
          }
          ThresholdValue thr = threshold_value(rule, ctx);
          for (int a = delta - k + 2; a <= n - delta - 1; ++a) {
            int b = n - k + 1 - a;
            if (b < a) break;
            report.points.push_back(check_template(rule, n, delta, k, a,
                                                   JoinCliques{k - 1, a, b}, thr, info.side,
                                                   info.property));
          }
          break;
        }
        case RuleId::C4_5_q1: {
          if (n < delta + 3) {
            report.points.push_back(skipped_point(n, delta, delta, "needs n >= delta+3"));
            break;
          }
          ThresholdValue thr = threshold_value(rule, ctx);
          report.points.push_back(check_template(rule, n, delta, delta, std::nullopt,
                                                 JoinCliques{delta - 1, 2, n - delta - 1}, thr,
                                                 info.side, info.property));
          break;
        }
        case RuleId::C4_7_qbar: {
          if (n < delta + 3) {
            report.points.push_back(skipped_point(n, delta, delta, "empty part-size range"));
            break;
          }
          ThresholdValue thr = threshold_value(rule, ctx);
          for (int a = 2; a <= n - delta - 1; ++a) {
            int b = n - delta + 1 - a;
            if (b < a) break;
            report.points.push_back(check_template(rule, n, delta, delta, a,
                                                   JoinCliques{delta - 1, a, b}, thr, info.side,
                                                   info.property));
          }
          break;
        }
        case RuleId::T4_9_edge: {
          if (n < delta + 4) {
            // at n = delta+3 the small clique part is a single vertex and the
            // family member is itself super-kappa, so it cannot witness
            // tightness of the conclusion
            report.points.push_back(skipped_point(n, delta, 0, "needs n >= delta+4"));
            break;
          }
          ThresholdValue thr = threshold_value(rule, ctx);
          report.points.push_back(check_template(rule, n, delta, 0, std::nullopt,
                                                 JoinCliquesMinusEdge{delta, n}, thr, info.side,
                                                 info.property));
          break;
        }
        case RuleId::T5_1_edge: {
          if (delta < k || n < 2 * delta + 1 || (n - 2 * delta + k - 1 + 1) / 2 < k - 1) {
            report.points.push_back(
                skipped_point(n, delta, k, "template infeasible at this point"));
            break;
          }
          ThresholdValue thr = threshold_value(rule, ctx);
          report.points.push_back(check_template(rule, n, delta, k, std::nullopt,
                                                 TriangleFreeExtremal{n, delta, k}, thr,
                                                 info.side, info.property));
          break;
        }
        default:
          throw Error("tightness is not defined for rule " + std::string(info.name));
      }
    } catch (const RangeError& e) {
      report.points.push_back(skipped_point(n, delta, k, e.what()));
    }
  }
  report.pass = std::all_of(report.points.begin(), report.points.end(),
                            [](const TightnessPoint& p) { return p.pass; });
  return report;
}

// ---------------------------------------------------------------------------
// margin sweep

namespace {

struct SweepCell {
  long long eligible = 0;
  long long satisfying = 0;
  double min_margin = 0;
  double max_margin = 0;
  bool margins_set = false;
  MinWitness min_abs;
  MinWitness min_pos;

  void merge(const SweepCell& o) {
    eligible += o.eligible;
    satisfying += o.satisfying;
    if (o.margins_set) {
      if (!margins_set) {
        min_margin = o.min_margin;
        max_margin = o.max_margin;
        margins_set = true;
      } else {
        min_margin = std::min(min_margin, o.min_margin);
        max_margin = std::max(max_margin, o.max_margin);
      }
    }
    min_abs.merge(o.min_abs);
    min_pos.merge(o.min_pos);
  }
};

struct SweepAccum {
  std::map<std::tuple<int, int, int>, SweepCell> cells;

  void merge(const SweepAccum& o) {
    for (auto& [key, cell] : o.cells) cells[key].merge(cell);
  }
};

}  // namespace

SweepTable margin_sweep(RuleId rule, const VerifyOptions& opt) {
  const RuleInfo& info = rule_info(rule);
  auto [acc, stats] = parallel_scan<SweepAccum>(opt, [&](const Profile& p, SweepAccum& a) {
    if (info.property == Property::SuperKappa && p.complete) return;
    int klo = info.needs_k ? 2 : 0;
    int khi = info.needs_k ? p.facts.delta : 0;
    for (int k = klo; k <= khi; ++k) {
      RuleResult rr = evaluate_rule(p.facts, rule, k, opt.eps);
      if (!rr.applicable) continue;
      SweepCell& cell = a.cells[{p.facts.n, p.facts.delta, info.needs_k ? k : 0}];
      ++cell.eligible;
      double margin = *rr.margin;
      if (!cell.margins_set) {
        cell.min_margin = cell.max_margin = margin;
        cell.margins_set = true;
      } else {
        cell.min_margin = std::min(cell.min_margin, margin);
        cell.max_margin = std::max(cell.max_margin, margin);
      }
      cell.min_abs.offer(std::fabs(margin), p.g6);
      if (rr.fired || rr.boundary_exceptional) {
        ++cell.satisfying;
        if (margin > 0) cell.min_pos.offer(margin, p.g6);
      }
    }
  });
  (void)stats;

  SweepTable table;
  table.rule = rule;
  for (auto& [key, cell] : acc.cells) {
    SweepRow row;
    row.n = std::get<0>(key);
    row.delta = std::get<1>(key);
    row.k = std::get<2>(key);
    row.eligible = cell.eligible;
    row.satisfying = cell.satisfying;
    row.min_margin = cell.min_margin;
    row.max_margin = cell.max_margin;
    if (cell.min_abs.set) {
      row.min_abs_gap = cell.min_abs.value;
      row.min_abs_gap_graph6 = cell.min_abs.g6;
      if (info.has_exceptional_family) {
        Graph witness = from_graph6(row.min_abs_gap_graph6);
        ThresholdContext ctx{row.n, row.delta, std::nullopt, info.needs_k ? row.k : row.delta};
        row.min_abs_gap_is_template = exceptional_match(witness, rule, ctx).has_value();
      }
    }
    if (cell.min_pos.set) {
      row.min_positive_margin = cell.min_pos.value;
      row.min_positive_graph6 = cell.min_pos.g6;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace qcert
