#include "qcert/certify.hpp"

#include <cmath>

#include "doctest.h"
#include "qcert/report_json.hpp"
#include "test_support.hpp"

using namespace qcert;
using namespace qcert::test;

TEST_CASE("analyze fixtures") {
  auto [sr, sp] = analyze(cycle(5));
  CHECK(sr.kappa == 2);
  CHECK(sr.min_degree == 2);
  CHECK(sr.girth == 5);
  CHECK(sp.q == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sp.q_bar == doctest::Approx(4.0).epsilon(1e-12));  // complement of C_5 is C_5

  auto [sr2, sp2] = analyze(construct(CompleteBipartite{1, 4}));
  CHECK(sr2.kappa == 1);
  CHECK(sr2.min_degree == 1);
  CHECK_FALSE(sr2.girth.has_value());
  CHECK(sp2.q == doctest::Approx(5.0).epsilon(1e-12));

  auto [sr3, sp3] = analyze(petersen());
  CHECK(sr3.kappa == 3);
  CHECK(sr3.min_degree == 3);
  CHECK(sr3.girth == 5);
  CHECK(sr3.triangle_free);
  CHECK(sp3.q == doctest::Approx(6.0).epsilon(1e-9));  // 3-regular, adjacency radius 3

  CHECK_THROWS_WITH_AS(analyze(disjoint_union(cycle(3), cycle(3))),
                       doctest::Contains("disconnected"), Error);
}

TEST_CASE("certify K_6 as 3-connected") {
  Certificate cert = certify(construct(Complete{6}), TargetProperty::KConnected, 3);
  CHECK(cert.certified);
  CHECK(cert.ground_truth_holds);
  CHECK(cert.ground_truth_agrees);
  bool c43_fired = false;
  for (const auto& r : cert.rule_results)
    if (r.rule == RuleId::C4_3_q) {
      CHECK(r.applicable);
      CHECK(r.threshold->value == doctest::Approx(10.0).epsilon(1e-12));
      CHECK(r.fired);
      CHECK(r.near_boundary);  // q(K_6) = 10 meets the bound with equality
      c43_fired = r.fired;
    }
  CHECK(c43_fired);
}

TEST_CASE("boundary-exceptional certificate for the T4.1 template") {
  Graph g = construct(JoinCliques{1, 3, 3});  // n=7, delta=3, kappa=1
  Certificate cert = certify(g, TargetProperty::KConnected, 2);
  CHECK_FALSE(cert.certified);  // every sound rule must exclude or stay silent
  CHECK(cert.structure.kappa == 1);
  CHECK(cert.ground_truth_agrees);
  bool t41_boundary = false, t42_boundary = false;
  for (const auto& r : cert.rule_results) {
    if (r.rule == RuleId::T4_1_q0) {
      t41_boundary = r.boundary_exceptional;
      REQUIRE(r.exceptional_match.has_value());
      CHECK(family_to_string(*r.exceptional_match) == "join-cliques:k=1,a=3,b=3");
      CHECK_FALSE(r.fired);
    }
    if (r.rule == RuleId::T4_2_edge) t42_boundary = r.boundary_exceptional;
  }
  CHECK(t41_boundary);
  CHECK(t42_boundary);  // m = 12 meets the T4.2 bound exactly and is excluded
}

TEST_CASE("certify C_5 as super-kappa: true but not certified by these rules") {
  Certificate cert = certify(cycle(5), TargetProperty::SuperKappa);
  CHECK_FALSE(cert.certified);
  CHECK(cert.ground_truth_known);
  CHECK(cert.ground_truth_holds);
  CHECK(cert.ground_truth_agrees);
  for (const auto& r : cert.rule_results)
    if (r.rule == RuleId::T5_7_qbar) {
      CHECK(r.applicable);
      CHECK(r.threshold->value == doctest::Approx(3.8).epsilon(1e-12));
      CHECK(r.hypothesis_value == doctest::Approx(4.0).epsilon(1e-12));
      CHECK_FALSE(r.fired);
    }
}

TEST_CASE("maximally-connected certificates include the derived general-girth rules") {
  Certificate cert = certify(construct(Complete{6}), TargetProperty::MaximallyConnected);
  bool found_derived = false;
  for (const auto& r : cert.rule_results)
    if (r.label == "T3.2-q@k=delta") found_derived = true;
  CHECK(found_derived);
  CHECK(cert.certified);  // C4.6 fires easily on K_6
}

TEST_CASE("exceptional matches") {
  ThresholdContext ctx{7, 3, {}, 2};
  auto m = exceptional_match(construct(JoinCliques{1, 3, 3}), RuleId::T4_1_q0, ctx);
  REQUIRE(m.has_value());
  CHECK(family_to_string(*m) == "join-cliques:k=1,a=3,b=3");

  CHECK_FALSE(exceptional_match(cycle(7), RuleId::T4_1_q0, ctx).has_value());

  // one K_2-to-join edge removed from K_2 v (K_2 u K_3)
  Graph g = construct(JoinCliques{2, 2, 3});
  g.remove_edge(2, 0);  // d(x)=3=delta+1, d(y)=6=n-1 before removal
  auto m49 = exceptional_match(g, RuleId::T4_9_edge, {7, 2, {}, 0});
  REQUIRE(m49.has_value());
  CHECK(family_to_string(*m49) == "join-cliques-minus-edge:delta=2,n=7");

  // T4.4 ranges over every admissible part size a
  Graph f = construct(JoinCliques{2, 3, 4});  // n=9, q(comp)=7=n-k+1 at k=3
  auto m44 = exceptional_match(f, RuleId::T4_4_qbar, {9, 4, {}, 3});
  REQUIRE(m44.has_value());
  CHECK(family_to_string(*m44) == "join-cliques:k=2,a=3,b=4");

  // both cut placements of the triangle-free extremal family are recognized
  auto tfe = exceptional_match(construct(TriangleFreeExtremal{10, 3, 2}), RuleId::T5_1_edge,
                               {10, 3, {}, 2});
  CHECK(tfe.has_value());
}

TEST_CASE("equality-boundary guards of the complement rules") {
  // complement = C_4 u K_2: attains q(comp) = n-k+1 at k=3 with kappa = 2,
  // but the 2-cut is independent rather than a clique, so the printed family
  // misses it; the guard must exclude it
  Graph g = join(Graph(2), disjoint_union(construct(Complete{2}), construct(Complete{2})));
  GraphFacts f = compute_facts(g);
  CHECK(f.delta == 3);
  RuleResult r = evaluate_rule(f, RuleId::T4_4_qbar, 3);
  CHECK(r.applicable);
  CHECK_FALSE(r.fired);
  CHECK(r.boundary_exceptional);
  CHECK(r.extended_exclusion);
  CHECK_FALSE(r.exceptional_match.has_value());
  CHECK(brute_force_connectivity(g) == 2);  // the guard is not spurious

  // the clique-cut member of the same family is matched as the printed family
  Graph h = construct(JoinCliques{2, 2, 2});
  GraphFacts fh = compute_facts(h);
  RuleResult rh = evaluate_rule(fh, RuleId::T4_4_qbar, 3);
  CHECK(rh.boundary_exceptional);
  CHECK(rh.exceptional_match.has_value());
  CHECK_FALSE(rh.extended_exclusion);

  // T4.11 at n=8: (K_3 u K_1) v (K_2 u K_2) attains q(comp) = n-delta and is
  // not super-kappa; the guard keeps the rule from firing
  Graph t = join(disjoint_union(construct(Complete{3}), Graph(1)),
                 disjoint_union(construct(Complete{2}), construct(Complete{2})));
  GraphFacts ft = compute_facts(t);
  CHECK(ft.delta == 4);
  CHECK_FALSE(is_super_kappa(t));
  RuleResult rt = evaluate_rule(ft, RuleId::T4_11_qbar, 0);
  CHECK(rt.applicable);
  CHECK_FALSE(rt.fired);
  CHECK(rt.boundary_exceptional);
  CHECK(rt.extended_exclusion);

  // away from the boundary the guard never engages
  GraphFacts fp = compute_facts(petersen());
  RuleResult rp = evaluate_rule(fp, RuleId::T4_11_qbar, 0);
  CHECK_FALSE(rp.extended_exclusion);
}

TEST_CASE("certificates are byte-stable") {
  Certificate a = certify(petersen(), TargetProperty::KConnected, 3);
  Certificate b = certify(petersen(), TargetProperty::KConnected, 3);
  CHECK(to_json(a).dump(2) == to_json(b).dump(2));
}

TEST_CASE("monotone property coherence") {
  // certified k-connectivity at k implies the ground truth passes at k' < k
  Certificate cert = certify(construct(Complete{7}), TargetProperty::KConnected, 4);
  CHECK(cert.certified);
  for (int lower = 2; lower < 4; ++lower) {
    Certificate c2 = certify(construct(Complete{7}), TargetProperty::KConnected, lower);
    CHECK(c2.structure.kappa >= lower);
  }
}

TEST_CASE("evaluate_rule marks class mismatches inapplicable") {
  GraphFacts facts = compute_facts(construct(Complete{5}));
  RuleResult r = evaluate_rule(facts, RuleId::C5_2_q, 2);
  CHECK_FALSE(r.applicable);
  CHECK(r.inapplicable_reason == "graph is not triangle-free");

  GraphFacts bip = compute_facts(construct(CompleteBipartite{3, 3}));
  RuleResult r2 = evaluate_rule(bip, RuleId::T5_3_qbar, 2);
  CHECK_FALSE(r2.applicable);  // complement of K_{3,3} is disconnected
  CHECK(r2.inapplicable_reason == "complement is disconnected");
}
