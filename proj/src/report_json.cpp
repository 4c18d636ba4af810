#include "qcert/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qcert {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json to_json(const CutWitness& w) {
  json j;
  j["cut"] = w.cut;
  j["components"] = w.components;
  return j;
}

json to_json(const StructureReport& r) {
  json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["min_degree"] = r.min_degree;
  j["girth"] = r.girth ? json(*r.girth) : json(nullptr);
  j["kappa"] = r.kappa;
  j["connected"] = r.connected;
  j["triangle_free"] = r.triangle_free;
  j["maximally_connected"] = r.maximally_connected;
  j["super_kappa"] = r.super_kappa ? json(*r.super_kappa) : json(nullptr);
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

json to_json(const SpectralReport& r) {
  json j;
  j["q"] = round12(r.q);
  j["q_bar"] = round12(r.q_bar);
  j["lower_bound"] = round12(r.lower_bound);
  j["upper_bound"] = round12(r.upper_bound);
  j["tolerance"] = r.tolerance;
  j["complement_connected"] = r.complement_connected;
  return j;
}

json to_json(const FamilySpec& spec) {
  json j;
  j["family"] = family_to_string(spec);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, JoinCliques>) {
          j["kappa"] = s.kappa;
          j["a"] = s.a;
          j["b"] = s.b;
        } else if constexpr (std::is_same_v<T, JoinCliquesMinusEdge>) {
          j["delta"] = s.delta;
          j["n"] = s.n;
        } else if constexpr (std::is_same_v<T, CompleteBipartite>) {
          j["a"] = s.a;
          j["b"] = s.b;
        } else if constexpr (std::is_same_v<T, Complete>) {
          j["n"] = s.n;
        } else if constexpr (std::is_same_v<T, EmptyGraph>) {
          j["n"] = s.n;
        } else if constexpr (std::is_same_v<T, TriangleFreeExtremal>) {
          j["n"] = s.n;
          j["delta"] = s.delta;
          j["k"] = s.k;
        }
      },
      spec);
  return j;
}

json to_json(const RuleResult& r) {
  json j;
  j["rule"] = rule_info(r.rule).name;
  j["label"] = r.label;
  if (rule_info(r.rule).needs_k) j["k"] = r.k;
  j["applicable"] = r.applicable;
  j["hypothesis_value"] = r.hypothesis_value ? json(round12(*r.hypothesis_value)) : json(nullptr);
  if (r.threshold) {
    j["threshold"] = round12(r.threshold->value);
    j["threshold_exact"] = r.threshold->exact;
    if (r.threshold->rational) j["threshold_rational"] = r.threshold->rational->str();
  } else {
    j["threshold"] = nullptr;
    j["threshold_exact"] = false;
  }
  j["fired"] = r.fired;
  j["margin"] = r.margin ? json(round12(*r.margin)) : json(nullptr);
  j["near_boundary"] = r.near_boundary;
  j["exceptional_match"] = r.exceptional_match ? to_json(*r.exceptional_match) : json(nullptr);
  j["boundary_exceptional"] = r.boundary_exceptional;
  j["extended_exclusion"] = r.extended_exclusion;
  if (r.extended_exclusion) j["exclusion_note"] = r.exclusion_note;
  if (!r.applicable) j["inapplicable_reason"] = r.inapplicable_reason;
  return j;
}

json to_json(const Certificate& c) {
  json j;
  j["graph6"] = c.graph6;
  j["property"] = target_property_name(c.property);
  j["k"] = c.k ? json(*c.k) : json(nullptr);
  j["structure"] = to_json(c.structure);
  j["spectra"] = to_json(c.spectra);
  json rules = json::array();
  for (const auto& r : c.rule_results) rules.push_back(to_json(r));
  j["rule_results"] = std::move(rules);
  j["verdict"] = c.certified ? "certified" : "not-certified-by-these-rules";
  j["ground_truth_known"] = c.ground_truth_known;
  j["ground_truth_holds"] = c.ground_truth_known ? json(c.ground_truth_holds) : json(nullptr);
  j["ground_truth_agrees"] = c.ground_truth_agrees;
  return j;
}

json to_json(const RuleVerification& v) {
  json j;
  j["rule"] = rule_info(v.rule).name;
  j["source"] = v.source;
  j["n_min"] = v.n_min;
  j["n_max"] = v.n_max;
  j["scanned"] = v.scanned;
  j["eligible"] = v.eligible;
  j["satisfying"] = v.satisfying;
  j["fired"] = v.fired;
  j["boundary_exceptional"] = v.boundary_exceptional;
  j["extended_exclusions"] = v.extended_exclusions;
  j["complete_graphs_skipped"] = v.complete_graphs_skipped;
  j["counterexamples"] = v.counterexamples;
  j["biconditional_violations"] = v.biconditional_violations;
  j["min_positive_margin"] =
      v.min_positive_margin ? json(round12(*v.min_positive_margin)) : json(nullptr);
  j["min_positive_witness"] = v.min_positive_witness;
  json hist = json::array();
  for (const auto& bin : v.histogram) {
    json b;
    b["lo"] = bin.lo <= -1e299 ? json("-inf") : json(round12(bin.lo));
    b["hi"] = bin.hi >= 1e299 ? json("inf") : json(round12(bin.hi));
    b["count"] = bin.count;
    hist.push_back(std::move(b));
  }
  j["margin_histogram"] = std::move(hist);
  json nk = json::array();
  for (const auto& c : v.per_nk) {
    json e;
    e["n"] = c.n;
    if (rule_info(v.rule).needs_k) e["k"] = c.k;
    e["eligible"] = c.eligible;
    e["satisfying"] = c.satisfying;
    nk.push_back(std::move(e));
  }
  j["per_nk"] = std::move(nk);
  if (rule_info(v.rule).needs_connected_complement) {
    json obs;
    obs["checked"] = v.obs_disc_complement_checked;
    obs["would_fire"] = v.obs_disc_complement_would_fire;
    obs["violations"] = v.obs_disc_complement_violations;
    j["disconnected_complement_observation"] = std::move(obs);
  }
  j["pass"] = v.pass();
  return j;
}

json to_json(const TightnessReport& r) {
  json j;
  j["rule"] = rule_info(r.rule).name;
  json pts = json::array();
  for (const auto& p : r.points) {
    json e;
    e["n"] = p.n;
    e["delta"] = p.delta;
    e["k"] = p.k;
    if (p.a) e["a"] = *p.a;
    e["feasible"] = p.feasible;
    if (!p.feasible) {
      e["note"] = p.note;
    } else {
      e["graph6"] = p.graph6;
      e["hypothesis_value"] = round12(p.hypothesis_value);
      e["threshold"] = round12(p.threshold);
      e["meets_threshold"] = p.meets_threshold;
      e["fails_conclusion"] = p.fails_conclusion;
    }
    e["pass"] = p.pass;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["pass"] = r.pass;
  return j;
}

json rule_catalog_json() {
  json arr = json::array();
  for (const auto& r : rule_catalog()) {
    json e;
    e["rule"] = r.name;
    switch (r.property) {
      case Property::KConnected:
        e["property"] = "k-connected";
        break;
      case Property::MaximallyConnected:
        e["property"] = "maximally-connected";
        break;
      case Property::SuperKappa:
        e["property"] = "super-kappa";
        break;
    }
    switch (r.cls) {
      case GraphClass::GeneralGirth:
        e["class"] = "exact-girth";
        break;
      case GraphClass::AnyGraph:
        e["class"] = "girth>=3";
        break;
      case GraphClass::TriangleFree:
        e["class"] = "triangle-free";
        break;
    }
    switch (r.side) {
      case Side::EdgeAtLeast:
        e["side"] = "m >= bound";
        break;
      case Side::QAtLeast:
        e["side"] = "q(G) >= bound";
        break;
      case Side::QBarAtMost:
        e["side"] = "q(complement) <= bound";
        break;
    }
    e["needs_k"] = r.needs_k;
    e["needs_connected_complement"] = r.needs_connected_complement;
    e["formula"] = r.formula;
    e["exceptional_family"] = r.exceptional.empty() ? json(nullptr) : json(r.exceptional);
    arr.push_back(std::move(e));
  }
  return arr;
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream os;
  os << "rule,n,delta,k,eligible,satisfying,min_margin,max_margin,min_abs_gap,"
        "min_abs_gap_graph6,min_abs_gap_is_template,min_positive_margin,min_positive_graph6\n";
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const auto& r : table.rows) {
    os << rule_info(table.rule).name << ',' << r.n << ',' << r.delta << ',' << r.k << ','
       << r.eligible << ',' << r.satisfying << ',' << num(r.min_margin) << ','
       << num(r.max_margin) << ',' << num(r.min_abs_gap) << ',' << r.min_abs_gap_graph6 << ','
       << (r.min_abs_gap_is_template ? 1 : 0) << ',';
    if (r.min_positive_margin) os << num(*r.min_positive_margin);
    os << ',' << r.min_positive_graph6 << '\n';
  }
  return os.str();
}

}  // namespace qcert
