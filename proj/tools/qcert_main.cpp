// qcert: Q-index sufficient-condition certifier for vertex connectivity.
//
// Subcommands: analyze, certify, construct, verify, sweep, rules.
// Exit codes: 0 success / all checks pass, 1 counterexample or ground-truth
// disagreement, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcert/report_json.hpp"

using namespace qcert;

namespace {

struct InputSource {
  std::string graph6;
  std::string file;
  std::string spec;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--graph6", graph6, "graph6 line");
    auto* b = cmd->add_option("--file", file, "file of graph6 lines");
    auto* c = cmd->add_option("--construct", spec,
                              "construction spec, e.g. join-cliques:k=1,a=3,b=3");
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }

  std::vector<Graph> load() const {
    std::vector<Graph> graphs;
    if (!graph6.empty()) {
      graphs.push_back(from_graph6(graph6));
    } else if (!spec.empty()) {
      graphs.push_back(construct(parse_family(spec)));
    } else if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw Error("cannot open '" + file + "'");
      std::string line;
      std::size_t lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
          graphs.push_back(from_graph6(line));
        } catch (const ParseError& e) {
          throw Error("line " + std::to_string(lineno) + ": " + e.what());
        }
      }
      if (graphs.empty()) throw Error("no graphs in '" + file + "'");
    } else {
      throw Error("one of --graph6, --file, --construct is required");
    }
    return graphs;
  }
};

void print_structure_text(const StructureReport& r, std::ostream& os) {
  os << "n=" << r.n << " m=" << r.m << " min_degree=" << r.min_degree << " girth=";
  if (r.girth)
    os << *r.girth;
  else
    os << "inf";
  os << " kappa=" << r.kappa << (r.connected ? "" : " DISCONNECTED")
     << (r.triangle_free ? " triangle-free" : "")
     << (r.maximally_connected ? " maximally-connected" : "");
  if (r.super_kappa)
    os << (*r.super_kappa ? " super-kappa" : "");
  else
    os << " super-kappa=unknown";
  os << "\n";
  if (r.witness) {
    os << "  min cut {";
    for (std::size_t i = 0; i < r.witness->cut.size(); ++i)
      os << (i ? "," : "") << r.witness->cut[i];
    os << "} leaves " << r.witness->components.size() << " components\n";
  }
}

void print_spectra_text(const SpectralReport& r, std::ostream& os) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "q=%.10g q_bar=%.10g bounds=[%.10g, %.10g] complement_connected=%s\n", r.q,
                r.q_bar, r.lower_bound, r.upper_bound, r.complement_connected ? "yes" : "no");
  os << buf;
}

void print_certificate_text(const Certificate& c, std::ostream& os) {
  os << "graph " << c.graph6 << "  property " << target_property_name(c.property);
  if (c.k) os << "(k=" << *c.k << ")";
  os << "\n";
  print_structure_text(c.structure, os);
  print_spectra_text(c.spectra, os);
  os << "rules:\n";
  for (const auto& r : c.rule_results) {
    char line[256];
    if (!r.applicable) {
      std::snprintf(line, sizeof line, "  %-16s inapplicable (%s)\n", r.label.c_str(),
                    r.inapplicable_reason.c_str());
    } else {
      std::string status = r.fired ? "FIRED" : (r.boundary_exceptional ? "boundary-exceptional"
                                                                       : "below threshold");
      std::snprintf(line, sizeof line, "  %-16s hyp=%.10g thr=%.10g margin=%+.3g %s%s\n",
                    r.label.c_str(), *r.hypothesis_value, r.threshold->value, *r.margin,
                    status.c_str(), r.near_boundary ? " [near-boundary]" : "");
    }
    os << line;
  }
  os << "verdict: " << (c.certified ? "certified" : "not-certified-by-these-rules") << "\n";
  if (c.ground_truth_known)
    os << "ground truth: property " << (c.ground_truth_holds ? "holds" : "fails")
       << (c.ground_truth_agrees ? "" : "  ** DISAGREES WITH A FIRED RULE **") << "\n";
  else
    os << "ground truth: not computed\n";
}

int run_verify(const std::vector<RuleId>& rules, const VerifyOptions& opt,
               const std::string& format) {
  ScanReport report = run_scan(rules, opt, false);
  bool all_pass = true;
  for (const auto& v : report.rules) all_pass = all_pass && v.pass();
  if (format == "json") {
    json j;
    j["scanned"] = report.scanned;
    j["connected_counts"] = report.connected_counts;
    j["kappa_oracle_mismatches"] = report.kappa_oracle_mismatches;
    j["graph6_roundtrip_failures"] = report.graph6_roundtrip_failures;
    json arr = json::array();
    for (const auto& v : report.rules) arr.push_back(to_json(v));
    j["rules"] = std::move(arr);
    j["pass"] = all_pass;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& v : report.rules) {
      std::cout << (v.pass() ? "PASS " : "FAIL ") << rule_info(v.rule).name << "  scanned="
                << v.scanned << " eligible=" << v.eligible << " satisfying=" << v.satisfying
                << " fired=" << v.fired << " boundary-exceptional=" << v.boundary_exceptional
                << " counterexamples=" << v.counterexamples.size();
      if (!v.counterexamples.empty()) {
        std::cout << " [";
        for (std::size_t i = 0; i < v.counterexamples.size() && i < 5; ++i)
          std::cout << (i ? " " : "") << v.counterexamples[i];
        std::cout << "]";
      }
      if (v.min_positive_margin)
        std::cout << " min_positive_margin=" << *v.min_positive_margin << " at "
                  << v.min_positive_witness;
      std::cout << "\n";
    }
  }
  if (report.kappa_oracle_mismatches > 0 || report.graph6_roundtrip_failures > 0) return 1;
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q-index connectivity certifier"};
  app.require_subcommand(1);

  std::string format = "text";
  app.add_option("--format", format, "output format: text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  double tolerance = kSpectralEps;
  app.add_option("--tolerance", tolerance, "spectral comparison tolerance")
      ->check(CLI::Range(1e-12, 1e-6));

  auto* analyze_cmd = app.add_subcommand("analyze", "structural and spectral report");
  InputSource analyze_in;
  analyze_in.attach(analyze_cmd);

  auto* certify_cmd = app.add_subcommand("certify", "evaluate every applicable rule");
  InputSource certify_in;
  certify_in.attach(certify_cmd);
  std::string property_name = "k-connected";
  int k = 0;
  certify_cmd->add_option("--property", property_name,
                          "k-connected | maximally-connected | super-kappa");
  certify_cmd->add_option("--k", k, "target connectivity for k-connected");

  auto* construct_cmd = app.add_subcommand("construct", "emit graph6 of an extremal family");
  std::string family, params;
  construct_cmd->add_option("--family", family, "family name")->required();
  construct_cmd->add_option("--params", params, "comma-separated key=value parameters");

  auto* verify_cmd = app.add_subcommand("verify", "exhaustive rule verification");
  std::string rule_name_opt = "all";
  VerifyOptions vopt;
  vopt.n_max = 6;
  verify_cmd->add_option("--rule", rule_name_opt, "rule id or 'all'");
  verify_cmd->add_option("--nmin", vopt.n_min, "smallest order (default 2)");
  verify_cmd->add_option("--nmax", vopt.n_max, "largest order (default 6)");
  verify_cmd->add_option("--corpus", vopt.corpus_path, "graph6 corpus for orders above 7");
  verify_cmd->add_option("--workers", vopt.workers, "worker threads (default QCERT_WORKERS)");

  auto* sweep_cmd = app.add_subcommand("sweep", "margin distribution sweep (CSV)");
  std::string sweep_rule;
  VerifyOptions sopt;
  sopt.n_max = 6;
  sweep_cmd->add_option("--rule", sweep_rule, "rule id")->required();
  sweep_cmd->add_option("--nmin", sopt.n_min, "smallest order");
  sweep_cmd->add_option("--nmax", sopt.n_max, "largest order");
  sweep_cmd->add_option("--corpus", sopt.corpus_path, "graph6 corpus for orders above 7");
  sweep_cmd->add_option("--workers", sopt.workers, "worker threads");

  auto* rules_cmd = app.add_subcommand("rules", "print the rule catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze_cmd) {
      for (const Graph& g : analyze_in.load()) {
        auto [sr, sp] = analyze(g, tolerance);
        if (format == "json") {
          json j;
          j["graph6"] = to_graph6(g);
          j["structure"] = to_json(sr);
          j["spectra"] = to_json(sp);
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << to_graph6(g) << "\n";
          print_structure_text(sr, std::cout);
          print_spectra_text(sp, std::cout);
        }
      }
      return 0;
    }

    if (*certify_cmd) {
      TargetProperty property = target_property_from_name(property_name);
      if (property == TargetProperty::KConnected && k < 1)
        throw Error("--property k-connected needs --k");
      int exit_code = 0;
      for (const Graph& g : certify_in.load()) {
        Certificate cert = certify(g, property, k, tolerance);
        if (format == "json")
          std::cout << to_json(cert).dump(2) << "\n";
        else
          print_certificate_text(cert, std::cout);
        if (!cert.ground_truth_agrees) exit_code = 1;
      }
      return exit_code;
    }

    if (*construct_cmd) {
      std::string text = family;
      if (!params.empty()) text += ":" + params;
      Graph g = construct(parse_family(text));
      if (format == "json") {
        json j;
        j["family"] = family_to_string(parse_family(text));
        j["graph6"] = to_graph6(g);
        j["n"] = g.order();
        j["m"] = g.size();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << to_graph6(g) << "\n";
      }
      return 0;
    }

    if (*verify_cmd) {
      vopt.eps = tolerance;
      std::vector<RuleId> rules;
      if (rule_name_opt == "all")
        for (const auto& info : rule_catalog()) rules.push_back(info.id);
      else
        rules.push_back(rule_from_name(rule_name_opt));
      return run_verify(rules, vopt, format);
    }

    if (*sweep_cmd) {
      sopt.eps = tolerance;
      SweepTable table = margin_sweep(rule_from_name(sweep_rule), sopt);
      std::cout << sweep_csv(table);
      return 0;
    }

    if (*rules_cmd) {
      if (format == "json") {
        std::cout << rule_catalog_json().dump(2) << "\n";
      } else {
        // text layout: id, property, class, side, then formula
        for (const auto& r : rule_catalog()) {
          const char* property =
              r.property == Property::KConnected
                  ? "k-connected"
                  : (r.property == Property::MaximallyConnected ? "maximally-connected"
                                                                : "super-kappa");
          const char* cls = r.cls == GraphClass::GeneralGirth
                                ? "exact-girth"
                                : (r.cls == GraphClass::AnyGraph ? "girth>=3" : "triangle-free");
          const char* side = r.side == Side::EdgeAtLeast
                                 ? "m >= bound"
                                 : (r.side == Side::QAtLeast ? "q(G) >= bound"
                                                             : "q(comp) <= bound");
          char line[640];
          std::snprintf(line, sizeof line, "%-11s %-20s %-14s %-18s %s\n",
                        std::string(r.name).c_str(), property, cls, side,
                        std::string(r.formula).c_str());
          std::cout << line;
          if (!r.exceptional.empty())
            std::cout << "            except: " << std::string(r.exceptional) << "\n";
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
