#pragma once

#include <nlohmann/json.hpp>

#include "qcert/certify.hpp"
#include "qcert/harness.hpp"

namespace qcert {

// insertion-ordered JSON keeps report bytes stable across runs
using json = nlohmann::ordered_json;

// floating values are serialized with 12 significant digits
double round12(double v);

json to_json(const CutWitness& w);
json to_json(const StructureReport& r);
json to_json(const SpectralReport& r);
json to_json(const FamilySpec& spec);
json to_json(const RuleResult& r);
json to_json(const Certificate& c);
json to_json(const RuleVerification& v);
json to_json(const TightnessReport& r);
json rule_catalog_json();

std::string sweep_csv(const SweepTable& table);

}  // namespace qcert
