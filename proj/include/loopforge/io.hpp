#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopforge/cocycle.hpp"
#include "loopforge/vacuum_module.hpp"

namespace loopforge {

using nlohmann::json;

/// {"realization": "modes"|"frequency", "algebra": name or descriptor,
///  "dp": "1/4" (frequency only), "support": [[index, [coefficients...]], ...]}
/// Mode coefficients are exact strings; frequency coefficients may also be
/// numbers or [re, im] pairs.
struct ParsedElement {
    Realization realization = Realization::Modes;
    std::optional<LaurentElement> laurent;
    std::optional<BandLimitedElement> band;
};

ParsedElement element_from_json(const json& j, const AlgebraPtr& hint = nullptr);
json to_json(const LaurentElement& xi);
json to_json(const BandLimitedElement& xi);

/// Resolves an "algebra" field, reusing `hint` when the names agree.
AlgebraPtr algebra_field(const json& j, const AlgebraPtr& hint = nullptr);

/// {"kind": "canonical"|"scaled"|"kernel", "c": "2", "kernel": ["0", "1"]}
CocycleCandidate candidate_from_json(const json& j);
json to_json(const CocycleCandidate& c);
/// "canonical", "scaled:<c>", "kernel:<a0>,<a1>,..." or a JSON document.
CocycleCandidate parse_candidate(const std::string& text);

Realization parse_realization(const std::string& s);

json to_json(const CocycleReport& r);
json to_json(const ClassifyResult& r);
json to_json(const InductionResult& r);

json module_to_json(const VacuumModule& m);
VacuumModule module_from_json(const json& j);
/// grade,row,col,row_label,col_label,value with exact entries.
std::string gram_csv(const VacuumModule& m);
json to_json(const UnitarityVerdict& v);
json to_json(const Admissibility& a);

std::string complex_str(const Complex& z);

/// Reads a file, or returns the text itself when it does not name a readable file.
std::string read_text_or_inline(const std::string& arg);

}  // namespace loopforge
