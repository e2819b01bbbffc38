#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace loopforge {

struct CaseResult {
    std::string id;
    int criterion = 0;  // acceptance criterion the case backs, 0 for supporting properties
    bool passed = false;
    nlohmann::json details;
};

std::vector<std::string> suite_names();

/// Runs the named suites (all when empty). Every case derives its own
/// generator seed from (seed, case id), so results do not depend on which
/// suites run or in which order. Results are sorted by case id.
std::vector<CaseResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed);

nlohmann::json suite_report(const std::vector<CaseResult>& cases);

/// Stable 64-bit FNV-1a hash.
std::uint64_t stable_hash(const std::string& s);

/// The first grade at which the sl2 vacuum module at c = 1/2 has a negative vector.
inline constexpr int kHalfLevelFirstNegativeGrade = 2;
/// <pi(F t) pi(F t) pi(E t^-1) pi(E t^-1) Omega, Omega> on sl2 at c = 1.
inline constexpr int kFourPointLevelOne = 0;

}  // namespace loopforge
