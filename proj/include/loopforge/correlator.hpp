#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopforge/loop_elements.hpp"
#include "loopforge/vacuum_module.hpp"

namespace loopforge {

struct Annihilation {
    bool strict = false;  // all modes (grid indices) >= 1
    bool vacuum = false;  // all modes >= 0: zero modes also kill the vacuum at lambda = 0
};

template <class S>
Annihilation annihilates(const BasicLaurent<S>& xi) {
    return {xi.is_zero() || xi.min_mode() >= 1, xi.is_zero() || xi.min_mode() >= 0};
}
Annihilation annihilates(const BandLimitedElement& xi);

/// One step of the reduction: the split of the leading factor and the terms it produced.
struct TraceNode {
    std::vector<std::string> factors;
    std::string plus;
    std::string minus;
    struct Term {
        std::string kind;  // "head", "commutator", "cocycle", "annihilated"
        std::string scalar;
        int child = -1;
    };
    std::vector<Term> terms;
    std::string value;
    bool memo_hit = false;
};

struct ReductionTrace {
    std::vector<TraceNode> nodes;
    std::size_t cap = 200000;
    nlohmann::json to_json() const;
};

/// Human-readable element text, e.g. "E⊗t^-1 + (1/2)H⊗t^0".
template <class S>
std::string element_str(const BasicLaurent<S>& xi);

/// Vacuum n-point functions <pi(xi_1)...pi(xi_n) Omega, Omega> at level c by
/// the positive/negative-frequency reduction:
///   xi_1 = xi_+ + xi_-  (strictly positive modes + the rest)
///   <xi_1 ... > = <xi_- ...> + sum_k <xi_2 .. [xi_+, xi_k] .. xi_n> + c w(xi_+, xi_k) <.. without xi_1, xi_k ..>
/// where w is the mode cocycle k delta_{k+l,0} <x,y>. The xi_- head term is
/// moved against the bra and only its zero modes survive, through the one-point
/// rule, which is identically zero unless a hypothetical psi0 is injected.
template <class S>
class NPointEngine {
public:
    explicit NPointEngine(S level, std::optional<Vec<S>> psi0 = std::nullopt);

    /// One-point rule: 0, or with an injected psi0 its value on the zero-mode coefficient.
    S one_point(const BasicLaurent<S>& xi) const;

    S eval(const std::vector<BasicLaurent<S>>& factors, ReductionTrace* trace = nullptr);

    std::size_t memo_size() const { return memo_.size(); }

private:
    S eval_rec(const std::vector<BasicLaurent<S>>& factors, ReductionTrace* trace, int* node);

    S level_;
    std::optional<Vec<S>> psi0_;
    std::map<std::string, S> memo_;
};

extern template class NPointEngine<Gaussian>;
extern template class NPointEngine<Complex>;

/// Convenience wrappers.
Gaussian npoint(const Gaussian& level, const std::vector<LaurentElement>& factors, ReductionTrace* trace = nullptr);
/// Band-limited factors on a common grid, mapped to modes by the grid dilation.
Complex npoint(Complex level, const std::vector<BandLimitedElement>& factors);

/// Smallest cutoff N at which the truncated matrix chain is exact for this query.
int required_cutoff(const std::vector<LaurentElement>& factors);

/// Mode-matrix product applied to the vacuum, paired with the vacuum through the Gram form.
/// Throws TruncationError when the module cutoff is below required_cutoff.
Gaussian npoint_oracle(const VacuumModule& module, const std::vector<LaurentElement>& factors);

/// Builds and keeps vacuum modules per (level, cutoff) for repeated oracle queries.
class OracleCache {
public:
    explicit OracleCache(AlgebraPtr g, ModuleOptions opts = {}) : algebra_(std::move(g)), opts_(opts) {}
    const VacuumModule& module(const Gaussian& level, int cutoff);
    Gaussian eval(const Gaussian& level, const std::vector<LaurentElement>& factors);

private:
    AlgebraPtr algebra_;
    ModuleOptions opts_;
    std::map<std::pair<std::string, int>, VacuumModule> modules_;
};

}  // namespace loopforge
