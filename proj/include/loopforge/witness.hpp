#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopforge/lie_algebra.hpp"

namespace loopforge {

/// Hypothetical one-point functional psi0 on g_C, given on the basis.
struct OnePointFunctional {
    AlgebraPtr algebra;
    ExactVec values;

    static OnePointFunctional zero(AlgebraPtr g);
    /// {"H": "1", "E": "1/2"}; unknown labels throw ValidationError, missing ones are 0.
    static OnePointFunctional from_json(AlgebraPtr g, const nlohmann::json& j);

    Gaussian operator()(const ExactVec& x) const;
    /// psi0(x*) = conj(psi0(x)) on every basis vector.
    bool self_adjoint() const;
};

/// f-hat(p) = amplitude * b((p - lo) / (hi - lo)) with the smoothstep bump
/// b(u) = r(2u) on [0,1/2], r(2-2u) on [1/2,1], r(v) = 3v^2 - 2v^3.
struct BumpSpec {
    double lo = -1.0;
    double hi = -0.25;
    double amplitude = 1.0;

    /// The witness family: support [-eps, -eps/4].
    static BumpSpec family(double eps, double amplitude = 1.0);
    double operator()(double p) const;
    std::string shape() const { return "smoothstep bump"; }
};

struct NormCertificate {
    double norm_squared = 0.0;
    double i0 = 0.0;  // int |f-hat|^2 dp
    double i1 = 0.0;  // int p |f-hat|^2 dp
    double form_value = 0.0;  // <F_a, E_a> or <E_a, F_a> for the branch used
};

/// psi0(-H_a) I0 - c <F_a,E_a> I1: the norm squared of pi(E_a (x) f) Omega.
/// `panels` Gauss-Legendre panels per bump half, breakpoints aligned.
/// Throws ParameterError when the bump support reaches into p > 0 or is empty.
NormCertificate norm_squared(double psi0_h, double c, const Root& alpha, const LieAlgebra& g, const BumpSpec& bump,
                             int panels = 4);
/// psi0(H_a) I0 - c <E_a,F_a> I1: the norm squared of pi(F_a (x) f) Omega.
NormCertificate norm_squared_f(double psi0_h, double c, const Root& alpha, const LieAlgebra& g, const BumpSpec& bump,
                               int panels = 4);

struct WitnessResult {
    std::string root;
    std::string branch;  // "E" when psi0(H_a) > 0, "F" when < 0
    double psi0_h = 0.0;
    double epsilon = 0.0;
    BumpSpec bump;
    int halvings = 0;
    NormCertificate coarse;
    NormCertificate fine;  // doubled resolution
    double resolution_gap = 0.0;
    double norm_squared() const { return fine.norm_squared; }
};

struct WitnessOptions {
    int max_halvings = 60;
    int panels = 4;
    double agreement = 1e-8;
};

/// Halves eps from 1 until the norm squared is certified negative at two
/// quadrature resolutions. Returns none iff psi0 vanishes on every coroot.
/// Throws ParameterError for c <= 0 or non-self-adjoint psi0, SearchFailure
/// if no eps works within the halving budget.
std::optional<WitnessResult> find_witness(const OnePointFunctional& psi0, double c, const WitnessOptions& opts = {});

struct ConsistencyReport {
    bool self_adjoint = true;
    std::vector<std::string> nonzero_coroots;
    std::optional<WitnessResult> witness;
    std::string status;  // consistent | excluded | no_witness_of_this_form | not_self_adjoint
    std::string conclusion;
};

ConsistencyReport consistency_report(const OnePointFunctional& psi0, double c, const WitnessOptions& opts = {});

nlohmann::json to_json(const WitnessResult& w);
nlohmann::json to_json(const ConsistencyReport& r);

}  // namespace loopforge
