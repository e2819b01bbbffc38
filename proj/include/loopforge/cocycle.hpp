#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopforge/loop_elements.hpp"
#include "loopforge/random.hpp"
#include "loopforge/test_function.hpp"

namespace loopforge {

// ---------------------------------------------------------------------------
// The canonical cocycle in its three realizations.

/// (1/2 pi i) <x,y> int f(t) g'(t) dt.
Complex omega1_time(const Vec<Complex>& x, const TestFunction& f, const Vec<Complex>& y, const TestFunction& g,
                    const LieAlgebra& alg);
/// Bilinear extension to sums of x (x) (product of test functions).
Complex omega1_time(const TimeElement& a, const TimeElement& b);

/// dp * sum_j (j dp) <xi^(-j dp), eta^(j dp)>.
Complex omega1_freq(const BandLimitedElement& a, const BandLimitedElement& b);

/// omega(x (x) t^k, y (x) t^l) = k delta_{k+l,0} <x,y>.
///
/// The sign is fixed so that negative modes create positive-norm vacuum states
/// at positive level. With mode k placed at grid index -k this equals
/// omega1_freq; with mode k at grid index k it is its negative (the orientation
/// of the circle is reversed relative to the line).
Gaussian omega_modes(const ExactVec& x, int k, const ExactVec& y, int l, const LieAlgebra& alg);

template <class S>
S omega_modes(const BasicLaurent<S>& a, const BasicLaurent<S>& b) {
    a.same_algebra(b);
    const auto& g = *a.algebra();
    S acc(0);
    for (const auto& [k, x] : a.modes()) {
        if (k == 0) continue;
        auto it = b.modes().find(-k);
        if (it == b.modes().end()) continue;
        acc += S(k) * g.template form<S>(std::span<const S>(x), std::span<const S>(it->second));
    }
    return acc;
}

/// (1/2 pi i) int f g' over the support of f g'.
Complex gamma_time(const FunctionProduct& f, const FunctionProduct& g);
Complex gamma_time(const TestFunction& f, const TestFunction& g);

/// Samples the closed-form Fourier transform of x (x) f on |p| <= pmax.
/// Only Gaussian bumps have a closed form: w sqrt(2 pi) exp(-2 pi^2 w^2 p^2) exp(-i 2 pi p c).
BandLimitedElement sample_fourier(AlgebraPtr g, const Vec<Complex>& x, const TestFunction& f, Rational dp,
                                  double pmax);

// ---------------------------------------------------------------------------
// Candidates, verification and classification.

enum class Realization { Frequency, Modes, Time };
std::string to_string(Realization r);

/// A bilinear form on loop elements, given by a polynomial kernel K:
///   frequency: dp * sum_j K(j dp) <xi^(-j dp), eta^(j dp)>
///   modes:     sum_k K(k) <x_k, y_{-k}>
///   time:      c * omega1_time (canonical and scaled kinds only)
/// The canonical cocycle is K(p) = p, the scaled one K(p) = c p.
struct CocycleCandidate {
    enum class Kind { Canonical, Scaled, Kernel };
    Kind kind = Kind::Canonical;
    Gaussian c{1};
    std::vector<Gaussian> kernel;  // kernel[n] multiplies p^n
    std::string label;

    static CocycleCandidate canonical();
    static CocycleCandidate scaled(Gaussian c);
    static CocycleCandidate polynomial(std::vector<Gaussian> coeffs, std::string label = "kernel");

    /// Effective polynomial coefficients (canonical -> {0,1}, scaled -> {0,c}).
    std::vector<Gaussian> coefficients() const;
    Complex kernel_value(double p) const;

    Complex eval(const BandLimitedElement& a, const BandLimitedElement& b) const;
    Gaussian eval(const LaurentElement& a, const LaurentElement& b) const;
    /// Throws ParameterError for kernel candidates.
    Complex eval(const TimeElement& a, const TimeElement& b) const;
};

struct SamplingConfig {
    std::uint64_t seed = 0;
    int samples = 200;
    Rational dp{1, 4};
    int max_index = 8;      // random grid / mode support in [-max_index, max_index]
    int max_mode = 3;       // Laurent probes
    double tolerance = 1e-9;
    double classify_tolerance = 1e-6;
};

struct CheckResult {
    std::string name;
    bool ok = true;
    double max_residual = 0.0;
    int probes = 0;
};

struct CocycleReport {
    std::string candidate;
    std::string algebra;
    Realization realization = Realization::Frequency;
    CheckResult antisymmetry{"antisymmetry"};
    CheckResult jacobi{"jacobi"};
    CheckResult locality{"locality"};
    CheckResult translation{"translation_invariance"};
    CheckResult g_invariance{"g_invariance"};
    bool exact = false;  // residuals computed in exact arithmetic

    bool all_ok() const {
        return antisymmetry.ok && jacobi.ok && locality.ok && translation.ok && g_invariance.ok;
    }
    std::vector<const CheckResult*> checks() const {
        return {&antisymmetry, &jacobi, &locality, &translation, &g_invariance};
    }
};

/// Runs all five axiom checks on seeded random probes. Candidate evaluation
/// errors propagate with the failing check named in the message.
CocycleReport verify(const CocycleCandidate& candidate, Realization realization, const AlgebraPtr& algebra,
                     const SamplingConfig& config);

struct ClassifyResult {
    bool proportional = false;
    Complex level{0.0, 0.0};
    double residual = 0.0;
    double scale = 1.0;
    int probe_attempts = 0;
};

/// Extracts c = candidate/omega1 on a probe pair with omega1 != 0 and reports
/// sup |candidate - c omega1| over random pairs (frequency realization).
ClassifyResult classify(const CocycleCandidate& candidate, const AlgebraPtr& algebra, const SamplingConfig& config);

struct InductionResult {
    double max_residual = 0.0;
    Complex gamma_e0{0.0, 0.0};
    std::vector<double> residuals;  // residuals[k-1] for k = 1..k_max
};

/// gamma(f, e_k) versus k gamma(f e_{k-1}, e_1) for k = 1..k_max, with the
/// canonical gamma(f,g) = (1/2 pi i) int f g'. Requires supp f in [-a/2, a/2].
InductionResult induction_check(const TestFunction& f, int k_max, double period);

/// gamma(fg,h) + gamma(gh,f) + gamma(hf,g).
Complex jacobi_functions_residual(const TestFunction& f, const TestFunction& g, const TestFunction& h);

// Probe generators shared with the property suites.
BandLimitedElement random_bandlimited(Rng& rng, const AlgebraPtr& g, const Rational& dp, int max_index);
LaurentElement random_laurent(Rng& rng, const AlgebraPtr& g, int max_mode, int max_terms = 3);
TimeElement random_time_element(Rng& rng, const AlgebraPtr& g);
Vec<Complex> random_complex_vec(Rng& rng, int dim);
ExactVec random_exact_vec(Rng& rng, int dim, int bound = 3);

}  // namespace loopforge
