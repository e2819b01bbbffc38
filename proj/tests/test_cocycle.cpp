#include <doctest.h>

#include <cmath>

#include "loopforge/cocycle.hpp"

using namespace loopforge;

namespace {

// Residue oracle: omega(a, b) = (1/2 pi i) contour integral of <a'(z), b(z)> dz
// on |z| = 1, by the trapezoid rule (exact for these Laurent polynomials).
Complex contour_omega(const LaurentElement& a, const LaurentElement& b) {
    const auto& g = *a.algebra();
    const int M = 64;
    Complex acc(0.0, 0.0);
    for (int m = 0; m < M; ++m) {
        const Complex z = std::polar(1.0, 2 * M_PI * m / M);
        Vec<Complex> da(g.dim(), Complex(0)), bz(g.dim(), Complex(0));
        for (const auto& [k, x] : a.modes())
            for (int i = 0; i < g.dim(); ++i) da[i] += double(k) * std::pow(z, k - 1) * x[i].to_complex();
        for (const auto& [l, y] : b.modes())
            for (int i = 0; i < g.dim(); ++i) bz[i] += std::pow(z, l) * y[i].to_complex();
        acc += g.form<Complex>(std::span<const Complex>(da), std::span<const Complex>(bz)) * z;
    }
    return acc / double(M);
}

}  // namespace

TEST_CASE("mode cocycle against the residue oracle") {
    const AlgebraPtr g = make_sln(3);
    Rng rng(21);
    for (int t = 0; t < 40; ++t) {
        const auto a = random_laurent(rng, g, 4), b = random_laurent(rng, g, 4);
        CHECK(std::abs(omega_modes(a, b).to_complex() - contour_omega(a, b)) < 1e-10);
    }
    const AlgebraPtr s = make_sln(2);
    CHECK(omega_modes(LaurentElement::basis_mode(s, 0, 1), LaurentElement::basis_mode(s, 2, -1)) == Gaussian(1));
    CHECK(omega_modes(LaurentElement::basis_mode(s, 1, -2), LaurentElement::basis_mode(s, 1, 2)) == Gaussian(-4));
    CHECK(omega_modes(LaurentElement::basis_mode(s, 1, 0), LaurentElement::basis_mode(s, 1, 0)) == Gaussian(0));
}

TEST_CASE("time and frequency realizations agree on Gaussian bumps") {
    const AlgebraPtr g = make_sln(2);
    Rng rng(4);
    for (int t = 0; t < 6; ++t) {
        const auto x = random_complex_vec(rng, 3), y = random_complex_vec(rng, 3);
        const auto f = TestFunction::gaussian(rng.uniform(-1, 1), rng.uniform(0.4, 0.9));
        const auto h = TestFunction::gaussian(rng.uniform(-1, 1), rng.uniform(0.4, 0.9));
        const Complex tv = omega1_time(x, f, y, h, *g);
        const Rational dp(1, 32);
        const Complex fv = omega1_freq(sample_fourier(g, x, f, dp, 8.0), sample_fourier(g, y, h, dp, 8.0));
        CHECK(std::abs(tv - fv) < 1e-6);
    }
    CHECK_THROWS_AS(sample_fourier(g, Vec<Complex>(3), TestFunction::compact(0, 1), Rational(1, 4), 2.0),
                    ParameterError);
}

TEST_CASE("canonical cocycle satisfies the axioms in every realization") {
    for (const char* name : {"sl2", "sl3"}) {
        const AlgebraPtr g = load_algebra(name);
        SamplingConfig cfg;
        cfg.seed = 99;
        cfg.samples = 40;
        for (Realization r : {Realization::Frequency, Realization::Modes, Realization::Time}) {
            CAPTURE(to_string(r));
            const CocycleReport rep = verify(CocycleCandidate::canonical(), r, g, cfg);
            CHECK(rep.all_ok());
            CHECK(rep.exact == (r == Realization::Modes));
        }
    }
}

TEST_CASE("wrong kernels break the axioms") {
    const AlgebraPtr g = make_sln(2);
    SamplingConfig cfg;
    cfg.seed = 5;
    cfg.samples = 30;
    // Constant kernel is symmetric, not antisymmetric.
    const auto constant = CocycleCandidate::polynomial({Gaussian(1)});
    CHECK_FALSE(verify(constant, Realization::Frequency, g, cfg).antisymmetry.ok);
    CHECK_FALSE(verify(constant, Realization::Modes, g, cfg).antisymmetry.ok);
    // Cubic kernel is a cocycle but fails the cocycle-to-omega proportionality.
    const auto cubic = CocycleCandidate::polynomial({Gaussian(0), Gaussian(0), Gaussian(0), Gaussian(1)});
    CHECK_FALSE(classify(cubic, g, cfg).proportional);
    CHECK_THROWS_AS(verify(cubic, Realization::Time, g, cfg), ParameterError);
    cfg.samples = 0;
    CHECK_THROWS_AS(verify(CocycleCandidate::canonical(), Realization::Modes, g, cfg), ParameterError);
}

TEST_CASE("classification recovers the level") {
    const AlgebraPtr g = make_sln(3);
    SamplingConfig cfg;
    cfg.seed = 17;
    cfg.samples = 30;
    for (const Gaussian c : {Gaussian(1), Gaussian(-3), Gaussian(Rational(1, 2), Rational(2))}) {
        const ClassifyResult r = classify(CocycleCandidate::scaled(c), g, cfg);
        CHECK(r.proportional);
        CHECK(std::abs(r.level - c.to_complex()) < 1e-9);
    }
    CHECK(CocycleCandidate::canonical().coefficients() == std::vector<Gaussian>{Gaussian(0), Gaussian(1)});
}

TEST_CASE("induction recursion on exponentials") {
    for (const auto& f : {TestFunction::compact(0, 1), TestFunction::compact(0.3, 0.8)}) {
        const InductionResult r = induction_check(f, 6, 4.0);
        CHECK(r.residuals.size() == 6);
        CHECK(r.max_residual < 1e-8);
        // gamma(f, e_0) vanishes since e_0 is constant on supp f.
        CHECK(std::abs(r.gamma_e0) < 1e-12);
    }
    CHECK_THROWS_AS(induction_check(TestFunction::compact(0, 3), 4, 4.0), ParameterError);
    CHECK_THROWS_AS(induction_check(TestFunction::compact(0, 1), 0, 4.0), ParameterError);
}

TEST_CASE("gamma is a cyclic cocycle on functions") {
    const auto f = TestFunction::gaussian(0.1, 0.6), g = TestFunction::compact(-0.2, 1.1),
               h = TestFunction::gaussian(-0.3, 0.8);
    CHECK(std::abs(jacobi_functions_residual(f, g, h)) < 1e-9);
    CHECK(std::abs(gamma_time(f, g) + gamma_time(g, f)) < 1e-10);
    // Disjoint supports give zero.
    CHECK(gamma_time(TestFunction::compact(-3, 1), TestFunction::compact(3, 1)) == Complex(0.0, 0.0));
}
