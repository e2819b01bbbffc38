#include <doctest.h>

#include <cmath>

#include "loopforge/cocycle.hpp"
#include "loopforge/loop_elements.hpp"
#include "loopforge/random.hpp"
#include "loopforge/test_function.hpp"

using namespace loopforge;

namespace {

double max_diff(const BasicLaurent<Complex>& a, const BasicLaurent<Complex>& b) {
    double d = 0.0;
    const auto diff = a - b;
    for (const auto& [k, v] : diff.modes())
        for (const auto& x : v) d = std::max(d, std::abs(x));
    return d;
}

double max_diff(const BandLimitedElement& a, const BandLimitedElement& b) {
    double d = 0.0;
    const auto diff = a - b;
    for (const auto& [k, v] : diff.samples())
        for (const auto& x : v) d = std::max(d, std::abs(x));
    return d;
}

}  // namespace

TEST_CASE("laurent bracket on basis modes") {
    const AlgebraPtr g = make_sln(2);
    const auto E1 = LaurentElement::basis_mode(g, 0, 1);
    const auto Fm2 = LaurentElement::basis_mode(g, 2, -2);
    CHECK(laurent_bracket(E1, Fm2) == LaurentElement::basis_mode(g, 1, -1));
    CHECK(laurent_bracket(Fm2, E1) == LaurentElement::basis_mode(g, 1, -1, Gaussian(-1)));
    CHECK(star_element(E1) == LaurentElement::basis_mode(g, 2, -1));
}

TEST_CASE("laurent elements prune zeros and split by sign") {
    const AlgebraPtr g = make_sln(2);
    auto a = LaurentElement::basis_mode(g, 0, 2) + LaurentElement::basis_mode(g, 1, 0) + LaurentElement::basis_mode(g, 2, -1);
    const auto [plus, rest] = a.split_positive();
    CHECK(plus == LaurentElement::basis_mode(g, 0, 2));
    CHECK(rest.min_mode() == -1);
    CHECK(rest.max_mode() == 0);
    a = a - a;
    CHECK(a.is_zero());
    CHECK_THROWS_AS(LaurentElement(g).add(0, ExactVec(2)), DimensionError);
    CHECK_THROWS_AS(laurent_bracket(LaurentElement(g), LaurentElement(make_sln(3))), AlgebraMismatch);
}

TEST_CASE("exact rotation is a bracket automorphism") {
    const AlgebraPtr g = make_sln(3);
    Rng rng(11);
    const Gaussian phase(Rational(3, 5), Rational(4, 5));
    for (int t = 0; t < 20; ++t) {
        const auto a = random_laurent(rng, g, 3), b = random_laurent(rng, g, 3);
        CHECK(rotate(laurent_bracket(a, b), phase) == laurent_bracket(rotate(a, phase), rotate(b, phase)));
        CHECK(omega_modes(rotate(a, phase), rotate(b, phase)) == omega_modes(a, b));
    }
}

TEST_CASE("band-limited bracket equals the direct convolution") {
    const AlgebraPtr g = make_sln(2);
    Rng rng(3);
    const Rational dp(1, 4);
    for (int t = 0; t < 10; ++t) {
        const auto a = random_bandlimited(rng, g, dp, 5), b = random_bandlimited(rng, g, dp, 5);
        BandLimitedElement direct(g, dp);
        for (const auto& [m, x] : a.samples())
            for (const auto& [n, y] : b.samples()) {
                auto v = g->bracket<Complex>(std::span<const Complex>(x), std::span<const Complex>(y));
                for (auto& c : v) c *= 0.25;
                direct.add(m + n, v);
            }
        CHECK(max_diff(bl_bracket(a, b), direct) < 1e-12);
    }
}

TEST_CASE("grid dilation to modes preserves brackets and flips the cocycle sign") {
    const AlgebraPtr g = make_sln(3);
    Rng rng(5);
    for (const Rational dp : {Rational(1, 4), Rational(1), Rational(3, 2)}) {
        for (int t = 0; t < 10; ++t) {
            const auto a = random_bandlimited(rng, g, dp, 4), b = random_bandlimited(rng, g, dp, 4);
            CHECK(max_diff(to_modes(bl_bracket(a, b)), laurent_bracket(to_modes(a), to_modes(b))) < 1e-12);
            CHECK(std::abs(omega1_freq(a, b) + omega_modes(to_modes(a), to_modes(b))) < 1e-12);
        }
    }
}

TEST_CASE("translation, star and frequency split") {
    const AlgebraPtr g = make_sln(2);
    Rng rng(9);
    const Rational dp(1, 4);
    const auto a = random_bandlimited(rng, g, dp, 6);
    CHECK(max_diff(translate(translate(a, 0.3), -1.1), translate(a, -0.8)) < 1e-13);
    CHECK(max_diff(star_element(star_element(a)), a) == 0.0);
    const auto split = frequency_split(a, 0.8);
    CHECK(max_diff(split.plus + split.minus, a) < 1e-15);
    for (const auto& [j, v] : split.plus.samples()) CHECK(j > 0);
    // Where the ramp is 0 or 1 the split is exact.
    const auto coarse = frequency_split(a, 0.2);
    CHECK(max_diff(coarse.plus + coarse.minus, a) == 0.0);
    CHECK(smooth_ramp(-1.0, 1.0) == 0.0);
    CHECK(smooth_ramp(2.0, 1.0) == 1.0);
    CHECK(smooth_ramp(0.5, 1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(bl_bracket(a, BandLimitedElement(g, Rational(1, 8))), IncompatibleGrid);
}

TEST_CASE("constant loop acts pointwise") {
    const AlgebraPtr g = make_sln(2);
    Rng rng(1);
    const Rational dp(1, 2);
    const auto a = random_bandlimited(rng, g, dp, 4);
    const auto delta = random_complex_vec(rng, 3);
    const auto r = bl_bracket(constant_loop(g, dp, delta), a);
    for (const auto& [j, v] : a.samples()) {
        const auto expect = g->bracket<Complex>(std::span<const Complex>(delta), std::span<const Complex>(v));
        const auto got = r.at(j);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-13);
    }
}

TEST_CASE("test functions: derivatives, supports and validation") {
    const std::vector<TestFunction> fs{TestFunction::gaussian(0.3, 0.7), TestFunction::compact(-0.2, 1.3),
                                       TestFunction::exponential(3, 2.0, 0.1)};
    for (const auto& f : fs) {
        CAPTURE(f.describe());
        for (double t : {-0.9, -0.31, 0.05, 0.4, 1.2}) {
            const double h = 1e-5;
            const Complex fd = (f.value(t + h) - f.value(t - h)) / (2 * h);
            CHECK(std::abs(fd - f.derivative(t)) < 1e-6);
        }
        const auto [lo, hi] = f.support();
        CHECK(std::abs(f.value(hi + 1e-9)) < 1e-30);
        CHECK(std::abs(f.value(lo - 1e-9)) < 1e-30);
    }
    // e_k is exactly exp(i 2 pi k t / a) on [c - a/2, c + a/2].
    const auto e = TestFunction::exponential(2, 3.0);
    CHECK(std::abs(e.value(0.7) - std::polar(1.0, 2 * M_PI * 2 * 0.7 / 3.0)) < 1e-15);
    CHECK_THROWS_AS(TestFunction::compact(0, -1).validate(), ParameterError);
    CHECK_THROWS_AS(TestFunction::exponential(1, 0.0), ParameterError);
}

TEST_CASE("quadrature") {
    const Complex v = integrate([](double t) { return Complex(std::exp(-t * t), 0.0); }, -10, 10);
    CHECK(std::abs(v.real() - std::sqrt(M_PI)) < 1e-12);
    const Complex p = integrate_panels([](double t) { return Complex(t * t * t * t, t); }, 0, 1, 1);
    CHECK(std::abs(p - Complex(0.2, 0.5)) < 1e-15);
}
