#include <doctest.h>

#include "loopforge/cocycle.hpp"
#include "loopforge/correlator.hpp"

using namespace loopforge;

namespace {

LaurentElement mode(const AlgebraPtr& g, int a, int k) { return LaurentElement::basis_mode(g, a, k); }

std::vector<LaurentElement> starred_reverse(const std::vector<LaurentElement>& fs) {
    std::vector<LaurentElement> out;
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) out.push_back(star_element(*it));
    return out;
}

// Only negative modes, so xi Omega is a pure creation state.
LaurentElement creation(Rng& rng, const AlgebraPtr& g) {
    LaurentElement out(g);
    for (int k = 1; k <= 2; ++k) out.add(-k, random_exact_vec(rng, g->dim(), 2));
    return out;
}

}  // namespace

TEST_CASE("small correlators") {
    const AlgebraPtr g = make_sln(2);
    const int E = 0, H = 1, F = 2;
    CHECK(npoint(Gaussian(2), {mode(g, F, 1), mode(g, E, -1)}) == Gaussian(2));
    CHECK(npoint(Gaussian(2), {mode(g, H, 2), mode(g, H, -2)}) == Gaussian(8));
    CHECK(npoint(Gaussian(2), {mode(g, E, -1), mode(g, F, 1)}) == Gaussian(0));
    CHECK(npoint(Gaussian(5), {mode(g, H, 0)}) == Gaussian(0));
    CHECK(npoint(Gaussian(5), {}) == Gaussian(1));
    // <F_1 F_1 E_{-1} E_{-1}> = ||E_{-1}^2 Omega||^2 = 2c(c-1).
    for (int c = -1; c <= 4; ++c)
        CHECK(npoint(Gaussian(c), {mode(g, F, 1), mode(g, F, 1), mode(g, E, -1), mode(g, E, -1)}) ==
              Gaussian(2 * c * (c - 1)));
}

TEST_CASE("two-point function in closed form") {
    const AlgebraPtr g = make_sln(3);
    Rng rng(12);
    for (int t = 0; t < 30; ++t) {
        const auto a = random_laurent(rng, g, 3), b = random_laurent(rng, g, 3);
        const Gaussian c(Rational(rng.integer(-4, 4), rng.integer(1, 3)));
        CHECK(npoint(c, {a, b}) == c * omega_modes(a.split_positive().first, b));
    }
}

TEST_CASE("annihilation classes") {
    const AlgebraPtr g = make_sln(2);
    CHECK(annihilates(mode(g, 0, 1)).strict);
    CHECK_FALSE(annihilates(mode(g, 1, 0)).strict);
    CHECK(annihilates(mode(g, 1, 0)).vacuum);
    CHECK_FALSE(annihilates(mode(g, 0, -1)).vacuum);
    BandLimitedElement b(g, Rational(1, 2));
    b.add(2, {Complex(1), Complex(0), Complex(0)});
    CHECK(annihilates(b).strict);
}

TEST_CASE("injected one-point functional") {
    const AlgebraPtr g = make_sln(2);
    NPointEngine<Gaussian> engine(Gaussian(1), ExactVec{Gaussian(0), Gaussian(3), Gaussian(0)});
    CHECK(engine.one_point(mode(g, 1, 0)) == Gaussian(3));
    CHECK(engine.one_point(mode(g, 1, -1)) == Gaussian(0));
    CHECK(engine.eval({mode(g, 1, 0)}) == Gaussian(3));
    NPointEngine<Gaussian> plain(Gaussian(1));
    CHECK(plain.one_point(mode(g, 1, 0)) == Gaussian(0));
}

TEST_CASE("reduction trace") {
    const AlgebraPtr g = make_sln(2);
    const std::vector<LaurentElement> q{mode(g, 2, 1), mode(g, 2, 1), mode(g, 0, -1), mode(g, 0, -1)};
    ReductionTrace trace;
    const Gaussian v = npoint(Gaussian(2), q, &trace);
    CHECK(v == Gaussian(4));
    const auto j = trace.to_json();
    CHECK(j["root"] == 0);
    CHECK(j["nodes"][0]["value"] == "4");
    CHECK(j["nodes"][0]["factors"].size() == 4);
    CHECK(j["nodes"][0]["plus"] == "F⊗t^1");
    ReductionTrace tiny;
    tiny.cap = 3;
    CHECK_THROWS_AS(npoint(Gaussian(2), q, &tiny), ResourceError);
}

TEST_CASE("matrix oracle and truncation") {
    const AlgebraPtr g = make_sln(2);
    const std::vector<LaurentElement> q{mode(g, 2, 1), mode(g, 2, 1), mode(g, 0, -1), mode(g, 0, -1)};
    CHECK(required_cutoff(q) == 2);
    const auto m1 = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(2)), 1);
    CHECK_THROWS_AS(npoint_oracle(m1, q), TruncationError);
    const auto m2 = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(2)), 2);
    CHECK(npoint_oracle(m2, q) == Gaussian(4));
    const auto m3 = VacuumModule::build(AffineWeight::vacuum(make_sln(3), Gaussian(2)), 2);
    CHECK_THROWS_AS(npoint_oracle(m3, q), AlgebraMismatch);
}

TEST_CASE("reduction agrees with the matrix oracle") {
    for (const char* name : {"sl2", "sl3"}) {
        const AlgebraPtr g = load_algebra(name);
        OracleCache cache(g);
        Rng rng(77);
        int checked = 0;
        for (int t = 0; t < 40; ++t) {
            std::vector<LaurentElement> fs;
            const int n = rng.integer(1, std::string(name) == "sl2" ? 4 : 3);
            for (int i = 0; i < n; ++i) fs.push_back(random_laurent(rng, g, 2, 2));
            if (required_cutoff(fs) > (std::string(name) == "sl2" ? 4 : 2)) continue;
            const Gaussian c(rng.integer(-2, 3));
            CHECK(npoint(c, fs) == cache.eval(c, fs));
            ++checked;
        }
        CHECK(checked > 10);
    }
}

TEST_CASE("hermiticity, positivity and linearity") {
    const AlgebraPtr g = make_sln(2);
    Rng rng(40);
    for (int t = 0; t < 15; ++t) {
        std::vector<LaurentElement> fs;
        for (int i = 0; i < 3; ++i) fs.push_back(random_laurent(rng, g, 2));
        const Gaussian c(rng.integer(-3, 3));
        CHECK(npoint(c, fs).conj() == npoint(c, starred_reverse(fs)));

        const auto a = random_laurent(rng, g, 2), b = random_laurent(rng, g, 2);
        const Gaussian s(Rational(rng.integer(-3, 3)), Rational(1, 2));
        auto mixed = fs;
        mixed[0] = a + s * b;
        auto fa = fs, fb = fs;
        fa[0] = a;
        fb[0] = b;
        CHECK(npoint(c, mixed) == npoint(c, fa) + s * npoint(c, fb));
    }
    for (int c = 1; c <= 2; ++c)
        for (int t = 0; t < 10; ++t) {
            const auto a = creation(rng, g), b = creation(rng, g);
            const Gaussian n = npoint(Gaussian(c), {star_element(b), star_element(a), a, b});
            CHECK(n.is_real());
            CHECK(n.re() >= 0);
        }
}

TEST_CASE("band-limited correlators are translation invariant") {
    const AlgebraPtr g = make_sln(2);
    Rng rng(6);
    const Rational dp(1, 4);
    for (int t = 0; t < 8; ++t) {
        std::vector<BandLimitedElement> fs, shifted;
        for (int i = 0; i < 3; ++i) fs.push_back(random_bandlimited(rng, g, dp, 2));
        const double a = rng.uniform(-2, 2);
        for (const auto& f : fs) shifted.push_back(translate(f, a));
        const Complex v = npoint(Complex(2.0), fs), w = npoint(Complex(2.0), shifted);
        CHECK(std::abs(v - w) < 1e-10 * (1 + std::abs(v)));
    }
    std::vector<BandLimitedElement> bad{random_bandlimited(rng, g, dp, 2), random_bandlimited(rng, g, Rational(1, 3), 2)};
    CHECK_THROWS_AS(npoint(Complex(1.0), bad), IncompatibleGrid);
    CHECK_THROWS_AS(npoint(Gaussian(1), {mode(g, 0, 1), mode(make_sln(3), 0, -1)}), AlgebraMismatch);
}
