#include <doctest.h>

#include <cmath>

#include "loopforge/witness.hpp"

using namespace loopforge;

namespace {

OnePointFunctional psi(const char* alg, const char* text) {
    return OnePointFunctional::from_json(load_algebra(alg), nlohmann::json::parse(text));
}

// Closed form for the smoothstep bump: int b^2 = 13/35, and b^2 is symmetric
// about the midpoint of its support.
double closed_i0(const BumpSpec& b) { return 13.0 / 35.0 * (b.hi - b.lo) * b.amplitude * b.amplitude; }
double closed_i1(const BumpSpec& b) { return 0.5 * (b.lo + b.hi) * closed_i0(b); }

}  // namespace

TEST_CASE("bump integrals match the closed form") {
    const AlgebraPtr g = make_sln(2);
    const Root& r = *g->positive_roots().front();
    for (double eps : {1.0, 0.3, 1e-3}) {
        for (double amp : {1.0, 2.5}) {
            const BumpSpec b = BumpSpec::family(eps, amp);
            const NormCertificate n = norm_squared(1.0, 2.0, r, *g, b, 8);
            CHECK(std::abs(n.i0 - closed_i0(b)) < 1e-12 * std::max(1.0, closed_i0(b)));
            CHECK(std::abs(n.i1 - closed_i1(b)) < 1e-12 * std::max(1.0, std::abs(closed_i1(b))));
            CHECK(std::abs(n.i1 / n.i0 + 5 * eps / 8) < 1e-12);
        }
    }
    const BumpSpec b = BumpSpec::family(1.0);
    CHECK(b(-0.625) == doctest::Approx(1.0));
    CHECK(b(-0.1) == 0.0);
    CHECK(b(-1.2) == 0.0);
}

TEST_CASE("norm recombination and scaling") {
    const AlgebraPtr g = make_sln(2);
    const Root& r = *g->positive_roots().front();
    const BumpSpec b = BumpSpec::family(0.5);
    for (double p : {-1.0, 0.0, 0.7}) {
        for (double c : {1.0, 3.0}) {
            const auto e = norm_squared(p, c, r, *g, b);
            CHECK(e.norm_squared == doctest::Approx(-p * e.i0 - c * e.form_value * e.i1));
            const auto f = norm_squared_f(p, c, r, *g, b);
            CHECK(f.norm_squared == doctest::Approx(p * f.i0 - c * f.form_value * f.i1));
            const auto s = norm_squared(p, c, r, *g, BumpSpec::family(0.5, 3.0));
            CHECK(s.norm_squared == doctest::Approx(9 * e.norm_squared));
        }
        // Without psi0 both norms are positive: I1 < 0.
    }
    CHECK(norm_squared(0.0, 1.0, r, *g, b).norm_squared > 0);
    CHECK(norm_squared_f(0.0, 1.0, r, *g, b).norm_squared > 0);
    CHECK_THROWS_AS(norm_squared(1.0, 1.0, r, *g, BumpSpec{-1.0, 0.5, 1.0}), ParameterError);
    CHECK_THROWS_AS(norm_squared(1.0, 1.0, r, *g, BumpSpec{-1.0, -1.0, 1.0}), ParameterError);
    CHECK_NOTHROW(norm_squared(1.0, 1.0, r, *g, BumpSpec{-1.0, 0.0, 1.0}));
}

TEST_CASE("witness search") {
    for (double c : {1.0, 2.0, 3.0}) {
        const auto w = find_witness(psi("sl2", R"({"H": "1"})"), c);
        REQUIRE(w.has_value());
        CHECK(w->branch == "E");
        CHECK(w->norm_squared() < 0);
        CHECK(w->resolution_gap < 1e-8);
        // The threshold eps < 8 psi0(H) / (5c) sits between the last two steps.
        CHECK(w->epsilon < 1.6 / c);
        CHECK((w->halvings == 0 || 2 * w->epsilon >= 1.6 / c));

        const auto f = find_witness(psi("sl2", R"({"H": "-1/2"})"), c);
        REQUIRE(f.has_value());
        CHECK(f->branch == "F");
        CHECK(f->norm_squared() < 0);
    }
    CHECK_FALSE(find_witness(OnePointFunctional::zero(make_sln(2)), 1.0).has_value());
    CHECK(find_witness(psi("sl3", R"({"H1": "1"})"), 1.0).has_value());
    CHECK_THROWS_AS(find_witness(psi("sl2", R"({"H": "1"})"), 0.0), ParameterError);
    CHECK_THROWS_AS(find_witness(psi("sl2", R"({"E": "1"})"), 1.0), ParameterError);
    WitnessOptions tight;
    tight.max_halvings = 0;
    CHECK_THROWS_AS(find_witness(psi("sl2", R"({"H": "1/1000"})"), 1.0, tight), SearchFailure);
}

TEST_CASE("consistency statuses") {
    CHECK(consistency_report(psi("sl2", "{}"), 1.0).status == "consistent");
    CHECK(consistency_report(psi("sl2", R"({"H": "2"})"), 1.0).status == "excluded");
    CHECK(consistency_report(psi("sl2", R"({"E": "1", "F": "1"})"), 1.0).status == "no_witness_of_this_form");
    CHECK(consistency_report(psi("sl2", R"({"E": "1"})"), 1.0).status == "not_self_adjoint");
    CHECK(consistency_report(psi("sl2", R"({"H": "i"})"), 1.0).status == "not_self_adjoint");
    const auto rep = consistency_report(psi("sl2", R"({"H": "1"})"), 1.0);
    const auto j = to_json(rep);
    CHECK(j["status"] == "excluded");
    CHECK(j["nonzero_coroots"].size() == 1);
    CHECK_THROWS_AS(psi("sl2", R"({"Q": "1"})"), ValidationError);
    CHECK_THROWS_AS(psi("sl2", "[1]"), ValidationError);
}
