#include <doctest.h>

#include "loopforge/cocycle.hpp"
#include "loopforge/vacuum_module.hpp"

using namespace loopforge;

namespace {

VacuumModule vac(const char* alg, Gaussian c, int n) { return VacuumModule::build(AffineWeight::vacuum(load_algebra(alg), c), n); }

ExactVec unit(int size, int i) {
    ExactVec v(size, Gaussian(0));
    v.at(i) = Gaussian(1);
    return v;
}

// Coefficient of q^d in prod_{n>=1} (1 - q^n)^(-colors).
std::vector<long> colored_partitions(int colors, int n) {
    std::vector<long> p(n + 1, 0);
    p[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int c = 0; c < colors; ++c)
            for (int d = part; d <= n; ++d) p[d] += p[d - part];
    return p;
}

Gaussian sub_inner(const VacuumModule& m, const ExactVec& v, const ExactVec& w) { return m.inner(v, w); }

}  // namespace

TEST_CASE("grade sizes are colored partition numbers") {
    for (auto [alg, n] : {std::pair{"sl2", 5}, std::pair{"sl3", 3}}) {
        const auto m = vac(alg, Gaussian(1), n);
        const auto p = colored_partitions(m.algebra()->dim(), n);
        long total = 0;
        for (int d = 0; d <= n; ++d) {
            CHECK(m.grade_range(d).second == p[d]);
            total += p[d];
        }
        CHECK(m.size() == total);
    }
    CHECK(vac("sl2", Gaussian(1), 4).size() == 86);
}

TEST_CASE("frozen basis order and labels") {
    const auto m = vac("sl2", Gaussian(1), 2);
    const std::vector<std::string> expect{"Ω",
                                          "E_{-1}Ω",
                                          "H_{-1}Ω",
                                          "F_{-1}Ω",
                                          "E_{-2}Ω",
                                          "H_{-2}Ω",
                                          "F_{-2}Ω",
                                          "E_{-1}E_{-1}Ω",
                                          "E_{-1}H_{-1}Ω",
                                          "E_{-1}F_{-1}Ω",
                                          "H_{-1}H_{-1}Ω",
                                          "H_{-1}F_{-1}Ω",
                                          "F_{-1}F_{-1}Ω"};
    CHECK(m.labels() == expect);
    CHECK(m.index_of({{-1, 0}, {-1, 2}}) == 9);
    CHECK(m.index_of({{-3, 0}}) == -1);
}

TEST_CASE("low-grade Gram blocks") {
    const auto one = vac("sl2", Gaussian(1), 2);
    CHECK(one.gram(0) == ExactMatrix{{Gaussian(1)}});
    CHECK(one.gram(1) == ExactMatrix{{Gaussian(1), Gaussian(0), Gaussian(0)},
                                     {Gaussian(0), Gaussian(2), Gaussian(0)},
                                     {Gaussian(0), Gaussian(0), Gaussian(1)}});
    const auto neg = vac("sl2", Gaussian(Rational(-1, 2)), 1);
    CHECK(neg.gram(1)[1][1] == Gaussian(-1));
    // Grade-2 modes E_{-2}: <E_{-2}, E_{-2}> = 2c.
    CHECK(one.gram(2)[0][0] == Gaussian(2));
}

TEST_CASE("norm of E_{-1}^2 vacuum is 2c(c-1)") {
    for (int c = -2; c <= 4; ++c) {
        const auto m = vac("sl2", Gaussian(c), 2);
        const int i = m.index_of({{-1, 0}, {-1, 0}});
        const auto [first, n] = m.grade_range(2);
        CHECK(m.gram(2)[i - first][i - first] == Gaussian(2 * c * (c - 1)));
        CHECK(m.inner(unit(m.size(), i), unit(m.size(), i)) == Gaussian(2 * c * (c - 1)));
    }
}

TEST_CASE("mode operators on low states") {
    const Gaussian c(3);
    const auto m = vac("sl2", c, 2);
    const auto g = m.algebra();
    const int e1 = m.index_of({{-1, 0}});
    // F_1 E_{-1} Omega = c Omega.
    const auto f1 = m.mode_matrix(g->basis_vector(2), 1);
    CHECK(f1.apply(unit(m.size(), e1)) == scaled(m.vacuum_vector(), c));
    // H_0 E_{-1} Omega = 2 E_{-1} Omega.
    CHECK(m.mode_matrix(g->basis_vector(1), 0).apply(unit(m.size(), e1)) == scaled(unit(m.size(), e1), Gaussian(2)));
    // Positive modes and zero modes annihilate the vacuum.
    for (int a = 0; a < 3; ++a)
        for (int k = 0; k <= 2; ++k) CHECK(is_zero_vec(m.mode_matrix(g->basis_vector(a), k).apply(m.vacuum_vector())));
    CHECK_THROWS_AS(m.mode_matrix(g->basis_vector(0), 3), TruncationError);
}

TEST_CASE("contravariance of the form") {
    for (int c : {1, 2, -1}) {
        const auto m = vac("sl2", Gaussian(c), 3);
        const auto g = m.algebra();
        Rng rng(static_cast<std::uint64_t>(c + 10));
        for (int t = 0; t < 12; ++t) {
            const ExactVec x = random_exact_vec(rng, g->dim(), 2);
            const int k = rng.integer(-2, 2);
            const auto xk = m.mode_matrix(x, k);
            const auto xs = m.mode_matrix(g->star(x), -k);
            for (int i = 0; i < m.size(); ++i) {
                const int gi = grade_of(m.basis()[i]);
                if (gi - k < 0 || gi - k > 3) continue;
                const auto [first, n] = m.grade_range(gi - k);
                for (int j = first; j < first + n; ++j) {
                    const auto ei = unit(m.size(), i), ej = unit(m.size(), j);
                    CHECK(sub_inner(m, xk.apply(ei), ej) == sub_inner(m, ei, xs.apply(ej)));
                }
            }
        }
    }
}

TEST_CASE("mode operators satisfy the affine commutator") {
    const Gaussian c(Rational(5, 2));
    const int N = 4;
    const auto m = vac("sl2", c, N);
    const auto g = m.algebra();
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        const ExactVec x = random_exact_vec(rng, 3), y = random_exact_vec(rng, 3);
        const int k = rng.integer(-2, 2), l = rng.integer(-2, 2);
        const auto X = m.mode_matrix(x, k), Y = m.mode_matrix(y, l), Z = m.mode_matrix(g->bracket(x, y), k + l);
        const Gaussian central = c * omega_modes(x, k, y, l, *g);
        for (int i = 0; i < m.size(); ++i) {
            const int gi = grade_of(m.basis()[i]);
            // Intermediate states must stay below the cutoff.
            if (gi - k > N || gi - l > N || gi - k - l > N) continue;
            const auto v = unit(m.size(), i);
            ExactVec lhs = X.apply(Y.apply(v)), yx = Y.apply(X.apply(v)), rhs = Z.apply(v);
            for (int a = 0; a < m.size(); ++a) {
                lhs[a] -= yx[a];
                rhs[a] += central * v[a];
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("unitarity verdicts") {
    for (int c = 0; c <= 3; ++c) {
        const auto v = unitarity_verdict(vac("sl2", Gaussian(c), 4));
        CHECK(v.psd);
        CHECK(v.checked_up_to == 4);
        CHECK(v.admissibility.admissible);
        CHECK(v.consistent);
    }
    // Level zero: everything above the vacuum is null.
    CHECK(unitarity_verdict(vac("sl2", Gaussian(0), 3)).grade_ranks == std::vector<int>{1, 0, 0, 0});

    const auto neg = unitarity_verdict(vac("sl2", Gaussian(Rational(-1, 2)), 2));
    CHECK_FALSE(neg.psd);
    CHECK(neg.negative_grade == 1);
    CHECK(neg.negative_value < 0);
    CHECK(neg.vector_labels.size() == 3);

    // At c = 1/2 the first negative-norm vector sits at grade 2.
    const auto half = vac("sl2", Gaussian(Rational(1, 2)), 3);
    const auto h = unitarity_verdict(half);
    CHECK_FALSE(h.psd);
    CHECK(h.negative_grade == 2);
    const auto [first, n] = half.grade_range(2);
    ExactVec full(half.size(), Gaussian(0));
    for (int i = 0; i < n; ++i) full[first + i] = h.negative_vector[i];
    CHECK(half.inner(full, full) == Gaussian(h.negative_value));
    CHECK(h.admissibility.witness == "c ∉ ℤ");
    CHECK(h.consistent);

    CHECK_FALSE(unitarity_verdict(vac("sl3", Gaussian(-1), 1)).psd);
    CHECK_THROWS_AS(unitarity_verdict(vac("sl2", Gaussian(Rational(1), Rational(1)), 1)), ParameterError);
}

TEST_CASE("admissibility of weights") {
    const AlgebraPtr g = make_sln(2);
    CHECK(admissible(AffineWeight::vacuum(g, Gaussian(1))).admissible);
    CHECK(admissible(AffineWeight::vacuum(g, Gaussian(-1))).witness == "upper bound −λ(h_α) ≤ c‖h_α‖²/2 violated");
    auto w = [&](Gaussian lam, Gaussian c) { return AffineWeight{g, {lam}, c}; };
    CHECK(admissible(w(Gaussian(-1), Gaussian(1))).admissible);
    CHECK(admissible(w(Gaussian(-2), Gaussian(1))).witness == "upper bound −λ(h_α) ≤ c‖h_α‖²/2 violated");
    CHECK(admissible(w(Gaussian(1), Gaussian(1))).witness == "lower bound 0 ≤ −λ(h_α) violated");
    CHECK(admissible(w(Gaussian(Rational(1, 2)), Gaussian(1))).witness == "−λ(h_α) ∉ ℤ");
    CHECK(admissible(w(Gaussian(-1), Gaussian(1))).root.empty());
}

TEST_CASE("build errors") {
    const AlgebraPtr g = make_sln(2);
    CHECK_THROWS_AS(VacuumModule::build(AffineWeight{g, {Gaussian(-1)}, Gaussian(1)}, 2), Unimplemented);
    CHECK_THROWS_AS(VacuumModule::build(AffineWeight::vacuum(g, Gaussian(1)), 8, ModuleOptions{100}), ResourceError);
    CHECK_THROWS_AS(VacuumModule::build(AffineWeight::vacuum(g, Gaussian(1)), -1), ParameterError);
}
