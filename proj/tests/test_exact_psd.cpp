#include <doctest.h>

#include "loopforge/exact_psd.hpp"
#include "loopforge/random.hpp"

using namespace loopforge;

namespace {

Gaussian det(ExactMatrix a) {
    const int n = static_cast<int>(a.size());
    Gaussian d(1);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return Gaussian(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            const Gaussian f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

// Sylvester: Hermitian M is PSD iff every principal minor is >= 0.
bool psd_by_minors(const ExactMatrix& m) {
    const int n = static_cast<int>(m.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        ExactMatrix sub(idx.size(), ExactVec(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = m[idx[i]][idx[j]];
        if (det(sub).re() < 0) return false;
    }
    return true;
}

Gaussian small(Rng& rng) { return Gaussian(Rational(rng.integer(-3, 3), rng.integer(1, 3)), Rational(rng.integer(-2, 2))); }

// B^dagger B for a k x n matrix B: PSD of rank <= k.
ExactMatrix gram_of(Rng& rng, int n, int k) {
    ExactMatrix b(k, ExactVec(n));
    for (auto& row : b)
        for (auto& x : row) x = small(rng);
    ExactMatrix m(n, ExactVec(n, Gaussian(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < k; ++r) m[i][j] += b[r][i].conj() * b[r][j];
    return m;
}

ExactMatrix random_hermitian(Rng& rng, int n) {
    ExactMatrix m(n, ExactVec(n));
    for (int i = 0; i < n; ++i) {
        m[i][i] = Gaussian(Rational(rng.integer(-2, 6)));
        for (int j = i + 1; j < n; ++j) {
            m[i][j] = small(rng);
            m[j][i] = m[i][j].conj();
        }
    }
    return m;
}

void check_against_oracle(const ExactMatrix& m) {
    const PsdDecision d = decide_psd(m);
    CHECK(d.psd == psd_by_minors(m));
    if (!d.psd) {
        REQUIRE(d.witness.has_value());
        const Gaussian q = hermitian_form(m, *d.witness);
        CHECK(q.im() == 0);
        CHECK(q.re() == d.witness_value);
        CHECK(d.witness_value < 0);
    }
}

}  // namespace

TEST_CASE("PSD decisions agree with principal minors") {
    Rng rng(2024);
    int psd = 0, indefinite = 0;
    for (int t = 0; t < 150; ++t) {
        const int n = rng.integer(1, 5);
        ExactMatrix m;
        switch (t % 3) {
            case 0: m = gram_of(rng, n, rng.integer(1, n)); break;
            case 1: m = random_hermitian(rng, n); break;
            default: {
                m = gram_of(rng, n, rng.integer(1, n));
                m[0][0] -= Gaussian(Rational(1, 7));
            }
        }
        check_against_oracle(m);
        (decide_psd(m).psd ? psd : indefinite)++;
    }
    CHECK(psd > 20);
    CHECK(indefinite > 20);
}

TEST_CASE("rank of positive semidefinite matrices") {
    Rng rng(8);
    for (int k = 1; k <= 4; ++k) {
        const PsdDecision d = decide_psd(gram_of(rng, 5, k));
        CHECK(d.psd);
        CHECK(d.rank <= k);
    }
    CHECK(decide_psd(ExactMatrix{}).psd);
    CHECK(decide_psd(ExactMatrix(3, ExactVec(3, Gaussian(0)))).rank == 0);
}

TEST_CASE("certificates for small indefinite forms") {
    // Zero diagonal, nonzero coupling.
    const ExactMatrix m{{Gaussian(0), Gaussian(Rational(0), Rational(1))}, {Gaussian(Rational(0), Rational(-1)), Gaussian(0)}};
    check_against_oracle(m);
    CHECK_FALSE(decide_psd(m).psd);
    const ExactMatrix n{{Gaussian(Rational(-1, 2))}};
    const PsdDecision d = decide_psd(n);
    CHECK(d.witness_value == Rational(-1, 2));
}

TEST_CASE("non-Hermitian input and exact solves") {
    const ExactMatrix bad{{Gaussian(1), Gaussian(2)}, {Gaussian(3), Gaussian(1)}};
    CHECK_FALSE(is_hermitian(bad));
    CHECK_THROWS_AS(decide_psd(bad), ParameterError);
    const ExactMatrix a{{Gaussian(2), Gaussian(1)}, {Gaussian(1), Gaussian(3)}};
    const ExactVec x = solve_exact(a, {Gaussian(1), Gaussian(Rational(0), Rational(1))});
    CHECK(a[0][0] * x[0] + a[0][1] * x[1] == Gaussian(1));
    CHECK(a[1][0] * x[0] + a[1][1] * x[1] == Gaussian::i());
}
