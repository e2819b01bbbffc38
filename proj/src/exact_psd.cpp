#include "loopforge/exact_psd.hpp"

#include <algorithm>

namespace loopforge {

bool is_hermitian(const ExactMatrix& m) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) return false;
        for (std::size_t j = i; j < n; ++j)
            if (m[i][j] != m[j][i].conj()) return false;
    }
    return true;
}

Gaussian hermitian_form(const ExactMatrix& m, const ExactVec& v) {
    Gaussian acc(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        const Gaussian ci = v[i].conj();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero() && !m[i][j].is_zero()) acc += ci * m[i][j] * v[j];
    }
    return acc;
}

ExactVec solve_exact(ExactMatrix a, ExactVec b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw ParameterError("singular system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            const Gaussian f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    ExactVec x(n, Gaussian(0));
    for (std::size_t i = n; i-- > 0;) {
        Gaussian s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

namespace {

// Lifts a vector w on the remaining indices R to the full space so that
// v^dagger M v equals the Schur-complement form of w: v_R = w, v_P = -M_PP^{-1} M_PR w.
ExactVec lift_witness(const ExactMatrix& m, const std::vector<int>& pivots, const std::vector<int>& rest,
                      const ExactVec& w) {
    const std::size_t n = m.size();
    ExactVec v(n, Gaussian(0));
    for (std::size_t r = 0; r < rest.size(); ++r) v[rest[r]] = w[r];
    if (pivots.empty()) return v;
    const std::size_t k = pivots.size();
    ExactMatrix app(k, ExactVec(k));
    ExactVec rhs(k, Gaussian(0));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) app[a][b] = m[pivots[a]][pivots[b]];
        for (std::size_t r = 0; r < rest.size(); ++r)
            if (!w[r].is_zero()) rhs[a] -= m[pivots[a]][rest[r]] * w[r];
    }
    const ExactVec vp = solve_exact(std::move(app), std::move(rhs));
    for (std::size_t a = 0; a < k; ++a) v[pivots[a]] = vp[a];
    return v;
}

}  // namespace

PsdDecision decide_psd(const ExactMatrix& m) {
    if (!is_hermitian(m)) throw ParameterError("matrix is not Hermitian");
    const int n = static_cast<int>(m.size());
    PsdDecision out;
    if (n == 0) return out;

    // Clear denominators with a positive integer; PSD-ness is unchanged.
    mpz_class lcm = 1;
    for (const auto& row : m)
        for (const auto& x : row) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.re().get_den_mpz_t());
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.im().get_den_mpz_t());
        }
    ExactMatrix a = m;
    const Gaussian scale{Rational(lcm)};
    for (auto& row : a)
        for (auto& x : row) x *= scale;

    std::vector<int> rest(n);
    for (int i = 0; i < n; ++i) rest[i] = i;
    std::vector<int> pivots;
    Gaussian prev(1);

    auto fail = [&](ExactVec w) {
        ExactVec v = lift_witness(m, pivots, rest, w);
        const Gaussian q = hermitian_form(m, v);
        // The certificate must verify on the original matrix.
        if (!q.is_real() || sgn(q.re()) >= 0) throw Error("internal: PSD certificate failed to verify");
        out.psd = false;
        out.witness = std::move(v);
        out.witness_value = q.re();
        return out;
    };

    while (!rest.empty()) {
        const std::size_t r = rest.size();
        // Negative diagonal entry: e_i already certifies.
        for (std::size_t i = 0; i < r; ++i)
            if (sgn(a[rest[i]][rest[i]].re()) < 0) {
                ExactVec w(r, Gaussian(0));
                w[i] = 1;
                return fail(std::move(w));
            }
        std::size_t best = r;
        for (std::size_t i = 0; i < r; ++i) {
            const auto& d = a[rest[i]][rest[i]].re();
            if (sgn(d) > 0 && (best == r || d > a[rest[best]][rest[best]].re())) best = i;
        }
        if (best == r) {
            // Zero diagonal: any nonzero off-diagonal entry gives e_i + s e_j < 0.
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    if (i != j && !a[rest[i]][rest[j]].is_zero()) {
                        ExactVec w(r, Gaussian(0));
                        w[i] = 1;
                        w[j] = -a[rest[i]][rest[j]].conj();
                        return fail(std::move(w));
                    }
            return out;
        }
        const int p = rest[best];
        const Gaussian piv = a[p][p];
        rest.erase(rest.begin() + static_cast<long>(best));
        for (int i : rest)
            for (int j : rest) {
                // Bareiss step: the division by the previous pivot is exact.
                a[i][j] = (piv * a[i][j] - a[i][p] * a[p][j]) / prev;
            }
        prev = piv;
        pivots.push_back(p);
        ++out.rank;
    }
    return out;
}

}  // namespace loopforge
