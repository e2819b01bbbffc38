#include <doctest.h>

#include "loopforge/lie_algebra.hpp"

using namespace loopforge;

namespace {

// Independent matrix model of sl(n): basis E_ij (i<j), H_i, F_ij in that order.
using Mat = std::vector<std::vector<Gaussian>>;

Mat zero_mat(int n) { return Mat(n, std::vector<Gaussian>(n, Gaussian(0))); }

std::vector<Mat> matrix_basis(int n) {
    std::vector<Mat> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Mat m = zero_mat(n);
            m[i][j] = 1;
            out.push_back(m);
        }
    for (int i = 0; i + 1 < n; ++i) {
        Mat m = zero_mat(n);
        m[i][i] = 1;
        m[i + 1][i + 1] = -1;
        out.push_back(m);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Mat m = zero_mat(n);
            m[j][i] = 1;
            out.push_back(m);
        }
    return out;
}

Mat mul(const Mat& a, const Mat& b) {
    const int n = static_cast<int>(a.size());
    Mat c = zero_mat(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

Mat combine(const std::vector<Mat>& basis, const ExactVec& v) {
    const int n = static_cast<int>(basis[0].size());
    Mat m = zero_mat(n);
    for (std::size_t a = 0; a < v.size(); ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m[i][j] += v[a] * basis[a][i][j];
    return m;
}

Gaussian trace(const Mat& m) {
    Gaussian t(0);
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

Mat adjoint(const Mat& m) {
    const int n = static_cast<int>(m.size());
    Mat a = zero_mat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m[j][i].conj();
    return a;
}

ExactVec random_vec(int dim, unsigned seed) {
    ExactVec v(dim);
    for (int i = 0; i < dim; ++i) {
        seed = seed * 1103515245u + 12345u;
        const int re = static_cast<int>((seed >> 16) % 7) - 3;
        seed = seed * 1103515245u + 12345u;
        const int im = static_cast<int>((seed >> 16) % 5) - 2;
        v[i] = Gaussian(Rational(re), Rational(im, 2));
    }
    return v;
}

}  // namespace

TEST_CASE("structure constants match matrix commutators") {
    for (int n : {2, 3, 4}) {
        CAPTURE(n);
        const AlgebraPtr g = make_sln(n);
        const auto basis = matrix_basis(n);
        REQUIRE(g->dim() == n * n - 1);
        for (unsigned s = 0; s < 12; ++s) {
            const ExactVec x = random_vec(g->dim(), s), y = random_vec(g->dim(), 100 + s);
            const Mat X = combine(basis, x), Y = combine(basis, y);
            Mat comm = mul(X, Y);
            const Mat yx = mul(Y, X);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) comm[i][j] -= yx[i][j];
            CHECK(combine(basis, g->bracket(x, y)) == comm);
            CHECK(g->form(x, y) == trace(mul(X, Y)));
            CHECK(combine(basis, g->star(x)) == adjoint(X));
        }
    }
}

TEST_CASE("sl2 labels, roots and normalization") {
    const AlgebraPtr g = make_sln(2);
    CHECK(g->basis_labels() == std::vector<std::string>{"E", "H", "F"});
    REQUIRE(g->positive_roots().size() == 1);
    const Root& r = *g->positive_roots().front();
    CHECK(r.coroot_norm == 2);
    CHECK(g->bracket(r.e, r.f) == r.h);
    CHECK(g->bracket(r.h, r.e) == scaled(r.e, Gaussian(2)));
    CHECK(g->star(r.e) == r.f);
    CHECK(g->form(r.f, r.e) == Gaussian(1));
}

TEST_CASE("sl3 root system") {
    const AlgebraPtr g = load_algebra("sl3");
    CHECK(g->dim() == 8);
    CHECK(g->roots().size() == 6);
    CHECK(g->positive_roots().size() == 3);
    CHECK(g->cartan_indices().size() == 2);
    for (const Root* r : g->positive_roots()) CHECK(r->coroot_norm == 2);
}

TEST_CASE("descriptor loading and validation") {
    const AlgebraPtr g = make_sln(3);
    const AlgebraPtr back = algebra_from_json(algebra_to_json(*g));
    CHECK(back->dim() == 8);
    const ExactVec x = random_vec(8, 5), y = random_vec(8, 6);
    CHECK(back->bracket(x, y) == g->bracket(x, y));
    CHECK(load_algebra("sl4")->dim() == 15);
    CHECK(load_algebra("sln(5)")->dim() == 24);
    CHECK_THROWS_AS(load_algebra("e8"), Error);

    // Break antisymmetry: [E,F] = H but [F,E] = H.
    auto d = make_sln(2)->descriptor();
    d.structure[2][0] = {{1, Gaussian(1)}};
    CHECK_THROWS_AS(make_algebra(d), ValidationError);

    // Non-invariant form.
    auto d2 = make_sln(2)->descriptor();
    d2.form[1][1] = Gaussian(3);
    CHECK_THROWS_AS(make_algebra(d2), ValidationError);

    // Star that is not an involution.
    auto d3 = make_sln(2)->descriptor();
    d3.star[0] = {Gaussian(0), Gaussian(0), Gaussian(2)};
    CHECK_THROWS_AS(make_algebra(d3), ValidationError);

    CHECK_THROWS_AS(g->bracket(ExactVec(3, Gaussian(0)), ExactVec(8, Gaussian(0))), DimensionError);
}
