#include "loopforge/lie_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace loopforge {

std::vector<const Root*> LieAlgebra::positive_roots() const {
    std::vector<const Root*> out;
    for (const auto& r : roots_)
        if (r.positive) out.push_back(&r);
    return out;
}

int LieAlgebra::index_of(std::string_view label) const {
    for (int i = 0; i < dim_; ++i)
        if (labels_[i] == label) return i;
    return -1;
}

ExactVec LieAlgebra::basis_vector(int i) const {
    if (i < 0 || i >= dim_) throw DimensionError("basis index " + std::to_string(i) + " out of range");
    ExactVec v = zero();
    v[i] = 1;
    return v;
}

LieAlgebra::Descriptor LieAlgebra::descriptor() const {
    Descriptor d;
    d.name = name_;
    d.dim = dim_;
    d.labels = labels_;
    d.structure.assign(dim_, std::vector<std::vector<std::pair<int, Gaussian>>>(dim_));
    d.form.assign(dim_, std::vector<Gaussian>(dim_));
    d.star.assign(dim_, std::vector<Gaussian>(dim_));
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            for (const auto& t : terms(i, j)) d.structure[i][j].emplace_back(t.k, t.exact);
            d.form[i][j] = form_entry(i, j);
            d.star[i][j] = star_entry(i, j);
        }
    d.cartan = cartan_;
    d.roots = roots_;
    return d;
}

namespace {

std::string triple_name(const std::vector<std::string>& labels, int i, int j, int k) {
    return "(" + labels[i] + ", " + labels[j] + ", " + labels[k] + ")";
}

// Exact rank of a square matrix by Gaussian elimination.
int exact_rank(std::vector<std::vector<Gaussian>> m) {
    const int n = static_cast<int>(m.size());
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            const Gaussian f = m[r][col] / m[rank][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

void validate(const LieAlgebra& g) {
    const int n = g.dim();
    const auto& L = g.basis_labels();
    auto basis = [&](int i) { return g.basis_vector(i); };

    // Antisymmetry, read off the dense brackets.
    std::vector<ExactVec> br(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) br[i * n + j] = g.bracket(basis(i), basis(j));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (br[i * n + j][k] != -br[j * n + i][k])
                    throw ValidationError("antisymmetry violated at " + triple_name(L, i, j, k));

    // Jacobi.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                ExactVec s = g.bracket(br[i * n + j], basis(k));
                const ExactVec t = g.bracket(br[j * n + k], basis(i));
                const ExactVec u = g.bracket(br[k * n + i], basis(j));
                for (int m = 0; m < n; ++m) s[m] += t[m] + u[m];
                if (!is_zero_vec(s)) throw ValidationError("Jacobi identity violated at " + triple_name(L, i, j, k));
            }

    // Form: symmetric, invariant, nondegenerate.
    std::vector<std::vector<Gaussian>> f(n, std::vector<Gaussian>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            f[i][j] = g.form_entry(i, j);
            if (g.form_entry(i, j) != g.form_entry(j, i))
                throw ValidationError("invariant form not symmetric at (" + L[i] + ", " + L[j] + ")");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Gaussian lhs = g.form(br[i * n + j], basis(k)) + g.form(basis(j), br[i * n + k]);
                if (!lhs.is_zero()) throw ValidationError("form invariance violated at " + triple_name(L, i, j, k));
            }
    if (exact_rank(f) != n) throw ValidationError("invariant form is degenerate");

    // Star: involution and anti-homomorphism.
    for (int i = 0; i < n; ++i) {
        if (g.star(g.star(basis(i))) != basis(i))
            throw ValidationError("star is not an involution on " + L[i]);
        for (int j = 0; j < n; ++j) {
            const ExactVec lhs = g.star(br[i * n + j]);
            const ExactVec rhs = g.bracket(g.star(basis(j)), g.star(basis(i)));
            if (lhs != rhs)
                throw ValidationError("star is not an anti-homomorphism at (" + L[i] + ", " + L[j] + ")");
        }
    }

    // Cartan subalgebra is abelian.
    for (int a : g.cartan_indices()) {
        if (a < 0 || a >= n) throw ValidationError("cartan index out of range");
        for (int b : g.cartan_indices())
            if (!is_zero_vec(br[a * n + b]))
                throw ValidationError("cartan elements " + L[a] + ", " + L[b] + " do not commute");
    }

    // Root triples and the normalization <theta, theta> = 2, i.e. min <H_a, H_a> = 2.
    std::optional<Rational> min_norm;
    for (const Root& r : g.roots()) {
        if (r.e.size() != static_cast<std::size_t>(n) || r.f.size() != static_cast<std::size_t>(n) ||
            r.h.size() != static_cast<std::size_t>(n))
            throw ValidationError("root " + r.label + ": triple has wrong dimension");
        if (g.bracket(r.e, r.f) != r.h) throw ValidationError("root " + r.label + ": [E,F] != H");
        if (g.bracket(r.h, r.e) != scaled(r.e, Gaussian(2)))
            throw ValidationError("root " + r.label + ": [H,E] != 2E");
        if (g.bracket(r.h, r.f) != scaled(r.f, Gaussian(-2)))
            throw ValidationError("root " + r.label + ": [H,F] != -2F");
        if (g.star(r.e) != r.f) throw ValidationError("root " + r.label + ": E* != F");
        const Gaussian hh = g.form(r.h, r.h);
        if (!hh.is_real() || hh.re() != r.coroot_norm)
            throw ValidationError("root " + r.label + ": coroot norm mismatch");
        if (!min_norm || hh.re() < *min_norm) min_norm = hh.re();
    }
    if (min_norm && *min_norm != 2)
        throw ValidationError("invariant form is not normalized: highest root has <theta,theta> = " +
                              rational_str(Rational(4) / *min_norm) + ", expected 2");
}

}  // namespace

AlgebraPtr make_algebra(LieAlgebra::Descriptor d) {
    if (d.dim <= 0) throw ValidationError("dimension must be positive");
    const int n = d.dim;
    auto sz = static_cast<std::size_t>(n);
    if (d.labels.empty())
        for (int i = 0; i < n; ++i) d.labels.push_back("b" + std::to_string(i));
    if (d.labels.size() != sz) throw ValidationError("basis label count does not match dimension");
    if (d.structure.size() != sz) throw ValidationError("structure constants: expected " + std::to_string(n) + " rows");
    if (d.form.size() != sz) throw ValidationError("form: expected " + std::to_string(n) + " rows");
    if (d.star.size() != sz) throw ValidationError("star: expected " + std::to_string(n) + " rows");

    std::shared_ptr<LieAlgebra> g(new LieAlgebra());
    g->name_ = d.name;
    g->dim_ = n;
    g->labels_ = d.labels;
    g->structure_.assign(sz * sz, {});
    for (int i = 0; i < n; ++i) {
        if (d.structure[i].size() != sz) throw ValidationError("structure constants: row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            // Merge duplicates, drop zeros.
            std::vector<Gaussian> dense(sz, Gaussian(0));
            for (const auto& [k, v] : d.structure[i][j]) {
                if (k < 0 || k >= n) throw ValidationError("structure constants: index out of range");
                dense[k] += v;
            }
            for (int k = 0; k < n; ++k)
                if (!dense[k].is_zero()) g->structure_[i * n + j].push_back({k, dense[k], dense[k].to_complex()});
        }
    }
    g->form_.resize(sz * sz);
    g->form_approx_.resize(sz * sz);
    g->star_.resize(sz * sz);
    g->star_approx_.resize(sz * sz);
    for (int i = 0; i < n; ++i) {
        if (d.form[i].size() != sz || d.star[i].size() != sz) throw ValidationError("form/star rows have wrong length");
        for (int j = 0; j < n; ++j) {
            g->form_[i * n + j] = d.form[i][j];
            g->form_approx_[i * n + j] = d.form[i][j].to_complex();
            g->star_[i * n + j] = d.star[i][j];
            g->star_approx_[i * n + j] = d.star[i][j].to_complex();
        }
    }
    g->cartan_ = d.cartan;
    for (auto& r : d.roots) {
        if (r.h.size() == sz) {
            const Gaussian hh = g->form(r.h, r.h);
            r.coroot_norm = hh.re();
        }
    }
    g->roots_ = d.roots;
    validate(*g);
    return g;
}

AlgebraPtr make_sln(int n) {
    if (n < 2) throw ParameterError("sl(n) requires n >= 2");
    using Mat = std::vector<std::vector<Rational>>;
    auto unit = [n](int i, int j) {
        Mat m(n, std::vector<Rational>(n, Rational(0)));
        m[i][j] = 1;
        return m;
    };
    std::vector<Mat> basis;
    std::vector<std::string> labels;
    auto idx = [](int i) { return std::to_string(i + 1); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            basis.push_back(unit(i, j));
            labels.push_back(n == 2 ? "E" : "E" + idx(i) + idx(j));
        }
    const int first_h = static_cast<int>(basis.size());
    for (int i = 0; i + 1 < n; ++i) {
        Mat h = unit(i, i);
        h[i + 1][i + 1] = -1;
        basis.push_back(h);
        labels.push_back(n == 2 ? "H" : "H" + idx(i));
    }
    const int first_f = static_cast<int>(basis.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            basis.push_back(unit(j, i));
            labels.push_back(n == 2 ? "F" : "F" + idx(i) + idx(j));
        }
    const int dim = static_cast<int>(basis.size());

    auto mul = [n](const Mat& a, const Mat& b) {
        Mat c(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (sgn(a[i][k]) == 0) continue;
                for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
            }
        return c;
    };
    // Pair index (i<j) -> position inside the E block / F block.
    auto pair_pos = [n](int i, int j) {
        int p = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (a == i && b == j) return p;
                ++p;
            }
        return -1;
    };
    auto coords = [&](const Mat& m) {
        ExactVec v(dim, Gaussian(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || sgn(m[i][j]) == 0) continue;
                v[i < j ? pair_pos(i, j) : first_f + pair_pos(j, i)] = Gaussian(m[i][j]);
            }
        Rational acc = 0;
        for (int i = 0; i + 1 < n; ++i) {
            acc += m[i][i];
            v[first_h + i] = Gaussian(acc);
        }
        return v;
    };

    LieAlgebra::Descriptor d;
    d.name = n == 2 ? "sl2" : n == 3 ? "sl3" : "sln(" + std::to_string(n) + ")";
    d.dim = dim;
    d.labels = labels;
    d.structure.assign(dim, std::vector<std::vector<std::pair<int, Gaussian>>>(dim));
    d.form.assign(dim, std::vector<Gaussian>(dim, Gaussian(0)));
    d.star.assign(dim, std::vector<Gaussian>(dim, Gaussian(0)));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const Mat ab = mul(basis[a], basis[b]);
            const Mat ba = mul(basis[b], basis[a]);
            Mat c = ab;
            Rational tr = 0;
            for (int i = 0; i < n; ++i) {
                tr += ab[i][i];
                for (int j = 0; j < n; ++j) c[i][j] -= ba[i][j];
            }
            const ExactVec v = coords(c);
            for (int k = 0; k < dim; ++k)
                if (!v[k].is_zero()) d.structure[a][b].emplace_back(k, v[k]);
            d.form[a][b] = Gaussian(tr);
        }
    for (int a = 0; a < dim; ++a) {
        Mat t(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] = basis[a][j][i];  // real entries: adjoint = transpose
        d.star[a] = coords(t);
    }
    for (int i = 0; i + 1 < n; ++i) d.cartan.push_back(first_h + i);

    for (int sign = 0; sign < 2; ++sign)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Root r;
                const bool pos = sign == 0;
                r.positive = pos;
                r.label = pos ? "e" + idx(i) + "-e" + idx(j) : "e" + idx(j) + "-e" + idx(i);
                Mat h = unit(i, i);
                h[j][j] = -1;
                const ExactVec eij = coords(unit(i, j));
                const ExactVec eji = coords(unit(j, i));
                const ExactVec hij = coords(h);
                r.e = pos ? eij : eji;
                r.f = pos ? eji : eij;
                r.h = pos ? hij : scaled(hij, Gaussian(-1));
                d.roots.push_back(std::move(r));
            }
    return make_algebra(std::move(d));
}

namespace {

std::optional<int> parse_sl_tag(std::string_view s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(c)));
    std::string digits;
    if (t.rfind("sln(", 0) == 0 && t.back() == ')')
        digits = t.substr(4, t.size() - 5);
    else if (t.rfind("sl", 0) == 0)
        digits = t.substr(2);
    else
        return std::nullopt;
    if (digits.empty()) return std::nullopt;
    int n = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || p != digits.data() + digits.size()) return std::nullopt;
    return n;
}

Gaussian scalar_from(const nlohmann::json& v) {
    if (v.is_string()) return parse_gaussian(v.get<std::string>());
    if (v.is_number_integer()) return Gaussian(static_cast<long>(v.get<long long>()));
    throw ValidationError("expected an exact scalar string, got " + v.dump());
}

ExactVec vec_from(const nlohmann::json& v, int dim) {
    if (!v.is_array() || static_cast<int>(v.size()) != dim)
        throw ValidationError("expected a coefficient vector of length " + std::to_string(dim));
    ExactVec out;
    for (const auto& x : v) out.push_back(scalar_from(x));
    return out;
}

nlohmann::json vec_to(const ExactVec& v) {
    auto j = nlohmann::json::array();
    for (const auto& x : v) j.push_back(x.str());
    return j;
}

}  // namespace

AlgebraPtr algebra_from_json(const nlohmann::json& j) {
    try {
        LieAlgebra::Descriptor d;
        d.name = j.value("name", std::string("custom"));
        d.dim = j.at("dim").get<int>();
        if (d.dim <= 0) throw ValidationError("dimension must be positive");
        if (j.contains("basis")) d.labels = j.at("basis").get<std::vector<std::string>>();
        const auto& sc = j.at("structure_constants");
        if (!sc.is_array() || static_cast<int>(sc.size()) != d.dim)
            throw ValidationError("structure_constants must have dim rows");
        d.structure.assign(d.dim, std::vector<std::vector<std::pair<int, Gaussian>>>(d.dim));
        for (int a = 0; a < d.dim; ++a) {
            if (!sc[a].is_array() || static_cast<int>(sc[a].size()) != d.dim)
                throw ValidationError("structure_constants row " + std::to_string(a) + " must have dim entries");
            for (int b = 0; b < d.dim; ++b)
                for (const auto& kv : sc[a][b]) {
                    if (!kv.is_array() || kv.size() != 2) throw ValidationError("structure constant entries are [k, value]");
                    d.structure[a][b].emplace_back(kv[0].get<int>(), scalar_from(kv[1]));
                }
        }
        for (const auto& row : j.at("form")) d.form.push_back(vec_from(row, d.dim));
        for (const auto& row : j.at("star")) d.star.push_back(vec_from(row, d.dim));
        if (j.contains("cartan")) d.cartan = j.at("cartan").get<std::vector<int>>();
        if (j.contains("roots"))
            for (const auto& r : j.at("roots")) {
                Root root;
                root.label = r.value("label", std::string("root"));
                root.positive = r.value("positive", true);
                root.e = vec_from(r.at("E"), d.dim);
                root.f = vec_from(r.at("F"), d.dim);
                root.h = vec_from(r.at("H"), d.dim);
                d.roots.push_back(std::move(root));
            }
        return make_algebra(std::move(d));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed algebra descriptor: ") + e.what());
    }
}

nlohmann::json algebra_to_json(const LieAlgebra& g) {
    const auto d = g.descriptor();
    nlohmann::json j;
    j["name"] = d.name;
    j["dim"] = d.dim;
    j["basis"] = d.labels;
    auto sc = nlohmann::json::array();
    for (int a = 0; a < d.dim; ++a) {
        auto row = nlohmann::json::array();
        for (int b = 0; b < d.dim; ++b) {
            auto cell = nlohmann::json::array();
            for (const auto& [k, v] : d.structure[a][b]) cell.push_back({k, v.str()});
            row.push_back(cell);
        }
        sc.push_back(row);
    }
    j["structure_constants"] = sc;
    auto mat = [](const std::vector<std::vector<Gaussian>>& m) {
        auto out = nlohmann::json::array();
        for (const auto& r : m) out.push_back(vec_to(r));
        return out;
    };
    j["form"] = mat(d.form);
    j["star"] = mat(d.star);
    j["cartan"] = d.cartan;
    auto roots = nlohmann::json::array();
    for (const auto& r : d.roots)
        roots.push_back({{"label", r.label}, {"positive", r.positive}, {"E", vec_to(r.e)}, {"F", vec_to(r.f)}, {"H", vec_to(r.h)}});
    j["roots"] = roots;
    return j;
}

AlgebraPtr load_algebra(std::string_view descriptor) {
    if (auto n = parse_sl_tag(descriptor)) return make_sln(*n);
    std::string text(descriptor);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParameterError("empty algebra descriptor");
    if (text[first] != '{') {
        std::ifstream in(text);
        if (!in) throw ParameterError("unknown algebra '" + text + "' (not a built-in tag or readable JSON file)");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("algebra descriptor is not valid JSON: ") + e.what());
    }
    return algebra_from_json(j);
}

}  // namespace loopforge
