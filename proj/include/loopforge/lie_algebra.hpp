#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loopforge/errors.hpp"
#include "loopforge/scalar.hpp"

namespace loopforge {

/// Coefficient vector of an element of g_C in the algebra basis.
template <class S>
using Vec = std::vector<S>;
using ExactVec = Vec<Gaussian>;

/// sl2-triple attached to a root: [E,F] = H, [H,E] = 2E, E* = F.
struct Root {
    std::string label;
    ExactVec e;
    ExactVec f;
    ExactVec h;
    Rational coroot_norm;  // <H_alpha, H_alpha>
    bool positive = true;
};

/// Finite-dimensional simple complex Lie algebra given by exact structure
/// constants, an invariant form, the compact-form star and root data.
///
/// Immutable after construction. All invariants are checked by the factory
/// functions; the constructor itself is private.
class LieAlgebra {
public:
    struct Term {
        int k;
        Gaussian exact;
        Complex approx;
    };

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const std::vector<int>& cartan_indices() const { return cartan_; }
    const std::vector<Root>& roots() const { return roots_; }
    std::vector<const Root*> positive_roots() const;

    /// Sparse structure constants: [b_i, b_j] = sum over terms(i, j) of value * b_k.
    std::span<const Term> terms(int i, int j) const { return structure_[i * dim_ + j]; }
    const Gaussian& form_entry(int i, int j) const { return form_[i * dim_ + j]; }
    /// Row i is star(b_i) in the basis.
    const Gaussian& star_entry(int i, int j) const { return star_[i * dim_ + j]; }

    /// Index of a basis label, or -1.
    int index_of(std::string_view label) const;
    ExactVec basis_vector(int i) const;
    ExactVec zero() const { return ExactVec(dim_, Gaussian(0)); }

    template <class S>
    Vec<S> bracket(std::span<const S> a, std::span<const S> b) const;
    template <class S>
    S form(std::span<const S> a, std::span<const S> b) const;
    template <class S>
    Vec<S> star(std::span<const S> a) const;

    ExactVec bracket(const ExactVec& a, const ExactVec& b) const {
        return bracket<Gaussian>(std::span<const Gaussian>(a), std::span<const Gaussian>(b));
    }
    Gaussian form(const ExactVec& a, const ExactVec& b) const {
        return form<Gaussian>(std::span<const Gaussian>(a), std::span<const Gaussian>(b));
    }
    ExactVec star(const ExactVec& a) const { return star<Gaussian>(std::span<const Gaussian>(a)); }

    /// Raw constructor input. Use make_algebra() to validate.
    struct Descriptor {
        std::string name;
        int dim = 0;
        std::vector<std::string> labels;
        // structure[i][j] = list of (k, value)
        std::vector<std::vector<std::vector<std::pair<int, Gaussian>>>> structure;
        std::vector<std::vector<Gaussian>> form;
        std::vector<std::vector<Gaussian>> star;
        std::vector<int> cartan;
        std::vector<Root> roots;
    };

    friend std::shared_ptr<const LieAlgebra> make_algebra(Descriptor d);

    Descriptor descriptor() const;

private:
    LieAlgebra() = default;

    void check_dim(std::size_t n) const {
        if (n != static_cast<std::size_t>(dim_))
            throw DimensionError("vector of length " + std::to_string(n) + " for algebra " + name_ +
                                 " of dimension " + std::to_string(dim_));
    }

    std::string name_;
    int dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<Term>> structure_;
    std::vector<Gaussian> form_;
    std::vector<Complex> form_approx_;
    std::vector<Gaussian> star_;
    std::vector<Complex> star_approx_;
    std::vector<int> cartan_;
    std::vector<Root> roots_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Validates every invariant eagerly; throws ValidationError naming the failing triple.
AlgebraPtr make_algebra(LieAlgebra::Descriptor d);

/// sl(n, C) in the matrix realization, trace form, conjugate-transpose star.
/// Basis order: E_ij (i<j), H_i, F_ij = E_ji (i<j). For n = 2 the labels are E, H, F.
AlgebraPtr make_sln(int n);

/// "sl2", "sl3", "slN", "sln(N)" or a JSON descriptor document.
AlgebraPtr load_algebra(std::string_view descriptor);
AlgebraPtr algebra_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const LieAlgebra& g);

// ---------------------------------------------------------------------------

template <class S>
Vec<S> LieAlgebra::bracket(std::span<const S> a, std::span<const S> b) const {
    check_dim(a.size());
    check_dim(b.size());
    Vec<S> out(dim_, S(0));
    for (int i = 0; i < dim_; ++i) {
        if (is_zero(a[i])) continue;
        for (int j = 0; j < dim_; ++j) {
            if (is_zero(b[j])) continue;
            const S ab = a[i] * b[j];
            for (const Term& t : structure_[i * dim_ + j]) {
                if constexpr (std::is_same_v<S, Gaussian>)
                    out[t.k] += ab * t.exact;
                else
                    out[t.k] += ab * t.approx;
            }
        }
    }
    return out;
}

template <class S>
S LieAlgebra::form(std::span<const S> a, std::span<const S> b) const {
    check_dim(a.size());
    check_dim(b.size());
    S acc(0);
    for (int i = 0; i < dim_; ++i) {
        if (is_zero(a[i])) continue;
        for (int j = 0; j < dim_; ++j) {
            if (is_zero(b[j])) continue;
            const std::size_t idx = static_cast<std::size_t>(i * dim_ + j);
            if (form_[idx].is_zero()) continue;
            if constexpr (std::is_same_v<S, Gaussian>)
                acc += a[i] * b[j] * form_[idx];
            else
                acc += a[i] * b[j] * form_approx_[idx];
        }
    }
    return acc;
}

template <class S>
Vec<S> LieAlgebra::star(std::span<const S> a) const {
    check_dim(a.size());
    Vec<S> out(dim_, S(0));
    for (int i = 0; i < dim_; ++i) {
        if (is_zero(a[i])) continue;
        const S ci = conj_of(a[i]);
        for (int k = 0; k < dim_; ++k) {
            const std::size_t idx = static_cast<std::size_t>(i * dim_ + k);
            if (star_[idx].is_zero()) continue;
            if constexpr (std::is_same_v<S, Gaussian>)
                out[k] += ci * star_[idx];
            else
                out[k] += ci * star_approx_[idx];
        }
    }
    return out;
}

// Small vector helpers shared by the element modules.
template <class S>
bool is_zero_vec(std::span<const S> v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}
template <class S>
bool is_zero_vec(const Vec<S>& v) {
    return is_zero_vec<S>(std::span<const S>(v));
}
template <class S>
void axpy(Vec<S>& y, const S& a, const Vec<S>& x) {
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!is_zero(x[i])) y[i] += a * x[i];
}
template <class S>
Vec<S> scaled(const Vec<S>& x, const S& a) {
    Vec<S> out(x);
    for (auto& v : out) v *= a;
    return out;
}
template <class S>
Vec<S> lift_vec(const ExactVec& v) {
    Vec<S> out;
    out.reserve(v.size());
    for (const auto& g : v) out.push_back(lift<S>(g));
    return out;
}

}  // namespace loopforge
