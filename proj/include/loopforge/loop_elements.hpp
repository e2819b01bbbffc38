#pragma once

#include <map>
#include <utility>

#include "loopforge/lie_algebra.hpp"

namespace loopforge {

/// Polynomial loop sum_k x_k (x) t^k with finitely many nonzero modes.
/// Zero coefficient vectors are never stored.
template <class S>
class BasicLaurent {
public:
    using Scalar = S;
    using ModeMap = std::map<int, Vec<S>>;

    BasicLaurent() = default;
    explicit BasicLaurent(AlgebraPtr g) : algebra_(std::move(g)) {}
    BasicLaurent(AlgebraPtr g, ModeMap modes) : algebra_(std::move(g)) {
        for (auto& [k, v] : modes) add(k, v);
    }

    /// x (x) t^k for a basis element x = b_a.
    static BasicLaurent basis_mode(AlgebraPtr g, int a, int k, S coeff = S(1)) {
        BasicLaurent out(g);
        Vec<S> v(g->dim(), S(0));
        v[a] = coeff;
        out.add(k, v);
        return out;
    }
    static BasicLaurent mode(AlgebraPtr g, const Vec<S>& x, int k) {
        BasicLaurent out(std::move(g));
        out.add(k, x);
        return out;
    }

    const AlgebraPtr& algebra() const { return algebra_; }
    const ModeMap& modes() const { return modes_; }
    bool is_zero() const { return modes_.empty(); }
    int min_mode() const { return modes_.empty() ? 0 : modes_.begin()->first; }
    int max_mode() const { return modes_.empty() ? 0 : modes_.rbegin()->first; }

    /// Coefficient of t^k (zero vector if absent).
    Vec<S> at(int k) const {
        auto it = modes_.find(k);
        return it == modes_.end() ? Vec<S>(algebra_->dim(), S(0)) : it->second;
    }

    void add(int k, const Vec<S>& v) {
        if (static_cast<int>(v.size()) != algebra_->dim())
            throw DimensionError("mode coefficient has wrong length");
        auto it = modes_.find(k);
        if (it == modes_.end()) {
            if (!is_zero_vec(v)) modes_.emplace(k, v);
            return;
        }
        for (std::size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
        if (is_zero_vec(it->second)) modes_.erase(it);
    }

    BasicLaurent& operator+=(const BasicLaurent& o) {
        same_algebra(o);
        for (const auto& [k, v] : o.modes_) add(k, v);
        return *this;
    }
    BasicLaurent& operator*=(const S& s) {
        if (loopforge::is_zero(s)) {
            modes_.clear();
            return *this;
        }
        for (auto& [k, v] : modes_)
            for (auto& x : v) x *= s;
        return *this;
    }
    friend BasicLaurent operator+(BasicLaurent a, const BasicLaurent& b) { return a += b; }
    friend BasicLaurent operator-(BasicLaurent a, const BasicLaurent& b) {
        BasicLaurent nb = b;
        nb *= S(-1);
        return a += nb;
    }
    friend BasicLaurent operator*(S s, BasicLaurent a) { return a *= s; }
    friend bool operator==(const BasicLaurent& a, const BasicLaurent& b) { return a.modes_ == b.modes_; }

    /// Strictly positive modes, and everything else.
    std::pair<BasicLaurent, BasicLaurent> split_positive() const {
        BasicLaurent plus(algebra_), rest(algebra_);
        for (const auto& [k, v] : modes_) (k > 0 ? plus : rest).modes_.emplace(k, v);
        return {plus, rest};
    }

    void same_algebra(const BasicLaurent& o) const {
        if (algebra_ != o.algebra_ && (!algebra_ || !o.algebra_ || algebra_->name() != o.algebra_->name()))
            throw AlgebraMismatch("Laurent elements over different algebras");
    }

private:
    AlgebraPtr algebra_;
    ModeMap modes_;
};

using LaurentElement = BasicLaurent<Gaussian>;

/// [x (x) t^k, y (x) t^l] = [x,y] (x) t^{k+l}, extended bilinearly.
template <class S>
BasicLaurent<S> laurent_bracket(const BasicLaurent<S>& a, const BasicLaurent<S>& b) {
    a.same_algebra(b);
    const auto& g = *a.algebra();
    BasicLaurent<S> out(a.algebra());
    for (const auto& [k, x] : a.modes())
        for (const auto& [l, y] : b.modes())
            out.add(k + l, g.template bracket<S>(std::span<const S>(x), std::span<const S>(y)));
    return out;
}

/// (x (x) t^k)* = x* (x) t^{-k}.
template <class S>
BasicLaurent<S> star_element(const BasicLaurent<S>& a) {
    BasicLaurent<S> out(a.algebra());
    for (const auto& [k, x] : a.modes()) out.add(-k, a.algebra()->template star<S>(std::span<const S>(x)));
    return out;
}

/// Rotation of the circle: mode k picks up phase^k. |phase| = 1 keeps the
/// element on the unit circle; exact Pythagorean phases keep it exact.
template <class S>
BasicLaurent<S> rotate(const BasicLaurent<S>& a, const S& phase) {
    BasicLaurent<S> out(a.algebra());
    const S inv = S(1) / phase;
    for (const auto& [k, x] : a.modes()) {
        S p(1);
        for (int i = 0; i < (k < 0 ? -k : k); ++i) p *= (k < 0 ? inv : phase);
        out.add(k, scaled(x, p));
    }
    return out;
}

// ---------------------------------------------------------------------------

/// Frequency-grid proxy for a Schwartz-class element of S(R) (x) g_C: sample j
/// holds the density hat-xi(j * dp), piecewise constant over a bin of width dp.
class BandLimitedElement {
public:
    using SampleMap = std::map<int, Vec<Complex>>;

    BandLimitedElement() = default;
    BandLimitedElement(AlgebraPtr g, Rational dp);
    BandLimitedElement(AlgebraPtr g, Rational dp, SampleMap samples);

    const AlgebraPtr& algebra() const { return algebra_; }
    const Rational& dp_exact() const { return dp_; }
    double dp() const { return dp_d_; }
    const SampleMap& samples() const { return samples_; }
    bool is_zero() const { return samples_.empty(); }

    Vec<Complex> at(int j) const;
    void add(int j, const Vec<Complex>& v);
    /// Replace the sample at j (no pruning, no summation).
    void set(int j, Vec<Complex> v);

    BandLimitedElement& operator+=(const BandLimitedElement& o);
    BandLimitedElement& operator*=(Complex s);
    friend BandLimitedElement operator+(BandLimitedElement a, const BandLimitedElement& b) { return a += b; }
    friend BandLimitedElement operator-(BandLimitedElement a, const BandLimitedElement& b);
    friend BandLimitedElement operator*(Complex s, BandLimitedElement a) { return a *= s; }

    void check_compatible(const BandLimitedElement& o) const;

    /// Largest sample-wise coefficient modulus.
    double max_abs() const;

private:
    AlgebraPtr algebra_;
    Rational dp_{1};
    double dp_d_ = 1.0;
    SampleMap samples_;
};

/// Frequency-domain convolution: ([xi,eta])^(j dp) = dp * sum_m [xi^(m dp), eta^((j-m) dp)].
BandLimitedElement bl_bracket(const BandLimitedElement& a, const BandLimitedElement& b);

/// xi_a(t) = xi(t - a): each sample picks up exp(-i 2 pi (j dp) a).
BandLimitedElement translate(const BandLimitedElement& a, double shift);

/// (xi*)^(j dp) = star(xi^(-j dp)).
BandLimitedElement star_element(const BandLimitedElement& a);

/// Smoothstep ramp f_eps(p) = r(p/eps) clamped to [0,1], r(u) = 3u^2 - 2u^3.
double smooth_ramp(double p, double eps);

struct FrequencySplit {
    BandLimitedElement plus;
    BandLimitedElement minus;
};

/// plus = f_eps * xi (supported on j > 0), minus = xi - plus.
FrequencySplit frequency_split(const BandLimitedElement& a, double eps);

/// Constant loop delta as a j = 0 grid element; bl_bracket with it acts pointwise.
BandLimitedElement constant_loop(AlgebraPtr g, Rational dp, const Vec<Complex>& delta);

/// Dilation to the mode picture: sample j with density v becomes dp * v (x) t^j.
/// Preserves brackets and sends the frequency cocycle to minus the mode cocycle.
BasicLaurent<Complex> to_modes(const BandLimitedElement& a);

}  // namespace loopforge
