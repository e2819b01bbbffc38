#include "loopforge/loop_elements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace loopforge {

BandLimitedElement::BandLimitedElement(AlgebraPtr g, Rational dp)
    : algebra_(std::move(g)), dp_(std::move(dp)) {
    dp_.canonicalize();
    if (sgn(dp_) <= 0) throw ParameterError("grid spacing must be positive");
    dp_d_ = dp_.get_d();
}

BandLimitedElement::BandLimitedElement(AlgebraPtr g, Rational dp, SampleMap samples)
    : BandLimitedElement(std::move(g), std::move(dp)) {
    for (auto& [j, v] : samples) add(j, v);
}

Vec<Complex> BandLimitedElement::at(int j) const {
    auto it = samples_.find(j);
    return it == samples_.end() ? Vec<Complex>(algebra_->dim(), Complex(0)) : it->second;
}

void BandLimitedElement::add(int j, const Vec<Complex>& v) {
    if (static_cast<int>(v.size()) != algebra_->dim()) throw DimensionError("sample has wrong length");
    auto it = samples_.find(j);
    if (it == samples_.end()) {
        if (!is_zero_vec(v)) samples_.emplace(j, v);
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
    if (is_zero_vec(it->second)) samples_.erase(it);
}

void BandLimitedElement::set(int j, Vec<Complex> v) {
    if (static_cast<int>(v.size()) != algebra_->dim()) throw DimensionError("sample has wrong length");
    if (is_zero_vec(v))
        samples_.erase(j);
    else
        samples_[j] = std::move(v);
}

void BandLimitedElement::check_compatible(const BandLimitedElement& o) const {
    if (algebra_ != o.algebra_ && algebra_->name() != o.algebra_->name())
        throw AlgebraMismatch("band-limited elements over different algebras");
    if (dp_ != o.dp_)
        throw IncompatibleGrid("grid spacings differ: " + rational_str(dp_) + " vs " + rational_str(o.dp_));
}

BandLimitedElement& BandLimitedElement::operator+=(const BandLimitedElement& o) {
    check_compatible(o);
    for (const auto& [j, v] : o.samples_) add(j, v);
    return *this;
}

BandLimitedElement& BandLimitedElement::operator*=(Complex s) {
    if (s == Complex(0)) {
        samples_.clear();
        return *this;
    }
    for (auto& [j, v] : samples_)
        for (auto& x : v) x *= s;
    return *this;
}

BandLimitedElement operator-(BandLimitedElement a, const BandLimitedElement& b) {
    a.check_compatible(b);
    for (const auto& [j, v] : b.samples_) a.add(j, scaled(v, Complex(-1)));
    return a;
}

double BandLimitedElement::max_abs() const {
    double m = 0;
    for (const auto& [j, v] : samples_)
        for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

BandLimitedElement bl_bracket(const BandLimitedElement& a, const BandLimitedElement& b) {
    a.check_compatible(b);
    const auto& g = *a.algebra();
    BandLimitedElement out(a.algebra(), a.dp_exact());
    const Complex w(a.dp(), 0.0);
    std::map<int, Vec<Complex>> acc;
    for (const auto& [m, x] : a.samples())
        for (const auto& [n, y] : b.samples()) {
            Vec<Complex> c = g.bracket<Complex>(std::span<const Complex>(x), std::span<const Complex>(y));
            auto [it, fresh] = acc.try_emplace(m + n, Vec<Complex>(g.dim(), Complex(0)));
            for (int i = 0; i < g.dim(); ++i) it->second[i] += c[i];
        }
    for (auto& [j, v] : acc) out.add(j, scaled(v, w));
    return out;
}

BandLimitedElement translate(const BandLimitedElement& a, double shift) {
    BandLimitedElement out(a.algebra(), a.dp_exact());
    for (const auto& [j, v] : a.samples()) {
        const double phase = -2.0 * std::numbers::pi * (j * a.dp()) * shift;
        out.set(j, scaled(v, std::polar(1.0, phase)));
    }
    return out;
}

BandLimitedElement star_element(const BandLimitedElement& a) {
    BandLimitedElement out(a.algebra(), a.dp_exact());
    for (const auto& [j, v] : a.samples())
        out.set(-j, a.algebra()->star<Complex>(std::span<const Complex>(v)));
    return out;
}

double smooth_ramp(double p, double eps) {
    if (p <= 0) return 0.0;
    if (p >= eps) return 1.0;
    const double u = p / eps;
    return u * u * (3.0 - 2.0 * u);
}

FrequencySplit frequency_split(const BandLimitedElement& a, double eps) {
    if (!(eps > 0)) throw ParameterError("frequency split requires eps > 0");
    FrequencySplit out{BandLimitedElement(a.algebra(), a.dp_exact()), BandLimitedElement(a.algebra(), a.dp_exact())};
    for (const auto& [j, v] : a.samples()) {
        const double f = smooth_ramp(j * a.dp(), eps);
        if (f == 0.0) {
            out.minus.set(j, v);
        } else if (f == 1.0) {
            out.plus.set(j, v);
        } else {
            Vec<Complex> plus = scaled(v, Complex(f, 0.0));
            Vec<Complex> minus(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) minus[i] = v[i] - plus[i];
            out.plus.set(j, std::move(plus));
            out.minus.set(j, std::move(minus));
        }
    }
    return out;
}

BandLimitedElement constant_loop(AlgebraPtr g, Rational dp, const Vec<Complex>& delta) {
    BandLimitedElement out(g, dp);
    out.set(0, scaled(delta, Complex(1.0 / out.dp(), 0.0)));
    return out;
}

BasicLaurent<Complex> to_modes(const BandLimitedElement& a) {
    BasicLaurent<Complex> out(a.algebra());
    for (const auto& [j, v] : a.samples()) out.add(j, scaled(v, Complex(a.dp(), 0.0)));
    return out;
}

}  // namespace loopforge
