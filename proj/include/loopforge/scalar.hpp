#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace loopforge {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Exact complex number with rational real and imaginary parts.
class Gaussian {
public:
    Gaussian() = default;
    Gaussian(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design of a numeric type
    Gaussian(int v) : re_(v), im_(0) {}   // NOLINT
    Gaussian(Rational re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
    Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Gaussian i() { return Gaussian(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_integer() const;

    Gaussian conj() const { return Gaussian(re_, -im_); }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

    Gaussian& operator+=(const Gaussian& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Gaussian& operator-=(const Gaussian& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Gaussian& operator*=(const Gaussian& o);
    Gaussian& operator/=(const Gaussian& o);

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend Gaussian operator-(const Gaussian& a) { return Gaussian(-a.re_, -a.im_); }

    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

    /// Canonical text form: "p/q", "p/q i" or "p/q+r/s i". Round-trips through parse_gaussian.
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.str(); }

private:
    Rational re_{0};
    Rational im_{0};
};

/// Parse an exact scalar. Accepts integers, fractions, finite decimals and an
/// optional imaginary part: "3", "-1/2", "0.1", "i", "-2i", "1/2+3/4 i".
Gaussian parse_gaussian(std::string_view text);
Rational parse_rational(std::string_view text);

std::string rational_str(const Rational& q);

// Scalar-generic helpers so the element and correlator templates can run over
// both exact Gaussian rationals and complex doubles.
inline bool is_zero(const Gaussian& g) { return g.is_zero(); }
inline bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
inline Gaussian conj_of(const Gaussian& g) { return g.conj(); }
inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline Complex to_complex(const Gaussian& g) { return g.to_complex(); }
inline Complex to_complex(const Complex& z) { return z; }

template <class S>
S lift(const Gaussian& g);
template <>
inline Gaussian lift<Gaussian>(const Gaussian& g) { return g; }
template <>
inline Complex lift<Complex>(const Gaussian& g) { return g.to_complex(); }

/// Stable text key for memo tables; exact for Gaussian, hex-float for Complex.
std::string scalar_key(const Gaussian& g);
std::string scalar_key(const Complex& z);

}  // namespace loopforge
