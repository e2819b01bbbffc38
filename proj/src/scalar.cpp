#include "loopforge/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <string>

#include "loopforge/errors.hpp"

namespace loopforge {

bool Gaussian::is_integer() const {
    return is_real() && re_.get_den() == 1;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
    const Rational n = o.norm();
    if (sgn(n) == 0) throw ParameterError("division by zero");
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    Rational im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

std::string Gaussian::str() const {
    if (is_real()) return rational_str(re_);
    std::string imag = rational_str(im_);
    if (sgn(re_) == 0) return imag + " i";
    if (sgn(im_) > 0) return rational_str(re_) + "+" + imag + " i";
    return rational_str(re_) + imag + " i";
}

namespace {

std::string strip(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

// Unsigned-or-signed integer, fraction, or finite decimal. No whitespace.
Rational parse_real_token(const std::string& s) {
    if (s.empty()) throw ParameterError("empty numeric token");
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    const std::string body = s.substr(pos);
    if (body.empty()) throw ParameterError("malformed number '" + s + "'");
    Rational q;
    const auto slash = body.find('/');
    const auto dot = body.find('.');
    auto digits_only = [](const std::string& d) {
        if (d.empty()) return false;
        for (char c : d)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    if (slash != std::string::npos) {
        const std::string num = body.substr(0, slash);
        const std::string den = body.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den))
            throw ParameterError("malformed fraction '" + s + "'");
        mpz_class d(den);
        if (d == 0) throw ParameterError("zero denominator in '" + s + "'");
        q = Rational(mpz_class(num), d);
    } else if (dot != std::string::npos) {
        std::string ip = body.substr(0, dot);
        std::string fp = body.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!digits_only(ip) || (!fp.empty() && !digits_only(fp)))
            throw ParameterError("malformed decimal '" + s + "'");
        mpz_class scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        q = Rational(mpz_class(ip + fp), scale);
    } else {
        if (!digits_only(body)) throw ParameterError("malformed number '" + s + "'");
        q = Rational(mpz_class(body));
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

Rational parse_imag_token(const std::string& s) {
    // s ends with 'i'; the coefficient may be empty or a sign only.
    std::string coeff = s.substr(0, s.size() - 1);
    if (coeff.empty() || coeff == "+") return 1;
    if (coeff == "-") return -1;
    if (coeff.back() == '*') coeff.pop_back();
    return parse_real_token(coeff);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    return parse_real_token(strip(text));
}

Gaussian parse_gaussian(std::string_view text) {
    const std::string s = strip(text);
    if (s.empty()) throw ParameterError("empty scalar");
    if (s.back() != 'i') return Gaussian(parse_real_token(s));
    // Split at the last sign that is not the leading one.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return Gaussian(Rational(0), parse_imag_token(s));
    return Gaussian(parse_real_token(s.substr(0, split)), parse_imag_token(s.substr(split)));
}

std::string scalar_key(const Gaussian& g) {
    return g.str();
}

std::string scalar_key(const Complex& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a,%a", z.real(), z.imag());
    return buf;
}

}  // namespace loopforge
