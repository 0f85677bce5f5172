#include "fhs/rational.hpp"

#include "fhs/errors.hpp"

namespace fhs {

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    normalize();
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void Rational::normalize() {
    if (den_.is_zero()) throw validation_error("Rational: zero denominator");
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::from_string(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(BigInt::from_string(text.substr(0, slash)),
                        BigInt::from_string(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        unsigned places = static_cast<unsigned>(text.size() - dot - 1);
        if (places == 0) throw validation_error("Rational::from_string: trailing dot in '" + text + "'");
        return Rational(BigInt::from_string(digits), BigInt::pow(BigInt(10), places));
    }
    return Rational(BigInt::from_string(text), BigInt(1));
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw validation_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

int Rational::compare(const Rational& rhs) const {
    return (num_ * rhs.den_).compare(rhs.num_ * den_);
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (!r.is_zero() && num_.is_negative()) q -= BigInt(1);
    return q;
}

BigInt Rational::ceil() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (!r.is_zero() && !num_.is_negative()) q += BigInt(1);
    return q;
}

Rational Rational::round_decimal(unsigned places) const {
    const BigInt scale = BigInt::pow(BigInt(10), places);
    BigInt q, r;
    BigInt::divmod(num_ * scale, den_, q, r);
    // Ties away from zero.
    BigInt twice_rem = r.abs() * BigInt(2);
    if (twice_rem >= den_) q += BigInt(num_.is_negative() ? -1 : 1);
    return Rational(q, scale);
}

std::string Rational::to_decimal_string(unsigned places) const {
    const BigInt scale = BigInt::pow(BigInt(10), places);
    Rational rounded = round_decimal(places);
    // rounded = q / 10^places with q possibly sharing factors with the scale,
    // so recompute the scaled integer explicitly.
    BigInt scaled = rounded.num_ * (scale / rounded.den_);
    bool neg = scaled.is_negative();
    std::string digits = scaled.abs().to_string();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out;
    if (neg) out.push_back('-');
    out.append(digits, 0, digits.size() - places);
    if (places > 0) {
        out.push_back('.');
        out.append(digits, digits.size() - places, places);
    }
    return out;
}

std::string Rational::to_fraction_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

double Rational::to_double() const {
    return static_cast<double>(num_.to_long_double() / den_.to_long_double());
}

} // namespace fhs
