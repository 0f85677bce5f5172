#ifndef FHS_RATIONAL_HPP
#define FHS_RATIONAL_HPP

#include <cstdint>
#include <string>

#include "fhs/bigint.hpp"

namespace fhs {

// Exact rational number. Always stored reduced with a positive denominator,
// so equality is structural. All measured quantities and bounds in this
// library are carried as Rational end to end; floating point appears only
// in human-facing decimal renderings and statistics.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t value) : num_(value), den_(1) {} // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den);
    Rational(BigInt num, BigInt den);

    // Accepts "a/b", decimal strings like "0.75", and plain integers.
    static Rational from_string(const std::string& text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& rhs) { return *this = *this + rhs; }
    Rational& operator-=(const Rational& rhs) { return *this = *this - rhs; }
    Rational& operator*=(const Rational& rhs) { return *this = *this * rhs; }
    Rational& operator/=(const Rational& rhs) { return *this = *this / rhs; }

    int compare(const Rational& rhs) const; // -1, 0, +1
    friend bool operator==(const Rational& a, const Rational& b) { return a.compare(b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.compare(b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.compare(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.compare(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.compare(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.compare(b) >= 0; }

    // Smallest integer >= value / largest integer <= value.
    BigInt ceil() const;
    BigInt floor() const;

    // Nearest value with denominator 10^places, ties rounded away from zero.
    Rational round_decimal(unsigned places) const;
    // Fixed-point decimal string with exactly `places` fractional digits.
    std::string to_decimal_string(unsigned places) const;
    std::string to_fraction_string() const; // "num/den" ("num" when den == 1)
    double to_double() const;

  private:
    void normalize();
    BigInt num_;
    BigInt den_;
};

} // namespace fhs

#endif
