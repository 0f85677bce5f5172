#ifndef FHS_BIGINT_HPP
#define FHS_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fhs {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs
// (little-endian limb order). Covers the exact-arithmetic needs of the
// bound reports and binomial ratios, where values routinely exceed 64 bits.
class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t value);                 // NOLINT: implicit by design
    static BigInt from_uint64(std::uint64_t value);
    static BigInt from_string(const std::string& decimal);

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);

    friend BigInt operator+(BigInt lhs, const BigInt& rhs) { return lhs += rhs; }
    friend BigInt operator-(BigInt lhs, const BigInt& rhs) { return lhs -= rhs; }
    friend BigInt operator*(BigInt lhs, const BigInt& rhs) { return lhs *= rhs; }

    // Truncated division (quotient rounds toward zero, remainder has the
    // sign of the dividend). Throws validation_error on division by zero.
    static void divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem);
    friend BigInt operator/(const BigInt& lhs, const BigInt& rhs);
    friend BigInt operator%(const BigInt& lhs, const BigInt& rhs);

    static BigInt pow(const BigInt& base, std::uint64_t exponent);
    static BigInt gcd(BigInt a, BigInt b); // nonnegative result

    // Three-way compare: -1, 0, +1.
    int compare(const BigInt& rhs) const;
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.compare(b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.compare(b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.compare(b) >= 0; }

    bool fits_uint64() const;
    std::uint64_t to_uint64() const; // throws if negative or too large
    long double to_long_double() const;
    std::string to_string() const;

  private:
    static int compare_magnitude(const std::vector<std::uint32_t>& a,
                                 const std::vector<std::uint32_t>& b);
    static void add_magnitude(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static void sub_magnitude(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    void trim();

    std::vector<std::uint32_t> limbs_; // empty means zero
    bool negative_ = false;
};

} // namespace fhs

#endif
