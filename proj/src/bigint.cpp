#include "fhs/bigint.hpp"

#include <algorithm>
#include <cctype>

#include "fhs/errors.hpp"

namespace fhs {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t value) {
    negative_ = value < 0;
    std::uint64_t mag = negative_ ? (~static_cast<std::uint64_t>(value) + 1) : static_cast<std::uint64_t>(value);
    while (mag != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(mag & 0xFFFFFFFFull));
        mag >>= 32;
    }
}

BigInt BigInt::from_uint64(std::uint64_t value) {
    BigInt out;
    while (value != 0) {
        out.limbs_.push_back(static_cast<std::uint32_t>(value & 0xFFFFFFFFull));
        value >>= 32;
    }
    return out;
}

BigInt BigInt::from_string(const std::string& decimal) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < decimal.size() && (decimal[pos] == '+' || decimal[pos] == '-')) {
        neg = decimal[pos] == '-';
        ++pos;
    }
    if (pos == decimal.size()) throw validation_error("BigInt::from_string: empty number");
    BigInt out;
    for (; pos < decimal.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(decimal[pos])))
            throw validation_error("BigInt::from_string: invalid digit in '" + decimal + "'");
        out *= BigInt(10);
        out += BigInt(decimal[pos] - '0');
    }
    out.negative_ = neg && !out.is_zero();
    return out;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

int BigInt::compare_magnitude(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

void BigInt::add_magnitude(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t sum = carry + a[i] + (i < b.size() ? b[i] : 0);
        a[i] = static_cast<std::uint32_t>(sum & 0xFFFFFFFFull);
        carry = sum >> 32;
    }
    if (carry) a.push_back(static_cast<std::uint32_t>(carry));
}

// Requires |a| >= |b|.
void BigInt::sub_magnitude(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (diff < 0) {
            diff += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        a[i] = static_cast<std::uint32_t>(diff);
    }
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    if (!out.is_zero()) out.negative_ = !out.negative_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    out.negative_ = false;
    return out;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (negative_ == rhs.negative_) {
        add_magnitude(limbs_, rhs.limbs_);
    } else {
        int cmp = compare_magnitude(limbs_, rhs.limbs_);
        if (cmp == 0) {
            limbs_.clear();
            negative_ = false;
        } else if (cmp > 0) {
            sub_magnitude(limbs_, rhs.limbs_);
        } else {
            std::vector<std::uint32_t> tmp = rhs.limbs_;
            sub_magnitude(tmp, limbs_);
            limbs_ = std::move(tmp);
            negative_ = rhs.negative_;
        }
    }
    trim();
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) {
    return *this += -rhs;
}

BigInt& BigInt::operator*=(const BigInt& rhs) {
    if (is_zero() || rhs.is_zero()) {
        limbs_.clear();
        negative_ = false;
        return *this;
    }
    std::vector<std::uint32_t> out(limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        const std::uint64_t ai = limbs_[i];
        for (std::size_t j = 0; j < rhs.limbs_.size(); ++j) {
            std::uint64_t cur = out[i + j] + ai * rhs.limbs_[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFull);
            carry = cur >> 32;
        }
        std::size_t k = i + rhs.limbs_.size();
        while (carry) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFull);
            carry = cur >> 32;
            ++k;
        }
    }
    limbs_ = std::move(out);
    negative_ = negative_ != rhs.negative_;
    trim();
    return *this;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem) {
    if (den.is_zero()) throw validation_error("BigInt: division by zero");
    int magcmp = compare_magnitude(num.limbs_, den.limbs_);
    if (magcmp < 0) {
        rem = num;
        quot = BigInt();
        return;
    }
    const bool qneg = num.negative_ != den.negative_;
    const bool rneg = num.negative_;

    std::vector<std::uint32_t> q, r;
    if (den.limbs_.size() == 1) {
        const std::uint64_t d = den.limbs_[0];
        q.assign(num.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = num.limbs_.size(); i-- > 0;) {
            std::uint64_t cur = (carry << 32) | num.limbs_[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            carry = cur % d;
        }
        if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    } else {
        // Normalize so the top divisor limb has its high bit set.
        int shift = 0;
        for (std::uint32_t top = den.limbs_.back(); !(top & 0x80000000u); top <<= 1) ++shift;
        const std::size_t n = den.limbs_.size();
        const std::size_t m = num.limbs_.size() - n;

        auto shl = [](const std::vector<std::uint32_t>& src, int s, bool extra) {
            std::vector<std::uint32_t> dst(src.size() + (extra ? 1 : 0), 0);
            for (std::size_t i = 0; i < src.size(); ++i) {
                dst[i] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(src[i]) << s);
                if (s && i + 1 < dst.size()) dst[i + 1] = static_cast<std::uint32_t>(src[i] >> (32 - s));
            }
            return dst;
        };
        std::vector<std::uint32_t> u = shl(num.limbs_, shift, true);
        std::vector<std::uint32_t> v = shl(den.limbs_, shift, false);

        q.assign(m + 1, 0);
        const std::uint64_t vtop = v[n - 1];
        const std::uint64_t vsecond = n >= 2 ? v[n - 2] : 0;
        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t numer = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
            std::uint64_t qhat = numer / vtop;
            std::uint64_t rhat = numer % vtop;
            while (qhat >= kBase || qhat * vsecond > ((rhat << 32) | (n >= 2 ? u[j + n - 2] : 0))) {
                --qhat;
                rhat += vtop;
                if (rhat >= kBase) break;
            }
            // Multiply-subtract qhat * v from u[j .. j+n].
            std::int64_t borrow = 0;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                std::int64_t t = static_cast<std::int64_t>(u[i + j]) - borrow - static_cast<std::int64_t>(p & 0xFFFFFFFFull);
                if (t < 0) {
                    t += static_cast<std::int64_t>(kBase);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[i + j] = static_cast<std::uint32_t>(t);
            }
            std::int64_t t = static_cast<std::int64_t>(u[j + n]) - borrow - static_cast<std::int64_t>(carry);
            if (t < 0) {
                // qhat was one too large: add v back.
                t += static_cast<std::int64_t>(kBase);
                --qhat;
                std::uint64_t c2 = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t s = c2 + u[i + j] + v[i];
                    u[i + j] = static_cast<std::uint32_t>(s & 0xFFFFFFFFull);
                    c2 = s >> 32;
                }
                t += static_cast<std::int64_t>(c2);
                if (t >= static_cast<std::int64_t>(kBase)) t -= static_cast<std::int64_t>(kBase);
            }
            u[j + n] = static_cast<std::uint32_t>(t);
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        // Denormalize remainder.
        r.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = u[i] >> shift;
            if (shift && i + 1 < n + 1) r[i] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(u[i + 1]) << (32 - shift));
        }
    }

    quot = BigInt();
    quot.limbs_ = std::move(q);
    quot.negative_ = qneg;
    quot.trim();
    rem = BigInt();
    rem.limbs_ = std::move(r);
    rem.negative_ = rneg;
    rem.trim();
}

BigInt operator/(const BigInt& lhs, const BigInt& rhs) {
    BigInt q, r;
    BigInt::divmod(lhs, rhs, q, r);
    return q;
}

BigInt operator%(const BigInt& lhs, const BigInt& rhs) {
    BigInt q, r;
    BigInt::divmod(lhs, rhs, q, r);
    return r;
}

BigInt BigInt::pow(const BigInt& base, std::uint64_t exponent) {
    BigInt result(1);
    BigInt b = base;
    while (exponent != 0) {
        if (exponent & 1) result *= b;
        exponent >>= 1;
        if (exponent) b *= b;
    }
    return result;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

int BigInt::compare(const BigInt& rhs) const {
    if (negative_ != rhs.negative_) return negative_ ? -1 : 1;
    int mag = compare_magnitude(limbs_, rhs.limbs_);
    return negative_ ? -mag : mag;
}

bool BigInt::fits_uint64() const {
    return !negative_ && limbs_.size() <= 2;
}

std::uint64_t BigInt::to_uint64() const {
    if (!fits_uint64()) throw validation_error("BigInt: value does not fit in uint64");
    std::uint64_t out = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) out = (out << 32) | limbs_[i];
    return out;
}

long double BigInt::to_long_double() const {
    long double out = 0.0L;
    for (std::size_t i = limbs_.size(); i-- > 0;) out = out * 4294967296.0L + limbs_[i];
    return negative_ ? -out : out;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
        std::uint64_t carry = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            std::uint64_t cur = (carry << 32) | work[i];
            work[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
            carry = cur % 1000000000ull;
        }
        while (!work.empty() && work.back() == 0) work.pop_back();
        for (int d = 0; d < 9; ++d) {
            digits.push_back(static_cast<char>('0' + carry % 10));
            carry /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

} // namespace fhs
