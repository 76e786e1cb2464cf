#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>
#include <stdexcept>

namespace prismatica {

// Sign-magnitude arbitrary-precision integer, base 2^32 limbs (little-endian).
// Division truncates toward zero, like built-in integer division.
class BigInt {
  public:
    BigInt() = default;
    BigInt(long long v)
    {
        if (v < 0) { sign_ = -1; }
        else if (v > 0) { sign_ = 1; }
        unsigned long long m = (v < 0) ? 0ULL - (unsigned long long)v : (unsigned long long)v;
        while (m) {
            mag_.push_back((uint32_t)(m & 0xffffffffULL));
            m >>= 32;
        }
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    bool is_unit() const { return mag_.size() == 1 && mag_[0] == 1; }

    friend bool operator==(const BigInt& a, const BigInt& b)
    {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b)
    {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }

    BigInt operator-() const
    {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    BigInt abs() const
    {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b)
    {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b)
    {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                uint64_t cur = (uint64_t)a.mag_[i] * b.mag_[j] + r.mag_[i + j] + carry;
                r.mag_[i + j] = (uint32_t)cur;
                carry = cur >> 32;
            }
            size_t k = i + b.mag_.size();
            while (carry) {
                uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = (uint32_t)cur;
                carry = cur >> 32;
                ++k;
            }
        }
        trim(r.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    // Quotient and remainder with |r| < |b| and r the same sign as a (C semantics).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r)
    {
        if (b.sign_ == 0) throw std::domain_error("BigInt division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        std::vector<uint32_t> qm, rm;
        divmod_mag(a.mag_, b.mag_, qm, rm);
        q.mag_ = std::move(qm);
        r.mag_ = std::move(rm);
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b)
    {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b)
    {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    static BigInt gcd(BigInt a, BigInt b)
    {
        a = a.abs();
        b = b.abs();
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            a = b;
            b = r.abs();
        }
        return a;
    }

    bool fits_ll() const
    {
        if (mag_.size() > 2) return false;
        unsigned long long v = to_ull();
        if (sign_ >= 0) return v <= 0x7fffffffffffffffULL;
        return v <= 0x8000000000000000ULL;
    }
    long long to_ll() const
    {
        if (!fits_ll()) throw std::overflow_error("BigInt does not fit long long");
        unsigned long long v = to_ull();
        return sign_ < 0 ? -(long long)v : (long long)v;
    }

    std::string str() const
    {
        if (sign_ == 0) return "0";
        std::vector<uint32_t> m = mag_;
        std::string digits;
        while (!m.empty()) {
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = (uint32_t)(cur / 10);
                rem = cur % 10;
            }
            digits.push_back((char)('0' + rem));
            trim(m);
        }
        std::string out;
        if (sign_ < 0) out.push_back('-');
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

  private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    unsigned long long to_ull() const
    {
        unsigned long long v = 0;
        if (mag_.size() > 0) v = mag_[0];
        if (mag_.size() > 1) v |= (unsigned long long)mag_[1] << 32;
        return v;
    }

    static void trim(std::vector<uint32_t>& m)
    {
        while (!m.empty() && m.back() == 0) m.pop_back();
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b)
    {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b)
    {
        std::vector<uint32_t> r;
        r.reserve(std::max(a.size(), b.size()) + 1);
        uint64_t carry = 0;
        for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
            uint64_t cur = carry;
            if (i < a.size()) cur += a[i];
            if (i < b.size()) cur += b[i];
            r.push_back((uint32_t)cur);
            carry = cur >> 32;
        }
        if (carry) r.push_back((uint32_t)carry);
        return r;
    }

    // Requires a >= b.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b)
    {
        std::vector<uint32_t> r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = (int64_t)r[i] - borrow - (i < b.size() ? b[i] : 0);
            if (cur < 0) {
                cur += ((int64_t)1 << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = (uint32_t)cur;
        }
        trim(r);
        return r;
    }

    static int bit_length(const std::vector<uint32_t>& m)
    {
        if (m.empty()) return 0;
        int l = (int)(m.size() - 1) * 32;
        uint32_t top = m.back();
        while (top) {
            ++l;
            top >>= 1;
        }
        return l;
    }

    static void shift_left_bit(std::vector<uint32_t>& m, uint32_t in_bit)
    {
        uint32_t carry = in_bit;
        for (size_t i = 0; i < m.size(); ++i) {
            uint32_t next = m[i] >> 31;
            m[i] = (m[i] << 1) | carry;
            carry = next;
        }
        if (carry) m.push_back(carry);
    }

    // Binary long division on magnitudes; |a| >= |b| assumed checked by caller.
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r)
    {
        int n = bit_length(a);
        q.assign((size_t)(n + 31) / 32, 0);
        r.clear();
        for (int i = n - 1; i >= 0; --i) {
            uint32_t bit = (a[(size_t)i / 32] >> (i % 32)) & 1u;
            shift_left_bit(r, bit);
            if (cmp_mag(r, b) >= 0) {
                r = sub_mag(r, b);
                q[(size_t)i / 32] |= (1u << (i % 32));
            }
        }
        trim(q);
        trim(r);
    }
};

} // namespace prismatica
