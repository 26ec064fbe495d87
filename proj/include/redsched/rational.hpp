#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace redsched {

// Exact rational on 64-bit numerator/denominator, always normalized
// (gcd 1, denominator > 0). Intermediate products go through 128-bit;
// anything that cannot be reduced back into 64 bits throws.
class Rat {
public:
    constexpr Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        __int128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        normalize_from(nn, dd);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_negative() const { return num_ < 0; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.num_) * b.den_ +
                           static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.num_) * b.den_ -
                           static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.num_) * b.num_,
                       static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rat: division by zero");
        return from128(static_cast<__int128>(a.num_) * b.den_,
                       static_cast<__int128>(a.den_) * b.num_);
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }
    Rat operator-() const { Rat r; r.num_ = -num_; r.den_ = den_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num_) * b.den_ <
               static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    Rat reciprocal() const {
        if (num_ == 0) throw std::invalid_argument("Rat: reciprocal of zero");
        return Rat(den_, num_);
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // C(n, k), exact; throws if it does not fit in 64 bits.
    static Rat binomial(long long n, long long k) {
        if (k < 0 || k > n) return Rat(0);
        if (k > n - k) k = n - k;
        __int128 acc = 1;
        for (long long i = 1; i <= k; ++i) {
            acc = acc * (n - k + i) / i;  // exact: prefix products are binomials
            if (acc > INT64_MAX) throw std::overflow_error("Rat::binomial overflow");
        }
        return Rat(static_cast<long long>(acc));
    }

private:
    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        Rat r;
        r.normalize_from(n, d);
        return r;
    }

    void normalize_from(__int128 n, __int128 d) {
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rat: value out of 64-bit range");
        num_ = static_cast<long long>(n);
        den_ = static_cast<long long>(d);
        if (num_ == 0) den_ = 1;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    long long num_;
    long long den_;
};

}  // namespace redsched
