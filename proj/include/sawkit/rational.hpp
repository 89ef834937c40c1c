#ifndef SAWKIT_RATIONAL_HPP
#define SAWKIT_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "sawkit/errors.hpp"

namespace sawkit {

// Exact signed rational over __int128.  Used for vertex weights M(v) and the
// mass-transport sums, which must compare exactly equal, not approximately.
class Rational {
public:
    using Int = __int128;

    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    static Rational pow2(int e) {
        // 2^e for |e| < 127
        if (e < -126 || e > 126) throw OverflowError("rational pow2 exponent");
        Rational r;
        if (e >= 0) {
            r.num_ = Int(1) << e;
            r.den_ = 1;
        } else {
            r.num_ = 1;
            r.den_ = Int(1) << (-e);
        }
        return r;
    }

    Rational inverse() const {
        if (num_ == 0) throw Error("rational division by zero");
        Rational r;
        r.num_ = den_;
        r.den_ = num_;
        if (r.den_ < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        return r;
    }

    Rational& operator+=(const Rational& o) {
        num_ = checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_));
        den_ = checked_mul(den_, o.den_);
        normalize();
        return *this;
    }

    Rational& operator-=(const Rational& o) {
        Rational neg = o;
        neg.num_ = -neg.num_;
        return *this += neg;
    }

    Rational& operator*=(const Rational& o) {
        num_ = checked_mul(num_, o.num_);
        den_ = checked_mul(den_, o.den_);
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) <= checked_mul(b.num_, a.den_);
    }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const {
        std::string s = int_str(num_);
        if (den_ != 1) s += "/" + int_str(den_);
        return s;
    }

private:
    static Int checked_mul(Int a, Int b) {
        if (a == 0 || b == 0) return 0;
        Int r = a * b;
        if (r / b != a) throw OverflowError("rational multiplication overflow");
        return r;
    }

    static Int checked_add(Int a, Int b) {
        Int r = a + b;
        if ((b > 0 && r < a) || (b < 0 && r > a)) throw OverflowError("rational addition overflow");
        return r;
    }

    static Int gcd128(Int a, Int b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            Int t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static std::string int_str(Int x) {
        if (x == 0) return "0";
        bool neg = x < 0;
        if (neg) x = -x;
        std::string s;
        while (x > 0) {
            s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
            x /= 10;
        }
        if (neg) s.push_back('-');
        return std::string(s.rbegin(), s.rend());
    }

    void normalize() {
        if (den_ == 0) throw Error("rational zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd128(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    Int num_, den_;
};

} // namespace sawkit

#endif
