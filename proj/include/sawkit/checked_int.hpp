#ifndef SAWKIT_CHECKED_INT_HPP
#define SAWKIT_CHECKED_INT_HPP

#include <cstdint>
#include <string>

#include "sawkit/errors.hpp"

namespace sawkit {

// 128-bit unsigned counter with checked arithmetic.  Walk counts are exact
// integers; wrapping silently would corrupt every derived table, so add/mul
// throw OverflowError instead.
class U128 {
public:
    constexpr U128() : v_(0) {}
    constexpr U128(std::uint64_t x) : v_(x) {}

    static constexpr U128 max() {
        U128 r;
        r.v_ = ~static_cast<unsigned __int128>(0);
        return r;
    }

    U128& operator+=(U128 o) {
        unsigned __int128 r = v_ + o.v_;
        if (r < v_) throw OverflowError("u128 addition overflow");
        v_ = r;
        return *this;
    }

    U128& operator-=(U128 o) {
        if (o.v_ > v_) throw OverflowError("u128 subtraction underflow");
        v_ -= o.v_;
        return *this;
    }

    U128& operator*=(U128 o) {
        if (v_ != 0 && o.v_ != 0) {
            unsigned __int128 r = v_ * o.v_;
            if (r / v_ != o.v_) throw OverflowError("u128 multiplication overflow");
            v_ = r;
        } else {
            v_ = 0;
        }
        return *this;
    }

    friend U128 operator+(U128 a, U128 b) { return a += b; }
    friend U128 operator-(U128 a, U128 b) { return a -= b; }
    friend U128 operator*(U128 a, U128 b) { return a *= b; }
    friend bool operator==(U128 a, U128 b) { return a.v_ == b.v_; }
    friend bool operator!=(U128 a, U128 b) { return a.v_ != b.v_; }
    friend bool operator<(U128 a, U128 b) { return a.v_ < b.v_; }
    friend bool operator<=(U128 a, U128 b) { return a.v_ <= b.v_; }
    friend bool operator>(U128 a, U128 b) { return a.v_ > b.v_; }
    friend bool operator>=(U128 a, U128 b) { return a.v_ >= b.v_; }

    // Exact only below 2^53; counts in this project stay far below that,
    // callers that need roots/ratios accept the rounding.
    double to_double() const { return static_cast<double>(v_); }

    std::uint64_t low64() const { return static_cast<std::uint64_t>(v_); }
    bool fits_u64() const { return v_ >> 64 == 0; }

    std::string str() const {
        if (v_ == 0) return "0";
        unsigned __int128 x = v_;
        std::string s;
        while (x > 0) {
            s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
            x /= 10;
        }
        return std::string(s.rbegin(), s.rend());
    }

private:
    unsigned __int128 v_;
};

} // namespace sawkit

#endif
