#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace subtile {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

double rat_to_double(const BigRat& r);
std::string rat_str(const BigRat& r);
BigRat rat_parse(const std::string& text); // "p/q" or "p", q > 0 after reduction

// Element of Q[tau], tau = (1+sqrt(5))/2, stored as u + v*tau.
// All arithmetic and comparisons are exact; tau^2 = tau + 1 is the only
// reduction rule. Ordering embeds into the reals.
class Golden {
public:
    Golden() : u_(0), v_(0) {}
    Golden(int n) : u_(n), v_(0) {}
    Golden(long n) : u_(n), v_(0) {}
    Golden(long long n) : u_(n), v_(0) {}
    explicit Golden(BigRat u) : u_(std::move(u)), v_(0) {}
    Golden(BigRat u, BigRat v) : u_(std::move(u)), v_(std::move(v)) {}

    static Golden tau() { return Golden(BigRat(0), BigRat(1)); }

    const BigRat& u() const { return u_; }
    const BigRat& v() const { return v_; }
    bool is_rational() const { return v_ == 0; }
    bool is_zero() const { return u_ == 0 && v_ == 0; }

    Golden operator-() const { return Golden(-u_, -v_); }
    Golden operator+(const Golden& o) const { return Golden(u_ + o.u_, v_ + o.v_); }
    Golden operator-(const Golden& o) const { return Golden(u_ - o.u_, v_ - o.v_); }
    Golden operator*(const Golden& o) const {
        // (u1 + v1 t)(u2 + v2 t), t^2 = t + 1
        return Golden(u_ * o.u_ + v_ * o.v_,
                      u_ * o.v_ + v_ * o.u_ + v_ * o.v_);
    }
    Golden inverse() const;
    Golden operator/(const Golden& o) const { return *this * o.inverse(); }

    Golden& operator+=(const Golden& o) { u_ += o.u_; v_ += o.v_; return *this; }
    Golden& operator-=(const Golden& o) { u_ -= o.u_; v_ -= o.v_; return *this; }
    Golden& operator*=(const Golden& o) { *this = *this * o; return *this; }

    // Exact sign of u + v*tau as a real number: -1, 0, +1.
    int sign() const;

    bool operator==(const Golden& o) const { return u_ == o.u_ && v_ == o.v_; }
    bool operator!=(const Golden& o) const { return !(*this == o); }
    bool operator<(const Golden& o) const { return (*this - o).sign() < 0; }
    bool operator>(const Golden& o) const { return (*this - o).sign() > 0; }
    bool operator<=(const Golden& o) const { return (*this - o).sign() <= 0; }
    bool operator>=(const Golden& o) const { return (*this - o).sign() >= 0; }

    Golden abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const;

    // Canonical exact form "(u,v)"; components are reduced rationals.
    std::string str() const;
    // Parse the str() form back.
    static Golden parse(const std::string& text);

private:
    BigRat u_, v_;
};

// tau^k for any integer k (k may be negative; tau^-1 = tau - 1).
Golden tau_pow(long long k);

Golden golden_min(const Golden& a, const Golden& b);
Golden golden_max(const Golden& a, const Golden& b);

// floor of an exact golden number as a big integer
BigInt golden_floor(const Golden& g);

} // namespace subtile
