#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "polyawalk/errors.hpp"

namespace polyawalk {

// Outward step helpers. Double arithmetic in round-to-nearest lands within
// 1 ulp of the exact result, so widening each endpoint by one ulp yields a
// containment-safe enclosure without touching the FPU rounding mode.
inline double step_down(double x, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    return x;
}
inline double step_up(double x, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, std::numeric_limits<double>::infinity());
    return x;
}

// Closed interval [lo, hi] with containment-safe (outward-rounded) arithmetic.
// exp/log go through libm, whose error is below 1 ulp on this platform; those
// endpoints are widened by 3 ulps.
class Interval {
  public:
    Interval() : lo_(0.0), hi_(0.0) {}
    Interval(double point) : lo_(point), hi_(point) {}  // NOLINT: implicit by design
    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo_ <= hi_)) throw InputError("Interval: lo > hi");
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return contains(0.0); }
    bool strictly_inside(double a, double b) const { return a < lo_ && hi_ < b; }

    Interval operator-() const { return Interval(-hi_, -lo_); }

    friend Interval operator+(const Interval& a, const Interval& b) {
        return Interval(step_down(a.lo_ + b.lo_), step_up(a.hi_ + b.hi_));
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        return Interval(step_down(a.lo_ - b.hi_), step_up(a.hi_ - b.lo_));
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        double p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        double lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
        double hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
        return Interval(step_down(lo), step_up(hi));
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw InputError("Interval division by interval containing zero");
        double q1 = a.lo_ / b.lo_, q2 = a.lo_ / b.hi_, q3 = a.hi_ / b.lo_, q4 = a.hi_ / b.hi_;
        double lo = std::fmin(std::fmin(q1, q2), std::fmin(q3, q4));
        double hi = std::fmax(std::fmax(q1, q2), std::fmax(q3, q4));
        return Interval(step_down(lo), step_up(hi));
    }

    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }
    Interval& operator/=(const Interval& o) { return *this = *this / o; }

    Interval intersect(const Interval& o) const {
        double lo = std::fmax(lo_, o.lo_), hi = std::fmin(hi_, o.hi_);
        if (lo > hi) throw InvariantError("Interval intersection is empty");
        return Interval(lo, hi);
    }

    // pi enclosure: closest double below/above the true value.
    static Interval pi() { return Interval(3.141592653589793, step_up(3.141592653589793)); }

  private:
    double lo_, hi_;
};

inline bool operator==(const Interval& a, const Interval& b) {
    return a.lo() == b.lo() && a.hi() == b.hi();
}

inline Interval sqrt(const Interval& a) {
    if (a.lo() < 0.0) throw InputError("Interval sqrt of partially negative interval");
    // IEEE sqrt is correctly rounded; 1 ulp out is enough.
    return Interval(step_down(std::sqrt(a.lo())), step_up(std::sqrt(a.hi())));
}

inline Interval exp(const Interval& a) {
    return Interval(step_down(std::exp(a.lo()), 3), step_up(std::exp(a.hi()), 3));
}

inline Interval log(const Interval& a) {
    if (a.lo() <= 0.0) throw InputError("Interval log of non-positive interval");
    return Interval(step_down(std::log(a.lo()), 3), step_up(std::log(a.hi()), 3));
}

// a^k for integer k >= 0 by repeated interval multiplication.
inline Interval pow_int(const Interval& a, long k) {
    if (k < 0) return Interval(1.0) / pow_int(a, -k);
    Interval result(1.0);
    Interval base = a;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

// a^(p/q) for a > 0 via exp((p/q) log a).
inline Interval pow_rational(const Interval& a, long p, long q) {
    Interval e = Interval(static_cast<double>(p)) / Interval(static_cast<double>(q));
    return exp(e * log(a));
}

inline std::ostream& operator<<(std::ostream& os, const Interval& v) {
    return os << "[" << v.lo() << ", " << v.hi() << "]";
}

}  // namespace polyawalk
