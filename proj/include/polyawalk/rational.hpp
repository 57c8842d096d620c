#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

#include "polyawalk/errors.hpp"
#include "polyawalk/interval.hpp"

namespace polyawalk {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt pow_ui(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

// Exact integer square root; throws if n is not a perfect square.
inline BigInt exact_sqrt(const BigInt& n) {
    if (n < 0) throw InputError("exact_sqrt of negative integer");
    BigInt root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (rem != 0) throw InputError("exact_sqrt: not a perfect square");
    return root;
}

// Exact rational square root (numerator and denominator must be squares).
inline Rational exact_sqrt(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    Rational r(exact_sqrt(c.get_num()), exact_sqrt(c.get_den()));
    r.canonicalize();
    return r;
}

inline std::string fraction_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_fraction(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw InputError("cannot parse rational: " + s);
    q.canonicalize();
    return q;
}

// mpq_get_d truncates toward zero and is within 1 ulp; widening by 2 ulps
// each side yields a containment-safe enclosure.
inline Interval to_interval(const Rational& q) {
    double d = mpq_get_d(q.get_value());
    return Interval(step_down(d, 2), step_up(d, 2));
}

inline Interval to_interval(const BigInt& z) {
    double d = mpz_get_d(z.get_mpz_t());
    return Interval(step_down(d, 2), step_up(d, 2));
}

inline double to_double(const Rational& q) { return mpq_get_d(q.get_value()); }

// Complex number with exact rational components; the exact carrier for
// weighted-walk identities.
struct RationalComplex {
    Rational re, im;

    RationalComplex() : re(0), im(0) {}
    RationalComplex(int x) : re(x), im(0) {}  // NOLINT: ring embedding
    RationalComplex(Rational r) : re(std::move(r)), im(0) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    RationalComplex operator-() const { return {-re, -im}; }
    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw InputError("RationalComplex division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    RationalComplex& operator+=(const RationalComplex& o) { return *this = *this + o; }
    RationalComplex& operator-=(const RationalComplex& o) { return *this = *this - o; }
    RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const RationalComplex& a, const RationalComplex& b) { return !(a == b); }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

inline std::ostream& operator<<(std::ostream& os, const RationalComplex& z) {
    return os << fraction_string(z.re) << (z.im >= 0 ? "+" : "") << fraction_string(z.im) << "i";
}

}  // namespace polyawalk
