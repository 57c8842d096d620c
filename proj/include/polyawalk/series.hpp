#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "polyawalk/errors.hpp"
#include "polyawalk/interval.hpp"
#include "polyawalk/rational.hpp"

namespace polyawalk {

// Coefficient semantics. The contract is compile-time: a series is templated
// on its coefficient type, so mixed-semantics operands are rejected by the
// type system. The four public instances are Rational (exact), double,
// std::complex<double> and Interval; RationalComplex is the exact carrier
// used by the weighted module and its oracles.
namespace coeff {

template <class T>
inline bool is_zero(const T& x) { return x == T(0); }
inline bool is_zero(const Interval& x) { return x.lo() == 0.0 && x.hi() == 0.0; }
inline bool is_zero(const RationalComplex& x) { return x.is_zero(); }

// Invertibility of a constant term. For intervals: 0 must lie outside.
template <class T>
inline bool is_invertible(const T& x) { return !is_zero(x); }
inline bool is_invertible(const Interval& x) { return !x.contains_zero(); }

template <class T>
inline std::string semantics_name();
template <> inline std::string semantics_name<Rational>() { return "rational"; }
template <> inline std::string semantics_name<double>() { return "float"; }
template <> inline std::string semantics_name<std::complex<double>>() { return "complex"; }
template <> inline std::string semantics_name<Interval>() { return "interval"; }
template <> inline std::string semantics_name<RationalComplex>() { return "rational_complex"; }

// Square root of a coefficient for the series square-root extraction.
// Real semantics take the nonnegative branch; complex semantics require the
// caller-supplied branch value (checked against y^2 = x).
template <class T>
inline T sqrt_branch(const T& x, const std::optional<T>& branch);

template <>
inline Rational sqrt_branch<Rational>(const Rational& x, const std::optional<Rational>& branch) {
    Rational r = exact_sqrt(x);
    if (branch && *branch != r && *branch != -r)
        throw InputError("sqrt branch value does not square to the target coefficient");
    return branch ? *branch : r;
}
template <>
inline double sqrt_branch<double>(const double& x, const std::optional<double>& branch) {
    if (x < 0) throw InputError("series sqrt: negative lowest coefficient under real semantics");
    return branch ? *branch : std::sqrt(x);
}
template <>
inline Interval sqrt_branch<Interval>(const Interval& x, const std::optional<Interval>& branch) {
    if (branch) return *branch;
    return sqrt(x);
}
template <>
inline std::complex<double> sqrt_branch<std::complex<double>>(
    const std::complex<double>& x, const std::optional<std::complex<double>>& branch) {
    if (!branch)
        throw InputError("series sqrt: complex semantics require a caller-supplied branch value");
    if (std::abs(*branch * *branch - x) > 1e-9 * (1.0 + std::abs(x)))
        throw InputError("sqrt branch value does not square to the target coefficient");
    return *branch;
}
template <>
inline RationalComplex sqrt_branch<RationalComplex>(const RationalComplex& x,
                                                    const std::optional<RationalComplex>& branch) {
    if (!branch)
        throw InputError("series sqrt: complex semantics require a caller-supplied branch value");
    if (*branch * *branch != x)
        throw InputError("sqrt branch value does not square to the target coefficient");
    return *branch;
}

}  // namespace coeff

// Truncated formal power series: coefficients c[0..order]. All binary
// operations are valid to min(orders) and the result records that order.
template <class T>
struct TruncatedSeries {
    std::vector<T> c;

    TruncatedSeries() = default;
    explicit TruncatedSeries(int order) : c(static_cast<size_t>(order) + 1, T(0)) {
        if (order < 0) throw InputError("series order must be >= 0");
    }
    explicit TruncatedSeries(std::vector<T> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) throw InputError("series needs at least the constant coefficient");
    }

    int order() const { return static_cast<int>(c.size()) - 1; }

    static TruncatedSeries unit(int order) {
        TruncatedSeries s(order);
        s.c[0] = T(1);
        return s;
    }
    // 1 - x, the denominator of the geometric series.
    static TruncatedSeries one_minus_x(int order) {
        TruncatedSeries s(order);
        s.c[0] = T(1);
        if (order >= 1) s.c[1] = T(-1);
        return s;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.c == b.c;
    }
};

template <class T>
TruncatedSeries<T> linear_combine(const T& alpha, const TruncatedSeries<T>& s, const T& beta,
                                  const TruncatedSeries<T>& t) {
    int n = std::min(s.order(), t.order());
    TruncatedSeries<T> r(n);
    for (int i = 0; i <= n; ++i) r.c[i] = alpha * s.c[i] + beta * t.c[i];
    return r;
}

template <class T>
TruncatedSeries<T> multiply(const TruncatedSeries<T>& s, const TruncatedSeries<T>& t) {
    int n = std::min(s.order(), t.order());
    TruncatedSeries<T> r(n);
    for (int i = 0; i <= n; ++i) {
        T acc(0);
        for (int j = 0; j <= i; ++j) acc += s.c[j] * t.c[i - j];
        r.c[i] = acc;
    }
    return r;
}

template <class T>
TruncatedSeries<T> reciprocal(const TruncatedSeries<T>& s) {
    if (!coeff::is_invertible(s.c[0]))
        throw InputError("series reciprocal: constant coefficient c0 = " +
                         coeff::semantics_name<T>() + " zero (or contains zero), not invertible");
    int n = s.order();
    TruncatedSeries<T> r(n);
    r.c[0] = T(1) / s.c[0];
    for (int i = 1; i <= n; ++i) {
        T acc(0);
        for (int j = 1; j <= i; ++j) acc += s.c[j] * r.c[i - j];
        r.c[i] = -acc / s.c[0];
    }
    return r;
}

// Running sums: coefficient n of the result is sum_{j<=n} s_j, identical to
// multiplying by the geometric series 1/(1-x).
template <class T>
TruncatedSeries<T> prefix_sums(const TruncatedSeries<T>& s) {
    TruncatedSeries<T> r(s.order());
    T acc(0);
    for (int i = 0; i <= s.order(); ++i) {
        acc += s.c[i];
        r.c[i] = acc;
    }
    return r;
}

// First-return extraction C = 1 - 1/B. Requires b0 = 1; the result has c0 = 0
// and satisfies B(1-C) = 1 up to truncation.
template <class T>
TruncatedSeries<T> solve_first_return(const TruncatedSeries<T>& b) {
    if (!(b.c[0] == T(1)))
        throw InputError("solve_first_return: constant coefficient b0 must equal 1");
    TruncatedSeries<T> r = reciprocal(b);
    TruncatedSeries<T> c(b.order());
    c.c[0] = T(0);
    for (int i = 1; i <= b.order(); ++i) c.c[i] = -r.c[i];
    return c;
}

// Square-root factor extraction from B = B0 + C0^2 B: returns the series
// square root C0 of S = 1 - B0/B. With inputs of order M and the lowest
// nonzero coefficient of S at even index 2t, the relation determines C0 only
// up to order M - t, and that is the order returned. The lowest coefficient
// of C0 takes the nonnegative branch under real semantics; complex semantics
// require `branch_lowest`.
template <class T>
TruncatedSeries<T> solve_squared_factor(const TruncatedSeries<T>& b, const TruncatedSeries<T>& b0,
                                        std::optional<T> branch_lowest = std::nullopt) {
    if (!(b.c[0] == T(1)) || !(b0.c[0] == T(1)))
        throw InputError("solve_squared_factor: constant coefficients must equal 1");
    TruncatedSeries<T> s =
        linear_combine(T(1), TruncatedSeries<T>::unit(std::min(b.order(), b0.order())), T(-1),
                       multiply(b0, reciprocal(b)));
    int m = s.order();
    int k = -1;
    for (int i = 0; i <= m; ++i) {
        if (!coeff::is_zero(s.c[i])) {
            k = i;
            break;
        }
    }
    if (k < 0) return TruncatedSeries<T>(m);  // B0 = B: v unreachable, C0 = 0
    if (k % 2 != 0)
        throw InputError("solve_squared_factor: lowest nonzero term of 1 - B0/B has odd order " +
                         std::to_string(k) + ", no series square root exists");
    int t = k / 2;
    TruncatedSeries<T> c0(m - t);
    c0.c[t] = coeff::sqrt_branch<T>(s.c[k], branch_lowest);
    T two_c = c0.c[t] + c0.c[t];
    for (int i = t + 1; i <= m - t; ++i) {
        // s_{t+i} = sum_{p+q=t+i} c0_p c0_q with p,q in [t, i]
        T acc(0);
        for (int p = t + 1; p <= t + ((i - t - 1) / 2); ++p) acc += c0.c[p] * c0.c[t + i - p];
        acc += acc;
        if ((i + t) % 2 == 0) {
            const T& mid = c0.c[(i + t) / 2];
            if ((i + t) / 2 > t) acc += mid * mid;
        }
        c0.c[i] = (s.c[t + i] - acc) / two_c;
    }
    return c0;
}

// Horner evaluation of the partial sum sum_{n<=order} s_n x^n.
template <class T>
T eval_partial(const TruncatedSeries<T>& s, const T& x) {
    T acc(0);
    for (int i = s.order(); i >= 0; --i) acc = acc * x + s.c[i];
    return acc;
}

// sqrt(z) = {y : y^2 = z}; {0} for z = 0.
inline std::vector<std::complex<double>> sqrt_set(const std::complex<double>& z) {
    if (z == std::complex<double>(0.0, 0.0)) return {z};
    std::complex<double> y = std::sqrt(z);
    return {y, -y};
}

inline std::vector<RationalComplex> sqrt_set_exact(const RationalComplex& z,
                                                   const RationalComplex& witness) {
    if (z.is_zero()) return {RationalComplex()};
    if (witness * witness != z) throw InputError("sqrt_set_exact: witness does not square to z");
    return {witness, -witness};
}

}  // namespace polyawalk
