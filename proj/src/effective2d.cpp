#include "polyawalk/effective2d.hpp"

#include <algorithm>
#include <cmath>

#include "polyawalk/fft.hpp"
#include "polyawalk/lattice.hpp"

namespace polyawalk {

Interval robbins_factorial_bounds(long n) {
    if (n < 1) throw InputError("robbins_factorial_bounds requires n >= 1");
    Interval nn(static_cast<double>(n));
    Interval stirling = sqrt(Interval(2.0) * Interval::pi() * nn) *
                        exp(nn * (log(nn) - Interval(1.0)));
    Interval lo = stirling * exp(Interval(1.0) / (Interval(12.0) * nn + Interval(1.0)));
    Interval hi = stirling * exp(Interval(1.0) / (Interval(12.0) * nn));
    return Interval(lo.lo(), hi.hi());
}

U2nCheckReport u2n_bounds_check(long M) {
    if (M < 1) throw InputError("u2n_bounds_check requires M >= 1");
    U2nCheckReport rep;
    rep.checked_up_to = M;
    Interval u(1.0);  // u_0 = 1
    for (long n = 1; n <= M; ++n) {
        Interval f = Interval(static_cast<double>(2 * n - 1)) / Interval(static_cast<double>(2 * n));
        u *= f * f;
        Interval lo_bound = Interval(0.228) / Interval(static_cast<double>(n));
        Interval hi_bound = Interval(0.346) / Interval(static_cast<double>(n));
        // Certified only if the whole enclosure sits inside the bracket.
        if (!(u.lo() >= lo_bound.hi() && u.hi() <= hi_bound.lo())) {
            rep.ok = false;
            rep.first_violation = n;
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

namespace {

Interval upper_gap_interval(long N) {
    if (N < 3) throw InputError("upper_gap_bound valid for N >= 3 only");
    Interval nn(static_cast<double>(N));
    Interval first = Interval(1.0) / (Interval(0.2) * log(nn) - Interval(0.16));
    Interval second = pow_rational(nn, 8, 9) * exp(-pow_rational(nn, 1, 9));
    return first + second;
}

Interval lower_gap_interval(long N) {
    if (N < 140000) throw InputError("lower_gap_bound valid for N >= 140000 only");
    Interval nn(static_cast<double>(N));
    return Interval(1.0) / (Interval(0.84) * log(nn)) - Interval(3.0) / nn;
}

Interval corollary_lo(long N) {
    return Interval(1.0) / (Interval(0.9) * log(Interval(static_cast<double>(N))));
}
Interval corollary_hi(long N) {
    return Interval(1.0) / (Interval(0.1) * log(Interval(static_cast<double>(N))));
}

}  // namespace

double upper_gap_bound(long N) { return upper_gap_interval(N).hi(); }
double upper_gap_bound_down(long N) { return upper_gap_interval(N).lo(); }
double lower_gap_bound(long N) { return lower_gap_interval(N).lo(); }
double lower_gap_bound_up(long N) { return lower_gap_interval(N).hi(); }

std::vector<BigInt> d2_closed_return_counts(long N) {
    std::vector<BigInt> b(static_cast<size_t>(N) + 1, 0);
    BigInt central = 1;
    for (long m = 0; 2 * m <= N; ++m) {
        b[static_cast<size_t>(2 * m)] = central * central;
        central *= static_cast<unsigned long>(2 * m + 1) * 2;
        mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(),
                        static_cast<unsigned long>(m + 1));
    }
    return b;
}

Rational exact_gap_d2(long N) {
    std::vector<BigInt> b = d2_closed_return_counts(N);
    std::vector<BigInt> c = first_return_from_b(b);
    BigInt num = 0;
    for (const auto& v : c) {
        num *= 4;
        num += v;
    }
    BigInt den = pow_ui(4, static_cast<unsigned long>(N));
    Rational gap(den - num, den);
    gap.canonicalize();
    return gap;
}

GapVerification verify_gap(const std::vector<long>& n_list, GapMode mode) {
    if (n_list.empty()) throw InputError("verify_gap: empty N list");
    long maxN = *std::max_element(n_list.begin(), n_list.end());
    long minN = *std::min_element(n_list.begin(), n_list.end());
    if (minN < 2) throw InputError("verify_gap: N must be >= 2");
    if (mode == GapMode::Exact && maxN > 5000)
        throw ResourceError("exact mode capped at N = 5000 (O(N^2) series inversion)");
    if (mode == GapMode::Floating && maxN > 200000)
        throw ResourceError("floating mode capped at N = 2*10^5");

    GapVerification out;
    out.mode = mode;

    std::vector<long> sorted = n_list;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    // Shared prefix state over the largest requested N.
    std::vector<double> gap_at(static_cast<size_t>(maxN) + 1, 0.0);
    std::vector<Rational> exact_at;  // filled in exact mode at requested N only
    double err_estimate = 0.0;

    if (mode == GapMode::Exact) {
        std::vector<BigInt> b = d2_closed_return_counts(maxN);
        std::vector<BigInt> c = first_return_from_b(b);
        exact_at.resize(sorted.size());
        BigInt num = 0, den = 1;
        size_t want = 0;
        for (long n = 0; n <= maxN; ++n) {
            num *= 4;
            num += c[static_cast<size_t>(n)];
            den *= 4;
            if (want < sorted.size() && sorted[want] == n) {
                Rational g(den - num, den);
                g.canonicalize();
                exact_at[want] = g;
                ++want;
            }
        }
    } else {
        // Normalized u_n = b_n 4^{-n}; reciprocal via Newton/FFT; c = 1 - 1/B.
        size_t len = static_cast<size_t>(maxN) + 1;
        std::vector<double> u(len, 0.0);
        u[0] = 1.0;
        double val = 1.0;
        for (long m = 1; 2 * m <= maxN; ++m) {
            double f = (2.0 * m - 1.0) / (2.0 * m);
            val *= f * f;
            u[static_cast<size_t>(2 * m)] = val;
        }
        std::vector<double> r = newton_reciprocal(u, len);
        double running = 0.0;
        for (long n = 1; n <= maxN; ++n) {
            running += -r[static_cast<size_t>(n)];
            gap_at[static_cast<size_t>(n)] = 1.0 - running;
        }
        // Rounding model: each FFT product of length L contributes O(eps log L)
        // relative error on coefficients of magnitude <= 1; the prefix sum over
        // maxN terms compounds it. Reported, not certified.
        size_t L = 1;
        while (L < 2 * len) L <<= 1;
        err_estimate = 1e-16 * std::log2(static_cast<double>(L)) *
                       static_cast<double>(maxN) * 8.0;
    }

    size_t want = 0;
    for (long N : sorted) {
        GapBoundRecord rec;
        rec.N = N;
        if (mode == GapMode::Exact) {
            rec.exact_gap = exact_at[want];
            rec.gap = to_double(*rec.exact_gap);
        } else {
            rec.gap = gap_at[static_cast<size_t>(N)];
            rec.float_err_estimate = err_estimate;
        }
        ++want;

        if (N >= 3) {
            rec.upper = upper_gap_bound(N);
            double upper_down = upper_gap_bound_down(N);
            if (mode == GapMode::Exact) {
                // gap <= round-down(upper) implies gap <= the true bound.
                rec.upper_ok = *rec.exact_gap <= Rational(upper_down);
            } else {
                rec.upper_ok = rec.gap + err_estimate <= upper_down;
            }
        } else {
            rec.upper = 1.0;
            rec.upper_ok = true;  // gap <= 1 trivially; bound not defined below 3
        }
        if (N >= 140000) {
            rec.lower = lower_gap_bound(N);
            double lower_up = lower_gap_bound_up(N);
            if (mode == GapMode::Exact)
                rec.lower_ok = *rec.exact_gap >= Rational(lower_up);
            else
                rec.lower_ok = rec.gap - err_estimate >= lower_up;
        }
        rec.cor_lo = corollary_lo(N).lo();
        rec.cor_hi = corollary_hi(N).hi();
        if (mode == GapMode::Exact)
            rec.corollary_ok = *rec.exact_gap >= Rational(corollary_lo(N).hi()) &&
                               *rec.exact_gap <= Rational(corollary_hi(N).lo());
        else
            rec.corollary_ok = rec.gap - err_estimate >= corollary_lo(N).hi() &&
                               rec.gap + err_estimate <= corollary_hi(N).lo();
        if (rec.corollary_ok && out.smallest_corollary_N == 0) out.smallest_corollary_N = N;
        out.all_ok = out.all_ok && rec.upper_ok && rec.lower_ok;
        out.records.push_back(std::move(rec));
    }
    return out;
}

}  // namespace polyawalk
