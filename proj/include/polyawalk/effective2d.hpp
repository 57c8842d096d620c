#pragma once

#include <optional>
#include <vector>

#include "polyawalk/interval.hpp"
#include "polyawalk/rational.hpp"

namespace polyawalk {

// Effective Stirling bracket sqrt(2 pi n)(n/e)^n e^{1/(12n+1)} <= n! <=
// sqrt(2 pi n)(n/e)^n e^{1/(12n)}, outward-rounded.
Interval robbins_factorial_bounds(long n);

struct U2nCheckReport {
    long checked_up_to = 0;
    bool ok = false;
    long first_violation = 0;  // 0 when none
};

// Verifies 0.228/n <= u_{2n} = (C(2n,n) 4^{-n})^2 <= 0.346/n for 1 <= n <= M
// using the multiplicative recurrence u_{2n} = u_{2n-2} ((2n-1)/(2n))^2 in
// interval arithmetic.
U2nCheckReport u2n_bounds_check(long M);

// (0.2 log N - 0.16)^{-1} + N^{8/9} exp(-N^{1/9}), natural log, N >= 3.
double upper_gap_bound(long N);
// (0.84 log N)^{-1} - 3/N, N >= 140000.
double lower_gap_bound(long N);
// Directed twins used by the comparison tests (the public ops round toward
// the safe side for a consumer of the bound; checks need the other side).
double upper_gap_bound_down(long N);
double lower_gap_bound_up(long N);

enum class GapMode { Exact, Floating };

struct GapBoundRecord {
    long N = 0;
    std::optional<Rational> exact_gap;  // exact mode only
    double gap = 0.0;                   // numeric value of the gap
    double upper = 0.0;                 // Prop-4.4-style bound (valid N >= 3)
    std::optional<double> lower;        // Prop-4.6-style bound (N >= 140000)
    double cor_lo = 0.0;                // (0.9 log N)^{-1}
    double cor_hi = 0.0;                // (0.1 log N)^{-1}
    bool upper_ok = false;
    bool lower_ok = true;  // vacuously true when lower undefined
    bool corollary_ok = false;
    double float_err_estimate = 0.0;  // floating mode bookkeeping, not certified
};

struct GapVerification {
    GapMode mode;
    std::vector<GapBoundRecord> records;
    long smallest_corollary_N = 0;  // empirical; 0 when none in range
    bool all_ok = true;
};

// exact mode: N <= 5000 (O(N^2) big-integer series inversion);
// floating mode: N <= 2*10^5 via Newton/FFT reciprocal with error bookkeeping.
GapVerification verify_gap(const std::vector<long>& n_list, GapMode mode);

// d=2 closed-walk counts b_n = C(2m,m)^2 as exact integers.
std::vector<BigInt> d2_closed_return_counts(long N);

// Exact gap 1 - 4^{-N} |W_{2,rec}(N)| for a single N.
Rational exact_gap_d2(long N);

}  // namespace polyawalk
