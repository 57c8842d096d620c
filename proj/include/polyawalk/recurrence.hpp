#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyawalk/interval.hpp"
#include "polyawalk/lattice.hpp"
#include "polyawalk/rational.hpp"

namespace polyawalk {

enum class LimitKind { One, Enclosure };

struct RecurrenceReport {
    int d = 1;
    LatticePoint v;
    int N = 0;
    std::vector<Rational> profile;  // a_n/d_n (or a'_n/d_n)
    LimitKind kind = LimitKind::One;
    Interval limit{0.0, 1.0};
    Rational gap;                  // 1 - profile[N], reported for d <= 2
    Interval tail_constant{0.0};   // K_d
    long tail_threshold = 0;       // n0: the exact-verification horizon
    std::string tail_derivation;
};

// Effective constant K_d(m0) with b_n/d_n <= K_d n^{-d/2} for even n > 2 m0:
//   K_d(m0) = e^{1/(12 m0)} * sqrt(2) * (d/pi)^{d/2} * (1-(d-1)/m0)^{-d/2},
// assembled from Robbins' bounds on the central binomial and on the balanced
// multinomial, the lemma sum(a_i^2) <= max(a_i) for a probability vector, and
// prod m_i'^{m_i'} >= (m/d)^m. Evaluated in outward-rounded interval
// arithmetic; the same bound is verified exactly for all even n <= 2 m0.
Interval effective_tail_constant(int d, long m0);

// Upper bound on sum over even n > N of n^{-d/2} (integral majorant).
Interval even_power_tail(int d, long N);

// Profile a_n/d_n with the exact gap (d <= 2) or the d >= 3 enclosure.
RecurrenceReport zero_recurrence_profile(int d, int N, const LatticeCaps& caps = {});

// Rigorous enclosure of 1 - 1/B(1) for d >= 3. B(1) is enclosed by the exact
// partial sum plus the K_d tail.
Interval polya_constant(int d, int N);
RecurrenceReport polya_constant_report(int d, int N);

struct VRecurrenceReport {
    int d;
    LatticePoint v;
    int N;
    Interval b_enclosure{0.0};
    Interval b0_enclosure{0.0};
    Interval sqrt_route{0.0};    // sqrt(1 - B0(1)/B(1))
    Interval direct_route{0.0};  // C0(1) own partial sums
    Interval limit{0.0};         // intersection
    Interval tail_constant{0.0};
};

// Enclosure of sqrt(1 - B0(1)/B(1)) = lim a'_n/d_n for d >= 3, v != 0.
VRecurrenceReport v_recurrence_limit_report(int d, const LatticePoint& v, int N,
                                            const LatticeCaps& caps = {});
Interval v_recurrence_limit(int d, const LatticePoint& v, int N, const LatticeCaps& caps = {});

struct AsymptoticRow {
    LatticePoint v;
    Interval limit{0.0};
    double gamma_formula = 0.0;  // (d/2) Gamma(d/2-1) pi^{-d/2} / |v|^{d-2}
    double ratio = 0.0;          // limit midpoint / formula
};

std::vector<AsymptoticRow> asymptotic_compare(int d, const std::vector<LatticePoint>& targets,
                                              int N, const LatticeCaps& caps = {});

// Gamma at half-integer or integer arguments >= 1/2, from Gamma(1/2) = sqrt(pi)
// and Gamma(1) = 1 plus the functional equation (all that d in [3,4] needs).
Interval gamma_half_integers(int twice_x);

}  // namespace polyawalk
