#include "polyawalk/recurrence.hpp"

#include <algorithm>
#include <sstream>

namespace polyawalk {

Interval effective_tail_constant(int d, long m0) {
    if (d < 3) throw InputError("effective tail constant requires d >= 3");
    if (m0 < 2 * d) throw InputError("tail constant threshold m0 too small");
    Interval md(static_cast<double>(m0));
    Interval dd(static_cast<double>(d));
    Interval k = exp(Interval(1.0) / (Interval(12.0) * md));
    k *= sqrt(Interval(2.0));
    k *= pow_rational(dd / Interval::pi(), d, 2);
    Interval shrink = Interval(1.0) - Interval(static_cast<double>(d - 1)) / md;
    k *= Interval(1.0) / pow_rational(shrink, d, 2);
    return k;
}

Interval even_power_tail(int d, long N) {
    if (d < 3) throw InputError("even_power_tail requires d >= 3");
    long M = N / 2;
    if (M < 1) throw InputError("tail start too small");
    // sum_{m > M} m^{-d/2} <= integral_M^inf x^{-d/2} dx = M^{1-d/2}/(d/2-1)
    Interval MM(static_cast<double>(M));
    Interval integral = pow_rational(MM, 2 - d, 2) / (Interval(static_cast<double>(d)) / 2.0 - 1.0);
    return pow_rational(Interval(2.0), -d, 2) * integral;
}

namespace {

// Exact partial sum sum_{n<=N} counts_n / (2d)^n as one big fraction via
// Horner, returned as an outward-rounded interval.
Interval partial_sum_enclosure(const std::vector<BigInt>& counts, int two_d) {
    BigInt num = 0;
    for (const auto& v : counts) {
        num *= two_d;
        num += v;
    }
    BigInt den = pow_ui(static_cast<unsigned long>(two_d),
                        static_cast<unsigned long>(counts.size() - 1));
    Rational q(num, den);
    q.canonicalize();
    return to_interval(q);
}

// Verify b_n/d_n <= K n^{-d/2} exactly for all even n in [2, N]: equivalent
// to b_n * n^{d/2} <= K_lo * d_n, squared to stay in integers.
void verify_termwise(const std::vector<BigInt>& b, int d, const Interval& K) {
    Rational K_lo(step_down(K.lo(), 2));  // doubles are exact rationals
    Rational K2 = K_lo * K_lo;
    BigInt dn = 1;
    for (size_t n = 0; n < b.size(); ++n) {
        if (n >= 2 && n % 2 == 0 && b[n] != 0) {
            // (b_n n^{d/2})^2 <= K^2 d_n^2  <=>  b_n^2 n^d <= K^2 d_n^2
            Rational lhs(b[n] * b[n] * pow_ui(static_cast<unsigned long>(n),
                                              static_cast<unsigned long>(d)));
            Rational rhs = K2 * Rational(dn * dn);
            if (lhs > rhs)
                throw InvariantError("termwise tail bound b_n/d_n <= K n^{-d/2} fails at n = " +
                                     std::to_string(n));
        }
        dn *= 2 * d;
    }
}

Interval b_one_enclosure(int d, int N, const std::vector<BigInt>& b, Interval* K_out,
                         long* n0_out) {
    long m0 = N / 2;
    Interval K = effective_tail_constant(d, m0);
    verify_termwise(b, d, K);
    Interval partial = partial_sum_enclosure(b, 2 * d);
    Interval tail = Interval(K.hi()) * even_power_tail(d, N);
    if (K_out) *K_out = K;
    if (n0_out) *n0_out = 2 * m0;
    return Interval(partial.lo(), (partial + Interval(0.0, tail.hi())).hi());
}

}  // namespace

Interval polya_constant(int d, int N) { return polya_constant_report(d, N).limit; }

RecurrenceReport polya_constant_report(int d, int N) {
    if (d < 3) throw InputError("polya_constant requires d >= 3 (the limit equals 1 for d <= 2)");
    if (N < 4 * d) throw InputError("polya_constant needs N >= 4d");
    std::vector<BigInt> b = closed_return_counts(d, N);
    RecurrenceReport rep;
    rep.d = d;
    rep.v = LatticePoint::origin(d);
    rep.N = N;
    rep.kind = LimitKind::Enclosure;
    Interval K(0.0);
    long n0 = 0;
    Interval B = b_one_enclosure(d, N, b, &K, &n0);
    rep.limit = Interval(1.0) - Interval(1.0) / B;
    rep.tail_constant = K;
    rep.tail_threshold = n0;
    std::ostringstream os;
    os << "K_" << d << " = e^{1/(12m0)} sqrt(2) (d/pi)^{d/2} (1-(d-1)/m0)^{-d/2} <= " << K.hi()
       << " at m0 = " << (n0 / 2) << "; b_n/d_n <= K n^{-d/2} verified exactly for even n <= "
       << n0 << "; tail majorant 2^{-d/2} (d/2-1)^{-1} floor(N/2)^{1-d/2}";
    rep.tail_derivation = os.str();
    return rep;
}

RecurrenceReport zero_recurrence_profile(int d, int N, const LatticeCaps& caps) {
    RecurrenceReport rep;
    rep.d = d;
    rep.v = LatticePoint::origin(d);
    rep.N = N;

    // Profile = prefix sums of the normalized first-return series.
    std::vector<BigInt> b = closed_return_counts(d, N);
    std::vector<BigInt> c = first_return_from_b(b);
    (void)caps;
    rep.profile.resize(static_cast<size_t>(N) + 1);
    Rational acc(0);
    BigInt dn = 1;
    for (int n = 0; n <= N; ++n) {
        Rational term(c[static_cast<size_t>(n)], dn);
        term.canonicalize();
        acc += term;
        rep.profile[static_cast<size_t>(n)] = acc;
        dn *= 2 * d;
    }
    if (d <= 2) {
        rep.kind = LimitKind::One;
        rep.gap = Rational(1) - rep.profile.back();
    } else {
        RecurrenceReport enc = polya_constant_report(d, N);
        rep.kind = LimitKind::Enclosure;
        rep.limit = enc.limit;
        rep.tail_constant = enc.tail_constant;
        rep.tail_threshold = enc.tail_threshold;
        rep.tail_derivation = enc.tail_derivation;
    }
    return rep;
}

namespace {

// Tail for the direct C0 route: c'_n/d_n <= e_v(n)/d_n <= b_{n'}/d_{n'} with
// n' = n - (n mod 2) (Chapman-Kolmogorov + Cauchy-Schwarz + symmetry), so
// sum_{n > N} c'_n/d_n <= K ( (N)^{-d/2} + (N)^{-d/2} + 2*even_tail ) --
// conservatively bounded by 2*K*(even tail starting at N-2) + boundary terms.
Interval direct_route_tail(int d, long N, const Interval& K) {
    // Walks 0 -> v exist at every second n only; bound both parities anyway:
    // sum over n > N of (n - (n mod 2))^{-d/2} <= 2 * sum over even e >= N of e^{-d/2}
    //   <= 2 * ( N^{-d/2} + even_power_tail(d, N) ).
    Interval first = pow_rational(Interval(static_cast<double>(N)), -d, 2);
    return Interval(2.0) * Interval(K.hi()) * (first + even_power_tail(d, N));
}

}  // namespace

VRecurrenceReport v_recurrence_limit_report(int d, const LatticePoint& v, int N,
                                            const LatticeCaps& caps) {
    if (d < 3) throw InputError("v_recurrence_limit requires d >= 3 (the limit equals 1 for d <= 2)");
    if (v.is_origin())
        throw InputError("v_recurrence_limit requires v != 0 (use zero_recurrence_profile; "
                         "the two formulas do not coincide at v = 0)");
    if (v.dim != d) throw InputError("target dimension mismatch");
    if (N < 4 * d) throw InputError("v_recurrence_limit needs N >= 4d");
    if (v.l1() > N) throw InputError("target out of reach within truncation window");

    WalkCountTable t = walk_table(d, v, N, caps);

    // b' <= b termwise and strictly below at some index: 0 < B0(1) < B(1).
    bool strict = false;
    for (int n = 0; n <= N; ++n) {
        if (t.b_prime[static_cast<size_t>(n)] > t.b[static_cast<size_t>(n)])
            throw InvariantError("b'_n > b_n at n = " + std::to_string(n));
        if (t.b_prime[static_cast<size_t>(n)] < t.b[static_cast<size_t>(n)]) strict = true;
    }
    if (!strict) throw InvariantError("B0 partial sums equal B: target invisible to the walk");

    VRecurrenceReport rep;
    rep.d = d;
    rep.v = v;
    rep.N = N;

    long m0 = N / 2;
    Interval K = effective_tail_constant(d, m0);
    verify_termwise(t.b, d, K);
    rep.tail_constant = K;
    Interval tail(0.0, (Interval(K.hi()) * even_power_tail(d, N)).hi());

    Interval SB = partial_sum_enclosure(t.b, 2 * d);
    Interval SB0 = partial_sum_enclosure(t.b_prime, 2 * d);
    rep.b_enclosure = SB + tail;
    rep.b0_enclosure = SB0 + tail;  // b' tail majorized by the b tail

    Interval ratio = rep.b0_enclosure / rep.b_enclosure;
    Interval one_minus(std::max(0.0, 1.0 - ratio.hi()), std::max(0.0, 1.0 - ratio.lo()));
    rep.sqrt_route = sqrt(one_minus);

    Interval SC = partial_sum_enclosure(t.c_prime, 2 * d);
    Interval ctail(0.0, direct_route_tail(d, N, K).hi());
    rep.direct_route = SC + ctail;

    rep.limit = rep.sqrt_route.intersect(rep.direct_route);
    return rep;
}

Interval v_recurrence_limit(int d, const LatticePoint& v, int N, const LatticeCaps& caps) {
    return v_recurrence_limit_report(d, v, N, caps).limit;
}

Interval gamma_half_integers(int twice_x) {
    if (twice_x < 1) throw InputError("gamma argument must be >= 1/2");
    if (twice_x % 2 == 0) {
        // integer n = twice_x/2: Gamma(n) = (n-1)!
        Interval g(1.0);
        for (int k = 2; k < twice_x / 2; ++k) g *= Interval(static_cast<double>(k));
        return g;
    }
    // half-integer: Gamma(1/2 + k) = sqrt(pi) * prod_{j<k} (1/2 + j)
    Interval g = sqrt(Interval::pi());
    for (int j = 0; j < (twice_x - 1) / 2; ++j)
        g *= (Interval(0.5) + Interval(static_cast<double>(j)));
    return g;
}

std::vector<AsymptoticRow> asymptotic_compare(int d, const std::vector<LatticePoint>& targets,
                                              int N, const LatticeCaps& caps) {
    if (d < 3) throw InputError("asymptotic_compare requires d >= 3");
    std::vector<AsymptoticRow> rows;
    for (const auto& v : targets) {
        AsymptoticRow row;
        row.v = v;
        row.limit = v_recurrence_limit(d, v, N, caps);
        Interval num = (Interval(static_cast<double>(d)) / 2.0) * gamma_half_integers(d - 2);
        Interval formula = num / pow_rational(Interval::pi(), d, 2);
        formula /= pow_rational(Interval(v.l2_squared() <= 0 ? 1.0
                                                             : static_cast<double>(v.l2_squared())),
                                d - 2, 2);
        row.gamma_formula = formula.mid();
        row.ratio = row.limit.mid() / row.gamma_formula;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace polyawalk
