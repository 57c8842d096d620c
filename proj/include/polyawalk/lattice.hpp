#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyawalk/errors.hpp"
#include "polyawalk/rational.hpp"
#include "polyawalk/series.hpp"

namespace polyawalk {

inline constexpr int kMaxDim = 4;

// Vertex of the nearest-neighbor graph on Z^d, d <= 4.
struct LatticePoint {
    int dim = 1;
    std::array<int, kMaxDim> x{};

    LatticePoint() = default;
    LatticePoint(int d, std::array<int, kMaxDim> coords) : dim(d), x(coords) {
        if (d < 1 || d > kMaxDim) throw InputError("lattice dimension must be in [1,4]");
    }
    static LatticePoint origin(int d) { return LatticePoint(d, {}); }
    static LatticePoint unit(int d, int axis) {
        LatticePoint p = origin(d);
        p.x[static_cast<size_t>(axis)] = 1;
        return p;
    }

    bool is_origin() const {
        for (int i = 0; i < dim; ++i)
            if (x[static_cast<size_t>(i)] != 0) return false;
        return true;
    }
    long l1() const {
        long s = 0;
        for (int i = 0; i < dim; ++i) s += std::abs(x[static_cast<size_t>(i)]);
        return s;
    }
    long l2_squared() const {
        long s = 0;
        for (int i = 0; i < dim; ++i) {
            long c = x[static_cast<size_t>(i)];
            s += c * c;
        }
        return s;
    }
    double l2() const { return std::sqrt(static_cast<double>(l2_squared())); }

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.dim == b.dim && a.x == b.x;
    }
    friend bool operator!=(const LatticePoint& a, const LatticePoint& b) { return !(a == b); }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < dim; ++i) {
            if (i) s += ",";
            s += std::to_string(x[static_cast<size_t>(i)]);
        }
        return s + ")";
    }
};

// Resource caps for the dense DP. The ball of L1-radius N in Z^d has
// Theta(N^d) points; allocation is refused up front when the padded box
// exceeds the budget.
struct LatticeCaps {
    size_t memory_budget_bytes = size_t(2) << 30;  // 2 GiB
    bool override_ack = false;                     // --i-know
};

// Dense table of endpoint counts: for each point p with |p|_1 <= N and each
// n <= N, the number of 0-walks of length n ending at p (restricted to walks
// whose positions at steps >= 1 avoid `forbidden`).
class EndpointTable {
  public:
    EndpointTable(int d, int N, std::vector<LatticePoint> forbidden, const LatticeCaps& caps);

    int dim() const { return d_; }
    int length() const { return N_; }
    // Count of admissible walks of length n ending at p (0 if |p|_1 > n).
    const BigInt& count(int n, const LatticePoint& p) const;
    // The full sequence (n = 0..N) at one point.
    std::vector<BigInt> sequence_at(const LatticePoint& p) const;
    // b_n-style value at the origin.
    std::vector<BigInt> origin_sequence() const { return sequence_at(LatticePoint::origin(d_)); }
    // Sum over all endpoints at length n (= d_n for empty forbidden set).
    BigInt total(int n) const;
    // All points with a nonzero count at length n.
    std::vector<LatticePoint> support(int n) const;

  private:
    size_t index_of(const LatticePoint& p) const;
    LatticePoint point_of(size_t idx) const;

    int d_, N_, side_;
    std::vector<size_t> stride_;
    std::vector<std::vector<BigInt>> layers_;  // layers_[n][cell]
    std::vector<uint16_t> l1_;                 // |p|_1 per cell, 0xffff outside ball
    static const BigInt zero_;
};

// endpoint_counts / avoid_counts of the module contract.
EndpointTable endpoint_counts(int d, int N, const LatticeCaps& caps = {});
EndpointTable avoid_counts(int d, const std::vector<LatticePoint>& forbidden, int N,
                           const LatticeCaps& caps = {});

// Exact counting sequences for a lattice instance (d, target v).
struct WalkCountTable {
    int d = 1;
    LatticePoint v;
    int N = 0;
    std::vector<BigInt> a, b, c, d_seq;
    // Primed family; empty when v = 0.
    std::vector<BigInt> a_prime, b_prime, c_prime, c_dprime;

    bool has_primed() const { return !a_prime.empty(); }
};

WalkCountTable walk_table(int d, const LatticePoint& v, int N, const LatticeCaps& caps = {});

// Closed-walk counts b_n for any d in [1,4] via the multinomial closed form
// b_{2m} = C(2m,m) * S_d(m), S_d(m) = sum_j C(m,j)^2 S_{d-1}(j). O(d N^2)
// big-integer work, no DP ball; the large-N route behind B(1) partial sums.
std::vector<BigInt> closed_return_counts(int d, int N);

// Integer first-return deconvolution: c_n = b_n - sum_{j=1}^{n-1} c_j b_{n-j}
// (the denominator-scaled form of C = 1 - 1/B; d_n multiplicativity makes the
// integer recurrence exact).
std::vector<BigInt> first_return_from_b(const std::vector<BigInt>& b);

// Walk enumeration oracle. A walk is the full vertex tuple <u_0,...,u_n>.
using WalkVisitor = std::function<void(const std::vector<LatticePoint>&)>;
void enumerate_walks(int d, int n, const WalkVisitor& visit);

using WalkPredicate = std::function<bool(const std::vector<LatticePoint>&)>;
BigInt brute_force_count(int d, int n, const WalkPredicate& predicate);

// Common predicates.
WalkPredicate pred_all();
WalkPredicate pred_recurrent();
WalkPredicate pred_ends_at(const LatticePoint& p);
WalkPredicate pred_visits(const LatticePoint& v);                 // at some step i >= 1
WalkPredicate pred_first_return_at_end();                         // ends at 0, inner avoids 0
WalkPredicate pred_ends_at_avoiding(const LatticePoint& p,
                                    const std::vector<LatticePoint>& inner_avoid);
WalkPredicate pred_avoids(const LatticePoint& p);                 // at every step i >= 1

// Brute-force replica of all eight walk_table sequences for n <= N.
WalkCountTable brute_force_table(int d, const LatticePoint& v, int N);

// Normalized series b_n/d_n etc. as exact rationals.
TruncatedSeries<Rational> normalize_counts(const std::vector<BigInt>& counts, int two_d);

}  // namespace polyawalk
