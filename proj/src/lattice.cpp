#include "polyawalk/lattice.hpp"

#include <algorithm>
#include <cstring>

namespace polyawalk {

const BigInt EndpointTable::zero_ = 0;

namespace {

// Padded box side: coordinates in [-(N+1), N+1] so every neighbor write from
// a ball cell stays in range.
int box_side(int N) { return 2 * (N + 1) + 1; }

size_t box_cells(int d, int N) {
    size_t cells = 1;
    for (int i = 0; i < d; ++i) {
        size_t next = cells * static_cast<size_t>(box_side(N));
        if (next / static_cast<size_t>(box_side(N)) != cells)
            throw ResourceError("lattice box size overflows");
        cells = next;
    }
    return cells;
}

void check_budget(size_t bytes, const LatticeCaps& caps, const char* what) {
    if (bytes > caps.memory_budget_bytes && !caps.override_ack)
        throw ResourceError(std::string(what) + " estimated " + std::to_string(bytes) +
                            " bytes, over budget " + std::to_string(caps.memory_budget_bytes) +
                            " (override with --i-know)");
}

// Streaming DP over the padded box: holds only the current layer. Walk
// positions at steps >= 1 avoid `blocked` cells; the start is exempt.
class LatticeStepper {
  public:
    LatticeStepper(int d, int N, const std::vector<LatticePoint>& forbidden,
                   const LatticeCaps& caps)
        : d_(d), N_(N), side_(box_side(N)) {
        if (d < 1 || d > kMaxDim) throw InputError("lattice dimension must be in [1,4]");
        if (N < 0) throw InputError("walk length must be >= 0");
        cells_ = box_cells(d, N);
        check_budget(cells_ * (2 * 64 + 2), caps, "lattice DP");
        stride_.assign(static_cast<size_t>(d), 1);
        for (int i = 1; i < d; ++i)
            stride_[static_cast<size_t>(i)] =
                stride_[static_cast<size_t>(i - 1)] * static_cast<size_t>(side_);
        l1_.resize(cells_);
        for (size_t idx = 0; idx < cells_; ++idx) {
            size_t rest = idx;
            long s = 0;
            for (int i = 0; i < d; ++i) {
                s += std::abs(static_cast<long>(rest % static_cast<size_t>(side_)) - (N + 1));
                rest /= static_cast<size_t>(side_);
            }
            l1_[idx] = static_cast<uint32_t>(s);
        }
        blocked_.assign(cells_, 0);
        for (const auto& f : forbidden) {
            if (f.dim != d) throw InputError("forbidden point dimension mismatch");
            if (f.l1() <= N) blocked_[index_of(f)] = 1;
        }
        cur_.resize(cells_);
        next_.resize(cells_);
        cur_[index_of(LatticePoint::origin(d))] = 1;
    }

    int t() const { return t_; }

    void step() {
        if (t_ >= N_) throw InputError("stepper advanced past N");
        int tn = t_ + 1;
        for (size_t idx = 0; idx < cells_; ++idx)
            if (l1_[idx] <= static_cast<uint32_t>(tn)) next_[idx] = 0;
        for (size_t idx = 0; idx < cells_; ++idx) {
            if (l1_[idx] > static_cast<uint32_t>(t_) || cur_[idx] == 0) continue;
            for (int i = 0; i < d_; ++i) {
                next_[idx + stride_[static_cast<size_t>(i)]] += cur_[idx];
                next_[idx - stride_[static_cast<size_t>(i)]] += cur_[idx];
            }
        }
        for (size_t idx = 0; idx < cells_; ++idx)
            if (blocked_[idx] && l1_[idx] <= static_cast<uint32_t>(tn)) next_[idx] = 0;
        std::swap(cur_, next_);
        t_ = tn;
    }

    const BigInt& at(const LatticePoint& p) const {
        if (p.l1() > N_) return zero_;
        return cur_[index_of(p)];
    }

    BigInt total() const {
        BigInt s = 0;
        for (size_t idx = 0; idx < cells_; ++idx)
            if (l1_[idx] <= static_cast<uint32_t>(t_) && cur_[idx] != 0) s += cur_[idx];
        return s;
    }

    template <class F>
    void for_each_nonzero(F f) const {
        for (size_t idx = 0; idx < cells_; ++idx)
            if (l1_[idx] <= static_cast<uint32_t>(t_) && cur_[idx] != 0) f(point_of(idx), cur_[idx]);
    }

    size_t index_of(const LatticePoint& p) const {
        size_t idx = 0;
        for (int i = 0; i < d_; ++i)
            idx += static_cast<size_t>(p.x[static_cast<size_t>(i)] + N_ + 1) *
                   stride_[static_cast<size_t>(i)];
        return idx;
    }

    LatticePoint point_of(size_t idx) const {
        LatticePoint p = LatticePoint::origin(d_);
        for (int i = 0; i < d_; ++i) {
            p.x[static_cast<size_t>(i)] =
                static_cast<int>(idx % static_cast<size_t>(side_)) - (N_ + 1);
            idx /= static_cast<size_t>(side_);
        }
        return p;
    }

  private:
    static const BigInt zero_;
    int d_, N_, side_;
    int t_ = 0;
    size_t cells_ = 0;
    std::vector<size_t> stride_;
    std::vector<uint32_t> l1_;
    std::vector<char> blocked_;
    std::vector<BigInt> cur_, next_;
};

const BigInt LatticeStepper::zero_ = 0;

}  // namespace

EndpointTable::EndpointTable(int d, int N, std::vector<LatticePoint> forbidden,
                             const LatticeCaps& caps)
    : d_(d), N_(N), side_(box_side(N)) {
    size_t cells = box_cells(d, N);
    // Full table keeps every layer.
    check_budget(cells * (static_cast<size_t>(N) + 1) * 64, caps, "endpoint table");
    LatticeStepper dp(d, N, forbidden, caps);
    stride_.assign(static_cast<size_t>(d), 1);
    for (int i = 1; i < d; ++i)
        stride_[static_cast<size_t>(i)] =
            stride_[static_cast<size_t>(i - 1)] * static_cast<size_t>(side_);
    l1_.resize(cells);
    for (size_t idx = 0; idx < cells; ++idx) {
        size_t rest = idx;
        long s = 0;
        for (int i = 0; i < d; ++i) {
            s += std::abs(static_cast<long>(rest % static_cast<size_t>(side_)) - (N + 1));
            rest /= static_cast<size_t>(side_);
        }
        l1_[idx] = static_cast<uint32_t>(s);
    }
    layers_.reserve(static_cast<size_t>(N) + 1);
    for (int t = 0;; ++t) {
        std::vector<BigInt> snap(cells);
        dp.for_each_nonzero([&](const LatticePoint& p, const BigInt& v) { snap[index_of(p)] = v; });
        layers_.push_back(std::move(snap));
        if (t == N) break;
        dp.step();
    }
}

size_t EndpointTable::index_of(const LatticePoint& p) const {
    size_t idx = 0;
    for (int i = 0; i < d_; ++i)
        idx += static_cast<size_t>(p.x[static_cast<size_t>(i)] + N_ + 1) *
               stride_[static_cast<size_t>(i)];
    return idx;
}

LatticePoint EndpointTable::point_of(size_t idx) const {
    LatticePoint p = LatticePoint::origin(d_);
    for (int i = 0; i < d_; ++i) {
        p.x[static_cast<size_t>(i)] = static_cast<int>(idx % static_cast<size_t>(side_)) - (N_ + 1);
        idx /= static_cast<size_t>(side_);
    }
    return p;
}

const BigInt& EndpointTable::count(int n, const LatticePoint& p) const {
    if (n < 0 || n > N_) throw InputError("length out of range");
    if (p.dim != d_) throw InputError("point dimension mismatch");
    if (p.l1() > N_) return zero_;
    return layers_[static_cast<size_t>(n)][index_of(p)];
}

std::vector<BigInt> EndpointTable::sequence_at(const LatticePoint& p) const {
    std::vector<BigInt> seq(static_cast<size_t>(N_) + 1);
    for (int n = 0; n <= N_; ++n) seq[static_cast<size_t>(n)] = count(n, p);
    return seq;
}

BigInt EndpointTable::total(int n) const {
    if (n < 0 || n > N_) throw InputError("length out of range");
    BigInt s = 0;
    for (const auto& v : layers_[static_cast<size_t>(n)]) s += v;
    return s;
}

std::vector<LatticePoint> EndpointTable::support(int n) const {
    if (n < 0 || n > N_) throw InputError("length out of range");
    std::vector<LatticePoint> pts;
    const auto& layer = layers_[static_cast<size_t>(n)];
    for (size_t idx = 0; idx < layer.size(); ++idx)
        if (layer[idx] != 0) pts.push_back(point_of(idx));
    return pts;
}

EndpointTable endpoint_counts(int d, int N, const LatticeCaps& caps) {
    return EndpointTable(d, N, {}, caps);
}

EndpointTable avoid_counts(int d, const std::vector<LatticePoint>& forbidden, int N,
                           const LatticeCaps& caps) {
    return EndpointTable(d, N, forbidden, caps);
}

std::vector<BigInt> first_return_from_b(const std::vector<BigInt>& b) {
    if (b.empty() || b[0] != 1) throw InputError("first_return_from_b: b0 must equal 1");
    size_t n = b.size();
    std::vector<BigInt> c(n);
    c[0] = 0;
    for (size_t i = 1; i < n; ++i) {
        BigInt acc = b[i];
        for (size_t j = 1; j < i; ++j) acc -= c[j] * b[i - j];
        c[i] = acc;
    }
    return c;
}

std::vector<BigInt> closed_return_counts(int d, int N) {
    if (d < 1 || d > kMaxDim) throw InputError("lattice dimension must be in [1,4]");
    if (N < 0) throw InputError("walk length must be >= 0");
    size_t M = static_cast<size_t>(N) / 2;
    std::vector<BigInt> S(M + 1, 1);  // S_1(m) = 1
    std::vector<BigInt> next(M + 1);
    for (int layer = 2; layer <= d; ++layer) {
        for (size_t m = 0; m <= M; ++m) {
            BigInt acc = 0;
            BigInt binom = 1;  // C(m, j), updated in place
            for (size_t j = 0; j <= m; ++j) {
                acc += binom * binom * S[j];
                if (j < m) {
                    binom *= static_cast<unsigned long>(m - j);
                    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                                    static_cast<unsigned long>(j + 1));
                }
            }
            next[m] = acc;
        }
        std::swap(S, next);
    }
    std::vector<BigInt> b(static_cast<size_t>(N) + 1, 0);
    BigInt central = 1;  // C(2m, m)
    for (size_t m = 0; m <= M; ++m) {
        b[2 * m] = central * S[m];
        central *= static_cast<unsigned long>(2 * m + 1) * 2;
        mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(),
                        static_cast<unsigned long>(m + 1));
    }
    return b;
}

namespace {

void enumerate_rec(int d, int n, std::vector<LatticePoint>& path, const WalkVisitor& visit) {
    if (static_cast<int>(path.size()) == n + 1) {
        visit(path);
        return;
    }
    LatticePoint cur = path.back();
    for (int i = 0; i < d; ++i) {
        for (int s : {1, -1}) {
            LatticePoint nxt = cur;
            nxt.x[static_cast<size_t>(i)] += s;
            path.push_back(nxt);
            enumerate_rec(d, n, path, visit);
            path.pop_back();
        }
    }
}

}  // namespace

void enumerate_walks(int d, int n, const WalkVisitor& visit) {
    if (d < 1 || d > kMaxDim) throw InputError("lattice dimension must be in [1,4]");
    if (n < 0) throw InputError("walk length must be >= 0");
    if (std::pow(2.0 * d, n) > 1e8)
        throw ResourceError("brute force budget (2d)^n <= 1e8 exceeded");
    std::vector<LatticePoint> path{LatticePoint::origin(d)};
    path.reserve(static_cast<size_t>(n) + 1);
    enumerate_rec(d, n, path, visit);
}

BigInt brute_force_count(int d, int n, const WalkPredicate& predicate) {
    BigInt total = 0;
    enumerate_walks(d, n, [&](const std::vector<LatticePoint>& w) {
        if (predicate(w)) total += 1;
    });
    return total;
}

WalkPredicate pred_all() {
    return [](const std::vector<LatticePoint>&) { return true; };
}
WalkPredicate pred_recurrent() {
    return [](const std::vector<LatticePoint>& w) {
        for (size_t i = 1; i < w.size(); ++i)
            if (w[i].is_origin()) return true;
        return false;
    };
}
WalkPredicate pred_ends_at(const LatticePoint& p) {
    return [p](const std::vector<LatticePoint>& w) { return w.back() == p; };
}
WalkPredicate pred_visits(const LatticePoint& v) {
    return [v](const std::vector<LatticePoint>& w) {
        for (size_t i = 1; i < w.size(); ++i)
            if (w[i] == v) return true;
        return false;
    };
}
WalkPredicate pred_first_return_at_end() {
    return [](const std::vector<LatticePoint>& w) {
        if (w.size() < 2 || !w.back().is_origin()) return false;
        for (size_t i = 1; i + 1 < w.size(); ++i)
            if (w[i].is_origin()) return false;
        return true;
    };
}
WalkPredicate pred_ends_at_avoiding(const LatticePoint& p,
                                    const std::vector<LatticePoint>& inner_avoid) {
    return [p, inner_avoid](const std::vector<LatticePoint>& w) {
        if (w.size() < 2 || !(w.back() == p)) return false;
        for (size_t i = 1; i + 1 < w.size(); ++i)
            for (const auto& q : inner_avoid)
                if (w[i] == q) return false;
        return true;
    };
}
WalkPredicate pred_avoids(const LatticePoint& p) {
    return [p](const std::vector<LatticePoint>& w) {
        for (size_t i = 1; i < w.size(); ++i)
            if (w[i] == p) return false;
        return true;
    };
}

WalkCountTable brute_force_table(int d, const LatticePoint& v, int N) {
    WalkCountTable t;
    t.d = d;
    t.v = v;
    t.N = N;
    bool primed = !v.is_origin();
    auto init = [&](std::vector<BigInt>& s) { s.assign(static_cast<size_t>(N) + 1, 0); };
    init(t.a);
    init(t.b);
    init(t.c);
    init(t.d_seq);
    if (primed) {
        init(t.a_prime);
        init(t.b_prime);
        init(t.c_prime);
        init(t.c_dprime);
    }
    for (int n = 0; n <= N; ++n) {
        size_t idx = static_cast<size_t>(n);
        enumerate_walks(d, n, [&](const std::vector<LatticePoint>& w) {
            t.d_seq[idx] += 1;
            bool ends_zero = w.back().is_origin();
            bool visits_zero = false, visits_v = false;
            bool inner_has_zero = false, inner_has_v = false;
            for (size_t i = 1; i < w.size(); ++i) {
                if (w[i].is_origin()) {
                    visits_zero = true;
                    if (i + 1 < w.size()) inner_has_zero = true;
                }
                if (primed && w[i] == v) {
                    visits_v = true;
                    if (i + 1 < w.size()) inner_has_v = true;
                }
            }
            if (visits_zero) t.a[idx] += 1;
            if (ends_zero) t.b[idx] += 1;
            if (n >= 1 && ends_zero && !inner_has_zero) t.c[idx] += 1;
            if (primed) {
                bool ends_v = w.back() == v;
                if (visits_v) t.a_prime[idx] += 1;
                if (ends_zero && !visits_v) t.b_prime[idx] += 1;
                if (n >= 1 && ends_v && !inner_has_v) t.c_prime[idx] += 1;
                if (n >= 1 && ends_v && !inner_has_v && !inner_has_zero) t.c_dprime[idx] += 1;
            }
        });
    }
    return t;
}

TruncatedSeries<Rational> normalize_counts(const std::vector<BigInt>& counts, int two_d) {
    TruncatedSeries<Rational> s(static_cast<int>(counts.size()) - 1);
    BigInt den = 1;
    for (size_t n = 0; n < counts.size(); ++n) {
        Rational q(counts[n], den);
        q.canonicalize();
        s.c[n] = q;
        den *= two_d;
    }
    return s;
}

WalkCountTable walk_table(int d, const LatticePoint& v, int N, const LatticeCaps& caps) {
    if (v.dim != d) throw InputError("target dimension mismatch");
    WalkCountTable t;
    t.d = d;
    t.v = v;
    t.N = N;
    size_t len = static_cast<size_t>(N) + 1;

    t.d_seq.resize(len);
    for (int n = 0; n <= N; ++n) t.d_seq[static_cast<size_t>(n)] = pow_ui(2 * d, n);

    bool primed = !v.is_origin();
    std::vector<BigInt> e_v(len);

    // One streaming pass for b (and e_v when v != 0).
    {
        LatticeStepper dp(d, N, {}, caps);
        t.b.resize(len);
        t.b[0] = dp.at(LatticePoint::origin(d));
        if (primed) e_v[0] = dp.at(v);
        for (int n = 1; n <= N; ++n) {
            dp.step();
            t.b[static_cast<size_t>(n)] = dp.at(LatticePoint::origin(d));
            if (primed) e_v[static_cast<size_t>(n)] = dp.at(v);
        }
    }

    // c via solve_first_return on the normalized series, denominators cleared
    // (integrality is the exactness invariant), cross-checked against the
    // integer renewal recurrence.
    TruncatedSeries<Rational> bhat = normalize_counts(t.b, 2 * d);
    TruncatedSeries<Rational> chat = solve_first_return(bhat);
    t.c.resize(len);
    for (int n = 0; n <= N; ++n) {
        Rational scaled =
            chat.c[static_cast<size_t>(n)] * Rational(t.d_seq[static_cast<size_t>(n)]);
        scaled.canonicalize();
        if (scaled.get_den() != 1)
            throw InvariantError("first-return coefficient c_" + std::to_string(n) +
                                 " failed to clear denominators");
        t.c[static_cast<size_t>(n)] = scaled.get_num();
    }
    if (t.c != first_return_from_b(t.b))
        throw InvariantError("first-return series route disagrees with integer renewal route");

    // a_n = sum_j c_j d_{n-j}.
    t.a.resize(len);
    for (int n = 0; n <= N; ++n) {
        BigInt acc = 0;
        for (int j = 0; j <= n; ++j)
            acc += t.c[static_cast<size_t>(j)] * t.d_seq[static_cast<size_t>(n - j)];
        t.a[static_cast<size_t>(n)] = acc;
    }

    if (primed) {
        std::vector<LatticePoint> nbrs;
        for (int i = 0; i < d; ++i) {
            for (int s : {1, -1}) {
                LatticePoint u = v;
                u.x[static_cast<size_t>(i)] += s;
                nbrs.push_back(u);
            }
        }

        // Avoid-v pass: b', totals for a', and neighbor probes for the c'
        // cross-check.
        t.b_prime.resize(len);
        t.a_prime.resize(len);
        std::vector<BigInt> into_v(len);  // sum over u ~ v of avoidv_{n-1}(u)
        {
            LatticeStepper dp(d, N, {v}, caps);
            t.b_prime[0] = 1;
            t.a_prime[0] = 0;
            for (int n = 1; n <= N; ++n) {
                BigInt probe = 0;
                for (const auto& u : nbrs) probe += dp.at(u);
                into_v[static_cast<size_t>(n)] = probe;  // value at step n-1
                dp.step();
                t.b_prime[static_cast<size_t>(n)] = dp.at(LatticePoint::origin(d));
                t.a_prime[static_cast<size_t>(n)] = t.d_seq[static_cast<size_t>(n)] - dp.total();
            }
        }

        // c' by first-passage deconvolution e_v(n) = sum_j c'_j b_{n-j}
        // (vertex-transitivity), cross-checked by the avoid-v DP.
        t.c_prime.resize(len);
        t.c_prime[0] = 0;
        for (int n = 1; n <= N; ++n) {
            BigInt acc = e_v[static_cast<size_t>(n)];
            for (int j = 1; j < n; ++j)
                acc -= t.c_prime[static_cast<size_t>(j)] * t.b[static_cast<size_t>(n - j)];
            t.c_prime[static_cast<size_t>(n)] = acc;
            if (acc != into_v[static_cast<size_t>(n)])
                throw InvariantError("c'_" + std::to_string(n) +
                                     " deconvolution disagrees with avoid-v DP");
        }

        // a' cross-check: a' = conv(c', d).
        for (int n = 0; n <= N; ++n) {
            BigInt acc = 0;
            for (int j = 0; j <= n; ++j)
                acc += t.c_prime[static_cast<size_t>(j)] * t.d_seq[static_cast<size_t>(n - j)];
            if (acc != t.a_prime[static_cast<size_t>(n)])
                throw InvariantError("a'_" + std::to_string(n) +
                                     " complement route disagrees with convolution route");
        }

        // c'' via the avoid-{0,v} pass (start exempt).
        t.c_dprime.resize(len);
        t.c_dprime[0] = 0;
        {
            LatticeStepper dp(d, N, {LatticePoint::origin(d), v}, caps);
            for (int n = 1; n <= N; ++n) {
                BigInt probe = 0;
                for (const auto& u : nbrs) probe += dp.at(u);
                t.c_dprime[static_cast<size_t>(n)] = probe;
                dp.step();
            }
        }
    }
    return t;
}

}  // namespace polyawalk
