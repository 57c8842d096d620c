#include "polyawalk/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace polyawalk {

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? -1.0 : 1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

std::vector<double> convolve_truncated(const std::vector<double>& a, const std::vector<double>& b,
                                       size_t keep) {
    size_t need = std::min(keep, a.size() + b.size() - 1);
    size_t sz = 1;
    while (sz < a.size() + b.size()) sz <<= 1;
    std::vector<std::complex<double>> fa(sz), fb(sz);
    for (size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (size_t i = 0; i < sz; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    std::vector<double> out(need);
    for (size_t i = 0; i < need; ++i) out[i] = fa[i].real();
    return out;
}

std::vector<double> newton_reciprocal(const std::vector<double>& a, size_t n) {
    if (a.empty() || a[0] == 0.0) throw std::invalid_argument("reciprocal needs a[0] != 0");
    std::vector<double> r{1.0 / a[0]};
    size_t len = 1;
    while (len < n) {
        len = std::min(2 * len, n);
        std::vector<double> head(a.begin(), a.begin() + static_cast<long>(std::min(len, a.size())));
        std::vector<double> ar = convolve_truncated(head, r, len);
        for (auto& x : ar) x = -x;
        ar[0] += 2.0;
        r = convolve_truncated(r, ar, len);
    }
    return r;
}

}  // namespace polyawalk
