#pragma once

#include <complex>
#include <vector>

namespace polyawalk {

// In-place iterative radix-2 FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// Truncated product of two real coefficient arrays (first `keep` entries).
std::vector<double> convolve_truncated(const std::vector<double>& a, const std::vector<double>& b,
                                       size_t keep);

// Reciprocal of a power series with a[0] != 0, to length n, by Newton
// iteration R_{2L} = R_L (2 - A R_L) with FFT products.
std::vector<double> newton_reciprocal(const std::vector<double>& a, size_t n);

}  // namespace polyawalk
