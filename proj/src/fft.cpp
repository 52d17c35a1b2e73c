#include "sinfreq/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace sinfreq {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t k = 1;
    while (k < n) k <<= 1;
    return k;
}

std::size_t default_fft_size(std::size_t M) {
    const std::size_t target = 2 * M;
    const std::size_t hi = next_pow2(target);
    if (hi == target) return hi;
    const std::size_t lo = hi / 2;
    // nearest in log scale: pick lo iff target^2 < lo*hi
    return (target * target < lo * hi) ? lo : hi;
}

void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_inplace: size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // twiddles w[j] = e^{-j2pi j/n}, j < n/2
    std::vector<std::complex<double>> w(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double ph = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        w[j] = {std::cos(ph), std::sin(ph)};
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> t = a[i + k + len / 2] * w[k * stride];
                a[i + k + len / 2] = a[i + k] - t;
                a[i + k] += t;
            }
        }
    }
}

}  // namespace sinfreq
