#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sinfreq {

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

/// Default zero-padded FFT size for a length-M frame: the power of two nearest
/// to 2M in log scale. This is >= 2M whenever 2M sits in the upper half of a
/// power-of-two octave and otherwise one octave lower (still > sqrt(2)*M).
std::size_t default_fft_size(std::size_t M);

/// In-place forward radix-2 DFT, X[k] = sum_n x[n] e^{-j2pi kn/N}.
/// N = a.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

}  // namespace sinfreq
