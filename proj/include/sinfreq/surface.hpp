#pragma once

#include <array>
#include <complex>
#include <vector>

#include "sinfreq/interp.hpp"

namespace sinfreq {

/// Complex sample frame with the symmetric start-index convention
/// m1 = -ceil(M/2) (and n1 = -ceil(N/2) in 2-D). data[i] is the sample at
/// instant m1+i; 2-D data is row-major with the row index as first dimension.
struct SignalFrame {
    std::vector<cplx> data;
    int dims = 1;
    int M = 0;
    int N = 1;
    int m1 = 0;
    int n1 = 0;

    static SignalFrame make_1d(std::vector<cplx> samples);
    static SignalFrame make_2d(std::vector<cplx> samples, int M, int N);

    const cplx& at(int i) const { return data[static_cast<size_t>(i)]; }
    const cplx& at(int i, int j) const { return data[static_cast<size_t>(i) * N + j]; }
};

/// FFT-size admission rule. factor_two (K >= 2M) guarantees the coarse peak
/// lands within one cell of the cost maximum; nyquist (K > M) only keeps the
/// correlation itself above its Nyquist rate and matches the sub-2x padding
/// used on the long axis of the reference 1024x1024 instance.
enum class Padding { factor_two, nyquist };

struct CostSurface1D {
    std::vector<cplx> c;  // c[k] at frequency k/K
    int K = 0;
    double delta_f = 0.0;
    int m1 = 0;
    int M = 0;

    const cplx& at(int k) const { return c[static_cast<size_t>(k)]; }
};

struct CostSurface2D {
    std::vector<cplx> c;  // row-major K1 x K2
    int K1 = 0, K2 = 0;
    double delta_f1 = 0.0, delta_f2 = 0.0;
    int m1 = 0, n1 = 0;
    int M = 0, N = 0;

    const cplx& at(int k1, int k2) const { return c[static_cast<size_t>(k1) * K2 + k2]; }
};

/// Zero-padded correlation samples c(k df) = sum_m z(m) e^{-j2pi k m df},
/// df = 1/K, m = m1..m1+M-1. Computed as a length-K FFT with a per-bin phase
/// twist for the symmetric start index.
CostSurface1D correlation_surface_1d(const SignalFrame& frame, int K,
                                     Padding padding = Padding::factor_two);

CostSurface2D correlation_surface_2d(const SignalFrame& frame, int K1, int K2,
                                     Padding padding = Padding::factor_two);

/// Grid index k mapped to a frequency in [-1/2, 1/2[.
double map_frequency(int k, int K);

/// Index of the strictly largest |c|^2 sample. Ties break toward the lowest
/// mapped frequency (lexicographic on (f1, f2) in 2-D). Throws on an all-zero
/// surface.
int coarse_peak(const CostSurface1D& s);
std::array<int, 2> coarse_peak(const CostSurface2D& s);

/// Direct O(M) / O(MN) evaluation of the correlation at an arbitrary
/// frequency (incremental phasors).
cplx direct_correlation(const SignalFrame& frame, double f);
cplx direct_correlation(const SignalFrame& frame, double f1, double f2);

}  // namespace sinfreq
