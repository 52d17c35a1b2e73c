#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sinfreq {

using cplx = std::complex<double>;

/// Modulo-T split of a query point: t = n*T + u with |u| <= T/2.
struct ModuloDecomposition {
    long long n;
    double u;
};

ModuloDecomposition modulo_decompose(double t, double T);

/// Barycentric interpolation weights for a band-limited signal sampled at
/// period T with two-sided bandwidth B (Nyquist: B*T < 1). The stencil spans
/// 2P+1 samples centred on the query point. Weights are max-normalized;
/// the barycentric quotient is homogeneous in them, so any common scale is
/// legal. Immutable after construction, safe to share across threads.
struct BaryKernel {
    int P = 0;
    double T = 0.0;
    double B = 0.0;
    std::vector<double> weights;  // index p+P for p = -P..P

    double weight(int p) const { return weights[static_cast<size_t>(p + P)]; }
};

struct InterpValue {
    cplx value;
    cplx d1;  // first derivative w.r.t. the interpolation offset
    cplx d2;  // second derivative
};

/// Build the 2P+1 weights w_p. Rejects B*T >= 1, P < 1 and non-finite input.
BaryKernel make_kernel(int P, double T, double B);

/// Evaluate the interpolant and its first two derivatives at offset u,
/// |u| <= T/2, from the surrounding samples. samples[i] holds s((n-p)T)
/// for p = -P..P (i = p+P). Within a node tolerance of T*1e-9 the evaluation
/// switches to the differentiation-matrix limit form; at u = 0 the sample
/// s(nT) is returned bit-for-bit.
InterpValue interpolate(const BaryKernel& kernel, std::span<const cplx> samples, double u);

/// Worst-case interpolation error of a unit exponential per frequency:
/// for each f in f_grid (within [-B/2, B/2]) returns
/// max over u_grid (within [-T/2, T/2]) of |e^{j2pi f u} - interpolant|.
std::vector<double> error_spectrum(const BaryKernel& kernel,
                                   std::span<const double> f_grid,
                                   std::span<const double> u_grid);

}  // namespace sinfreq
