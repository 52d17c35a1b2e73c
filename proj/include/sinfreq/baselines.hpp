#pragma once

#include "sinfreq/estimator.hpp"

namespace sinfreq {

struct SubspaceVectors {
    std::vector<cplx> u1;  // dominant left singular vector, length M, unit norm
    std::vector<cplx> v1;  // dominant right singular vector, length N, unit norm
    double sigma1 = 0.0;
    int iters = 0;
};

struct CrbReport {
    double var_f1 = 0.0;
    double var_f2 = 0.0;
    double snr_linear = 0.0;
    int M = 0;
    int N = 0;
};

/// Dominant singular triple of a (row-major M x N) complex matrix by
/// alternating power iteration, v <- Z^H u / ||.||, u <- Z v / ||.||, started
/// from the normalized all-ones vector. Stops when successive sigma estimates
/// agree to tol (relative). Throws on a zero matrix or non-convergence.
SubspaceVectors dominant_svd(const std::vector<cplx>& Z, int M, int N,
                             double tol = 1e-11, int max_iters = 5000);

/// Rank-1 subspace baseline: 1-D ML estimates run on the dominant left and
/// right singular vectors of the data matrix. The right vector is conjugated
/// before the search so the noise-free case recovers f2 itself (the power
/// iteration uses the Hermitian-transpose convention).
Estimate subspace_estimate(const SignalFrame& frame, const NewtonConfig& config = {});

/// Cramer-Rao bound for the two frequencies of a unit-amplitude complex
/// exponential in white noise, nuisance complex amplitude included:
///   var_f1 = 6 / ((2pi)^2 snr N M (M^2-1)),  var_f2 symmetric.
CrbReport crb(int M, int N, double snr_linear);

/// 1-D bound, var_f = 6 / ((2pi)^2 snr M (M^2-1)).
double crb_1d(int M, double snr_linear);

}  // namespace sinfreq
