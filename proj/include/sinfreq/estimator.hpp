#pragma once

#include <array>

#include "sinfreq/surface.hpp"

namespace sinfreq {

struct NewtonConfig {
    int P = 8;            // 1-D truncation index
    int P1 = 8, P2 = 8;   // per-axis truncation indices (2-D)
    int max_iters = 12;
    double grad_tol = 1e-10;   // stop when the step falls below grad_tol * delta_f
    double step_clamp = 1.0;   // max step and max excursion, in grid cells
};

struct Estimate {
    int dims = 1;
    std::array<double, 2> freqs{0.0, 0.0};  // mapped to [-1/2, 1/2[
    double cost = 0.0;                      // |c~|^2 at the estimate
    int iters = 0;
    bool converged = false;
    std::array<int, 2> coarse_index{0, 0};
};

struct CostEval1D {
    double L;   // |c~(f)|^2
    double d1;  // (2/M) Re{c~' c~*}
    double d2;  // (2/M) (Re{c~'' c~*} + |c~'|^2)
};

struct CostEval2D {
    double L;
    std::array<double, 2> grad;
    std::array<std::array<double, 2>, 2> hess;
};

/// Interpolated cost and derivatives at frequency f. The kernel must have
/// been built with T = surface.delta_f and B = surface.M. Sample gathering
/// wraps modulo K (the correlation is 1-periodic in f).
CostEval1D interp_cost_1d(const CostSurface1D& surface, const BaryKernel& kernel, double f);

CostEval2D interp_cost_2d(const CostSurface2D& surface, const BaryKernel& kernel1,
                          const BaryKernel& kernel2, double f1, double f2);

/// Newton refinement of the coarse FFT peak on the interpolated cost,
/// f <- f - L~'/L~'' with per-step and total-excursion clamping. A result
/// that did not meet the step tolerance (or hit a degenerate Hessian) is
/// returned with converged = false, never silently.
Estimate refine_1d(const CostSurface1D& surface, const NewtonConfig& config = {});
Estimate refine_2d(const CostSurface2D& surface, const NewtonConfig& config = {});

}  // namespace sinfreq
