#include "sinfreq/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sinfreq {

namespace {

double wrap_half(double f) {
    double w = std::fmod(f + 0.5, 1.0);
    if (w < 0.0) w += 1.0;
    return w - 0.5;
}

void check_kernel(const BaryKernel& k, double delta_f, int bandwidth, const char* where) {
    if (std::abs(k.T - delta_f) > 1e-12 * delta_f || std::abs(k.B - bandwidth) > 1e-9)
        throw std::invalid_argument(std::string(where) +
                                    ": kernel must be built with T = delta_f and B = frame length");
}

int wrap_index(long long k, int K) {
    long long m = k % K;
    if (m < 0) m += K;
    return static_cast<int>(m);
}

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Gather the 2P+1 surface samples around f's grid cell and interpolate.
// samples[p+P] = c((k-p) mod K) per the kernel's input convention.
InterpValue interp_correlation_1d(const CostSurface1D& s, const BaryKernel& kern, double f) {
    const int P = kern.P;
    const auto [k, gamma] = modulo_decompose(f, s.delta_f);
    std::vector<cplx> samples(static_cast<size_t>(2 * P + 1));
    for (int p = -P; p <= P; ++p)
        samples[static_cast<size_t>(p + P)] = s.at(wrap_index(k - p, s.K));
    return interpolate(kern, samples, gamma);
}

}  // namespace

CostEval1D interp_cost_1d(const CostSurface1D& surface, const BaryKernel& kernel, double f) {
    check_kernel(kernel, surface.delta_f, surface.M, "interp_cost_1d");
    const InterpValue v = interp_correlation_1d(surface, kernel, f);
    const double scale = 2.0 / surface.M;
    CostEval1D e;
    e.L = std::norm(v.value);
    e.d1 = scale * std::real(v.d1 * std::conj(v.value));
    e.d2 = scale * (std::real(v.d2 * std::conj(v.value)) + std::norm(v.d1));
    return e;
}

CostEval2D interp_cost_2d(const CostSurface2D& surface, const BaryKernel& kernel1,
                          const BaryKernel& kernel2, double f1, double f2) {
    check_kernel(kernel1, surface.delta_f1, surface.M, "interp_cost_2d");
    check_kernel(kernel2, surface.delta_f2, surface.N, "interp_cost_2d");
    const int P1 = kernel1.P;
    const int P2 = kernel2.P;
    const auto [k1, g1] = modulo_decompose(f1, surface.delta_f1);
    const auto [k2, g2] = modulo_decompose(f2, surface.delta_f2);

    // Separable tensor-product form evaluated as nested 1-D interpolation:
    // interpolate each row along axis 2, then the row results along axis 1.
    std::vector<cplx> row(static_cast<size_t>(2 * P2 + 1));
    std::vector<cplx> rv(static_cast<size_t>(2 * P1 + 1));
    std::vector<cplx> rd1(static_cast<size_t>(2 * P1 + 1));
    std::vector<cplx> rd2(static_cast<size_t>(2 * P1 + 1));
    for (int p1 = -P1; p1 <= P1; ++p1) {
        const int i = wrap_index(k1 - p1, surface.K1);
        for (int p2 = -P2; p2 <= P2; ++p2)
            row[static_cast<size_t>(p2 + P2)] = surface.at(i, wrap_index(k2 - p2, surface.K2));
        const InterpValue v = interpolate(kernel2, row, g2);
        rv[static_cast<size_t>(p1 + P1)] = v.value;
        rd1[static_cast<size_t>(p1 + P1)] = v.d1;
        rd2[static_cast<size_t>(p1 + P1)] = v.d2;
    }
    const InterpValue a = interpolate(kernel1, rv, g1);    // c, c_f1, c_f1f1
    const InterpValue b = interpolate(kernel1, rd1, g1);   // c_f2, c_f1f2
    const InterpValue cc = interpolate(kernel1, rd2, g1);  // c_f2f2

    const cplx c = a.value;
    const cplx c1 = a.d1, c2 = b.value;
    const cplx c11 = a.d2, c12 = b.d1, c22 = cc.value;
    const double scale = 2.0 / (static_cast<double>(surface.M) * surface.N);

    CostEval2D e;
    e.L = std::norm(c);
    e.grad = {scale * std::real(c1 * std::conj(c)), scale * std::real(c2 * std::conj(c))};
    const double h11 = scale * (std::real(c11 * std::conj(c)) + std::norm(c1));
    const double h22 = scale * (std::real(c22 * std::conj(c)) + std::norm(c2));
    const double h12 = scale * (std::real(c12 * std::conj(c)) + std::real(c1 * std::conj(c2)));
    e.hess = {{{h11, h12}, {h12, h22}}};
    return e;
}

Estimate refine_1d(const CostSurface1D& surface, const NewtonConfig& config) {
    if (config.max_iters < 1 || config.grad_tol <= 0.0)
        throw std::invalid_argument("refine_1d: invalid Newton configuration");
    const double df = surface.delta_f;
    const BaryKernel kern = make_kernel(config.P, df, surface.M);
    const int k0 = coarse_peak(surface);
    const double f_start = k0 * df;
    const double reach = config.step_clamp * df;

    double f = f_start;
    Estimate est;
    est.dims = 1;
    est.coarse_index = {k0, 0};
    for (int r = 1; r <= config.max_iters; ++r) {
        const CostEval1D e = interp_cost_1d(surface, kern, f);
        if (!std::isfinite(e.d1) || !std::isfinite(e.d2) || e.d2 == 0.0) break;
        double step = -e.d1 / e.d2;
        step = clamp(step, -reach, reach);
        f = clamp(f + step, f_start - reach, f_start + reach);
        est.iters = r;
        if (std::abs(step) < config.grad_tol * df) {
            est.converged = e.d2 < 0.0;
            break;
        }
    }
    est.freqs[0] = wrap_half(f);
    est.cost = interp_cost_1d(surface, kern, f).L;
    return est;
}

Estimate refine_2d(const CostSurface2D& surface, const NewtonConfig& config) {
    if (config.max_iters < 1 || config.grad_tol <= 0.0)
        throw std::invalid_argument("refine_2d: invalid Newton configuration");
    const double df1 = surface.delta_f1;
    const double df2 = surface.delta_f2;
    const BaryKernel k1 = make_kernel(config.P1, df1, surface.M);
    const BaryKernel k2 = make_kernel(config.P2, df2, surface.N);
    const auto peak = coarse_peak(surface);
    const double s1 = peak[0] * df1;
    const double s2 = peak[1] * df2;
    const double reach1 = config.step_clamp * df1;
    const double reach2 = config.step_clamp * df2;

    double f1 = s1, f2 = s2;
    Estimate est;
    est.dims = 2;
    est.coarse_index = peak;
    for (int r = 1; r <= config.max_iters; ++r) {
        const CostEval2D e = interp_cost_2d(surface, k1, k2, f1, f2);
        const double h11 = e.hess[0][0], h12 = e.hess[0][1], h22 = e.hess[1][1];
        const double det = h11 * h22 - h12 * h12;
        const double scale = std::max({std::abs(h11 * h22), h12 * h12, 1e-300});
        if (!std::isfinite(det) || std::abs(det) < 1e-300 * scale) break;
        double st1 = -(h22 * e.grad[0] - h12 * e.grad[1]) / det;
        double st2 = -(h11 * e.grad[1] - h12 * e.grad[0]) / det;
        if (!std::isfinite(st1) || !std::isfinite(st2)) break;
        st1 = clamp(st1, -reach1, reach1);
        st2 = clamp(st2, -reach2, reach2);
        f1 = clamp(f1 + st1, s1 - reach1, s1 + reach1);
        f2 = clamp(f2 + st2, s2 - reach2, s2 + reach2);
        est.iters = r;
        if (std::abs(st1) < config.grad_tol * df1 && std::abs(st2) < config.grad_tol * df2) {
            est.converged = h11 < 0.0 && det > 0.0;  // negative definite
            break;
        }
    }
    est.freqs = {wrap_half(f1), wrap_half(f2)};
    est.cost = interp_cost_2d(surface, k1, k2, f1, f2).L;
    return est;
}

}  // namespace sinfreq
