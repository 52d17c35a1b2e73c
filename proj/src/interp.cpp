#include "sinfreq/interp.hpp"

#include <cmath>
#include <stdexcept>

namespace sinfreq {

namespace {

// log(sinh(pi y)/(pi y)) for y >= 0, stable for large y.
double log_sinc_imag(double y) {
    if (y == 0.0) return 0.0;
    const double a = M_PI * y;
    if (a < 30.0) return std::log(std::sinh(a) / a);
    return a - std::log(2.0 * a) + std::log1p(-std::exp(-2.0 * a));
}

}  // namespace

ModuloDecomposition modulo_decompose(double t, double T) {
    const auto n = static_cast<long long>(std::floor(t / T + 0.5));
    return {n, t - static_cast<double>(n) * T};
}

BaryKernel make_kernel(int P, double T, double B) {
    if (P < 1) throw std::invalid_argument("make_kernel: P must be >= 1");
    if (!std::isfinite(T) || T <= 0.0) throw std::invalid_argument("make_kernel: T must be finite and > 0");
    if (!std::isfinite(B) || B < 0.0) throw std::invalid_argument("make_kernel: B must be finite and >= 0");
    const double BT = B * T;
    if (BT >= 1.0) throw std::invalid_argument("make_kernel: Nyquist condition B*T < 1 violated");

    // w(pT) = Gamma(p+P+1) Gamma(-p+P+1) g(pT) / L'(pT) with
    // L'(pT) = T^{2P} (-1)^{P-p} (P+p)! (P-p)!, so the factorials cancel and
    // w_p = (-1)^{P-p} g(pT) / T^{2P}. The common T^{2P} is dropped. The pulse
    // ratio g(pT) = sinc(j a sqrt((P+1)^2 - p^2)) / sinc(j a (P+1)), a = 1-BT,
    // is kept in log space so large P cannot overflow sinh.
    const double a = 1.0 - BT;
    const int n = 2 * P + 1;
    std::vector<double> logmag(static_cast<size_t>(n));
    const double lg_ref = log_sinc_imag(a * (P + 1));
    double lg_max = -HUGE_VAL;
    for (int p = -P; p <= P; ++p) {
        const double y = a * std::sqrt(static_cast<double>(P + 1) * (P + 1) - static_cast<double>(p) * p);
        const double lg = log_sinc_imag(y) - lg_ref;
        logmag[static_cast<size_t>(p + P)] = lg;
        lg_max = std::max(lg_max, lg);
    }
    BaryKernel k;
    k.P = P;
    k.T = T;
    k.B = B;
    k.weights.resize(static_cast<size_t>(n));
    for (int p = -P; p <= P; ++p) {
        const double mag = std::exp(logmag[static_cast<size_t>(p + P)] - lg_max);
        k.weights[static_cast<size_t>(p + P)] = ((P - p) % 2 == 0) ? mag : -mag;
    }
    return k;
}

InterpValue interpolate(const BaryKernel& kernel, std::span<const cplx> samples, double u) {
    const int P = kernel.P;
    const double T = kernel.T;
    const size_t n = static_cast<size_t>(2 * P + 1);
    if (samples.size() != n)
        throw std::invalid_argument("interpolate: samples must have length 2P+1");
    if (!std::isfinite(u) || std::abs(u) > T / 2.0)
        throw std::invalid_argument("interpolate: |u| must be <= T/2");

    // Node values in ascending node order: v_j = s((n+j)T) = samples[P-j].
    const auto v = [&](int j) -> const cplx& { return samples[static_cast<size_t>(P - j)]; };
    const auto w = [&](int j) { return kernel.weight(j); };

    // Node-coincidence path: the raw quotient loses precision near a pole, and
    // Newton's first iterate sits exactly on a node, so this path is mandatory.
    const double eta = T * 1e-9;
    int jq = P + 1;
    for (int j = -P; j <= P; ++j) {
        if (std::abs(u - j * T) < eta) { jq = j; break; }
    }
    if (jq <= P) {
        // Differentiation-matrix rows at node jq:
        //   D[k]  = (w_k/w_jq)/(jq*T - k*T),  D[jq]  = -sum_k D[k]
        //   D2[k] = 2 D[k] (D[jq] - 1/(jq*T - k*T)),  D2[jq] = -sum_k D2[k]
        double d_diag = 0.0;
        cplx d1_off{0.0, 0.0};
        std::vector<double> drow(n, 0.0);
        for (int j = -P; j <= P; ++j) {
            if (j == jq) continue;
            const double d = (w(j) / w(jq)) / ((jq - j) * T);
            drow[static_cast<size_t>(j + P)] = d;
            d_diag -= d;
            d1_off += d * v(j);
        }
        cplx d1 = d1_off + d_diag * v(jq);
        double d2_diag = 0.0;
        cplx d2_off{0.0, 0.0};
        for (int j = -P; j <= P; ++j) {
            if (j == jq) continue;
            const double d2jk = 2.0 * drow[static_cast<size_t>(j + P)] * (d_diag - 1.0 / ((jq - j) * T));
            d2_diag -= d2jk;
            d2_off += d2jk * v(j);
        }
        cplx d2 = d2_off + d2_diag * v(jq);
        return {v(jq), d1, d2};
    }

    // Regular path: quotient-rule derivatives of N(u)/D(u) with
    // N = sum v_j w_j/(u-jT), D = sum w_j/(u-jT).
    cplx N{0.0, 0.0}, N1{0.0, 0.0}, N2{0.0, 0.0};
    double D = 0.0, D1 = 0.0, D2 = 0.0;
    for (int j = -P; j <= P; ++j) {
        const double d = u - j * T;
        const double r = w(j) / d;
        const double r2 = r / d;
        const double r3 = r2 / d;
        N += v(j) * r;
        D += r;
        N1 -= v(j) * r2;
        D1 -= r2;
        N2 += 2.0 * (v(j) * r3);
        D2 += 2.0 * r3;
    }
    const cplx value = N / D;
    const cplx d1 = (N1 - value * D1) / D;
    const cplx d2 = (N2 - 2.0 * d1 * D1 - value * D2) / D;
    return {value, d1, d2};
}

std::vector<double> error_spectrum(const BaryKernel& kernel,
                                   std::span<const double> f_grid,
                                   std::span<const double> u_grid) {
    if (f_grid.empty() || u_grid.empty())
        throw std::invalid_argument("error_spectrum: grids must be non-empty");
    const double fmax = kernel.B / 2.0 * (1.0 + 1e-12) + 1e-300;
    const double umax = kernel.T / 2.0 * (1.0 + 1e-12);
    for (double f : f_grid)
        if (!std::isfinite(f) || std::abs(f) > fmax)
            throw std::invalid_argument("error_spectrum: f outside [-B/2, B/2]");
    for (double u : u_grid)
        if (!std::isfinite(u) || std::abs(u) > umax)
            throw std::invalid_argument("error_spectrum: u outside [-T/2, T/2]");

    const int P = kernel.P;
    const double T = kernel.T;
    std::vector<cplx> samples(static_cast<size_t>(2 * P + 1));
    std::vector<double> out;
    out.reserve(f_grid.size());
    for (double f : f_grid) {
        for (int p = -P; p <= P; ++p) {
            // s((n-p)T) for s(t) = e^{j2pi f t}, n = 0
            const double ph = -2.0 * M_PI * f * p * T;
            samples[static_cast<size_t>(p + P)] = cplx{std::cos(ph), std::sin(ph)};
        }
        double worst = 0.0;
        for (double u : u_grid) {
            const double ph = 2.0 * M_PI * f * u;
            const cplx truth{std::cos(ph), std::sin(ph)};
            worst = std::max(worst, std::abs(interpolate(kernel, samples, u).value - truth));
        }
        out.push_back(worst);
    }
    return out;
}

}  // namespace sinfreq
