#include "sinfreq/baselines.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sinfreq/fft.hpp"

namespace sinfreq {

namespace {

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// y = Z v (M x N row-major)
void mat_vec(const std::vector<cplx>& Z, int M, int N, const std::vector<cplx>& v,
             std::vector<cplx>& y) {
    for (int i = 0; i < M; ++i) {
        cplx acc{0.0, 0.0};
        const cplx* row = &Z[static_cast<size_t>(i) * N];
        for (int j = 0; j < N; ++j) acc += row[j] * v[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = acc;
    }
}

// y = Z^H u
void mat_vec_adj(const std::vector<cplx>& Z, int M, int N, const std::vector<cplx>& u,
                 std::vector<cplx>& y) {
    std::fill(y.begin(), y.end(), cplx{0.0, 0.0});
    for (int i = 0; i < M; ++i) {
        const cplx ui = u[static_cast<size_t>(i)];
        const cplx* row = &Z[static_cast<size_t>(i) * N];
        for (int j = 0; j < N; ++j) y[static_cast<size_t>(j)] += std::conj(row[j]) * ui;
    }
}

}  // namespace

SubspaceVectors dominant_svd(const std::vector<cplx>& Z, int M, int N, double tol, int max_iters) {
    if (M < 1 || N < 1 || Z.size() != static_cast<size_t>(M) * N)
        throw std::invalid_argument("dominant_svd: matrix dimensions do not match data");
    double fro = 0.0;
    for (const cplx& z : Z) fro += std::norm(z);
    fro = std::sqrt(fro);
    if (fro == 0.0) throw std::invalid_argument("dominant_svd: zero matrix");

    std::vector<cplx> u(static_cast<size_t>(M), cplx{1.0 / std::sqrt(static_cast<double>(M)), 0.0});
    std::vector<cplx> v(static_cast<size_t>(N));
    double sigma = 0.0;
    double last_change = HUGE_VAL;
    int restarts = 0;
    for (int it = 1; it <= max_iters; ++it) {
        mat_vec_adj(Z, M, N, u, v);
        const double nv = norm2(v);
        if (nv <= 1e-14 * fro) {
            // start vector orthogonal to the dominant subspace; deterministic restart
            if (++restarts > 4) throw std::runtime_error("dominant_svd: repeated breakdown");
            uint64_t s = 0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(restarts);
            for (int i = 0; i < M; ++i) {
                s ^= s >> 30; s *= 0xBF58476D1CE4E5B9ULL;
                s ^= s >> 27; s *= 0x94D049BB133111EBULL;
                u[static_cast<size_t>(i)] = {1.0 + static_cast<double>(s >> 40) / (1 << 24), 0.0};
            }
            const double nu = norm2(u);
            for (auto& x : u) x /= nu;
            sigma = 0.0;
            continue;
        }
        for (auto& x : v) x /= nv;
        mat_vec(Z, M, N, v, u);
        const double sigma_new = norm2(u);
        for (auto& x : u) x /= sigma_new;
        last_change = std::abs(sigma_new - sigma) / sigma_new;
        if (last_change < tol) {
            SubspaceVectors out;
            out.u1 = std::move(u);
            out.v1 = std::move(v);
            out.sigma1 = sigma_new;
            out.iters = it;
            return out;
        }
        sigma = sigma_new;
    }
    std::ostringstream msg;
    msg << "dominant_svd: no convergence after " << max_iters
        << " iterations (last relative sigma change " << last_change << ")";
    throw std::runtime_error(msg.str());
}

Estimate subspace_estimate(const SignalFrame& frame, const NewtonConfig& config) {
    if (frame.dims != 2) throw std::invalid_argument("subspace_estimate: frame must be 2-D");
    const SubspaceVectors sv = dominant_svd(frame.data, frame.M, frame.N);

    SignalFrame fu = SignalFrame::make_1d(sv.u1);
    const int Ku = static_cast<int>(default_fft_size(static_cast<size_t>(frame.M)));
    NewtonConfig c1 = config;
    c1.P = config.P1;
    const Estimate e1 = refine_1d(correlation_surface_1d(fu, Ku, Padding::nyquist), c1);

    std::vector<cplx> vconj(sv.v1.size());
    for (size_t i = 0; i < sv.v1.size(); ++i) vconj[i] = std::conj(sv.v1[i]);
    SignalFrame fv = SignalFrame::make_1d(std::move(vconj));
    const int Kv = static_cast<int>(default_fft_size(static_cast<size_t>(frame.N)));
    NewtonConfig c2 = config;
    c2.P = config.P2;
    const Estimate e2 = refine_1d(correlation_surface_1d(fv, Kv, Padding::nyquist), c2);

    Estimate est;
    est.dims = 2;
    est.freqs = {e1.freqs[0], e2.freqs[0]};
    est.iters = e1.iters + e2.iters;
    est.converged = e1.converged && e2.converged;
    est.coarse_index = {e1.coarse_index[0], e2.coarse_index[0]};
    est.cost = std::norm(direct_correlation(frame, est.freqs[0], est.freqs[1]));
    return est;
}

CrbReport crb(int M, int N, double snr_linear) {
    if (M < 2 || N < 2) throw std::invalid_argument("crb: M and N must be >= 2");
    if (!(snr_linear > 0.0) || !std::isfinite(snr_linear))
        throw std::invalid_argument("crb: snr must be finite and > 0");
    const double two_pi_sq = 4.0 * M_PI * M_PI;
    CrbReport r;
    r.M = M;
    r.N = N;
    r.snr_linear = snr_linear;
    r.var_f1 = 6.0 / (two_pi_sq * snr_linear * N * (static_cast<double>(M) * M * M - M));
    r.var_f2 = 6.0 / (two_pi_sq * snr_linear * M * (static_cast<double>(N) * N * N - N));
    return r;
}

double crb_1d(int M, double snr_linear) {
    if (M < 2) throw std::invalid_argument("crb_1d: M must be >= 2");
    if (!(snr_linear > 0.0) || !std::isfinite(snr_linear))
        throw std::invalid_argument("crb_1d: snr must be finite and > 0");
    return 6.0 / (4.0 * M_PI * M_PI * snr_linear * (static_cast<double>(M) * M * M - M));
}

}  // namespace sinfreq
