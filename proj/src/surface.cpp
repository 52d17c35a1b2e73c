#include "sinfreq/surface.hpp"

#include <cmath>
#include <stdexcept>

#include "sinfreq/fft.hpp"

namespace sinfreq {

namespace {

int symmetric_start(int M) { return -((M + 1) / 2); }

void validate_size(int K, int M, Padding padding, const char* axis) {
    if (K < 2 || !is_pow2(static_cast<size_t>(K)))
        throw std::invalid_argument(std::string("correlation_surface: FFT size on ") + axis +
                                    " must be a power of two >= 2");
    if (padding == Padding::factor_two) {
        if (K < 2 * M)
            throw std::invalid_argument(std::string("correlation_surface: FFT size on ") + axis +
                                        " below factor-two padding (K >= 2M required)");
    } else {
        if (K <= M)
            throw std::invalid_argument(std::string("correlation_surface: FFT size on ") + axis +
                                        " below the Nyquist rate of the correlation (K > M required)");
    }
}

std::vector<cplx> twist(int K, int m1) {
    std::vector<cplx> t(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double ph = -2.0 * M_PI * static_cast<double>(k) * m1 / K;
        t[static_cast<size_t>(k)] = {std::cos(ph), std::sin(ph)};
    }
    return t;
}

}  // namespace

SignalFrame SignalFrame::make_1d(std::vector<cplx> samples) {
    if (samples.size() < 2) throw std::invalid_argument("SignalFrame: M must be >= 2");
    SignalFrame f;
    f.dims = 1;
    f.M = static_cast<int>(samples.size());
    f.N = 1;
    f.m1 = symmetric_start(f.M);
    f.n1 = 0;
    f.data = std::move(samples);
    return f;
}

SignalFrame SignalFrame::make_2d(std::vector<cplx> samples, int M, int N) {
    if (M < 2 || N < 2) throw std::invalid_argument("SignalFrame: M and N must be >= 2");
    if (samples.size() != static_cast<size_t>(M) * N)
        throw std::invalid_argument("SignalFrame: sample count must equal M*N");
    SignalFrame f;
    f.dims = 2;
    f.M = M;
    f.N = N;
    f.m1 = symmetric_start(M);
    f.n1 = symmetric_start(N);
    f.data = std::move(samples);
    return f;
}

CostSurface1D correlation_surface_1d(const SignalFrame& frame, int K, Padding padding) {
    if (frame.dims != 1) throw std::invalid_argument("correlation_surface_1d: frame must be 1-D");
    validate_size(K, frame.M, padding, "axis 1");

    std::vector<cplx> buf(static_cast<size_t>(K), cplx{0.0, 0.0});
    std::copy(frame.data.begin(), frame.data.end(), buf.begin());
    fft_inplace(buf);
    const auto tw = twist(K, frame.m1);
    for (int k = 0; k < K; ++k) buf[static_cast<size_t>(k)] *= tw[static_cast<size_t>(k)];

    CostSurface1D s;
    s.c = std::move(buf);
    s.K = K;
    s.delta_f = 1.0 / K;
    s.m1 = frame.m1;
    s.M = frame.M;
    return s;
}

CostSurface2D correlation_surface_2d(const SignalFrame& frame, int K1, int K2, Padding padding) {
    if (frame.dims != 2) throw std::invalid_argument("correlation_surface_2d: frame must be 2-D");
    validate_size(K1, frame.M, padding, "axis 1");
    validate_size(K2, frame.N, padding, "axis 2");

    std::vector<cplx> buf(static_cast<size_t>(K1) * K2, cplx{0.0, 0.0});
    for (int i = 0; i < frame.M; ++i)
        for (int j = 0; j < frame.N; ++j)
            buf[static_cast<size_t>(i) * K2 + j] = frame.at(i, j);

    // row-column separable FFT
    std::vector<cplx> line(static_cast<size_t>(K2));
    for (int i = 0; i < K1; ++i) {
        std::copy_n(buf.begin() + static_cast<size_t>(i) * K2, K2, line.begin());
        fft_inplace(line);
        std::copy_n(line.begin(), K2, buf.begin() + static_cast<size_t>(i) * K2);
    }
    line.resize(static_cast<size_t>(K1));
    for (int j = 0; j < K2; ++j) {
        for (int i = 0; i < K1; ++i) line[static_cast<size_t>(i)] = buf[static_cast<size_t>(i) * K2 + j];
        fft_inplace(line);
        for (int i = 0; i < K1; ++i) buf[static_cast<size_t>(i) * K2 + j] = line[static_cast<size_t>(i)];
    }

    const auto t1 = twist(K1, frame.m1);
    const auto t2 = twist(K2, frame.n1);
    for (int i = 0; i < K1; ++i)
        for (int j = 0; j < K2; ++j)
            buf[static_cast<size_t>(i) * K2 + j] *= t1[static_cast<size_t>(i)] * t2[static_cast<size_t>(j)];

    CostSurface2D s;
    s.c = std::move(buf);
    s.K1 = K1;
    s.K2 = K2;
    s.delta_f1 = 1.0 / K1;
    s.delta_f2 = 1.0 / K2;
    s.m1 = frame.m1;
    s.n1 = frame.n1;
    s.M = frame.M;
    s.N = frame.N;
    return s;
}

double map_frequency(int k, int K) {
    return (k >= K / 2 ? k - K : k) / static_cast<double>(K);
}

int coarse_peak(const CostSurface1D& s) {
    int best = -1;
    double best_mag = 0.0;
    double best_f = 0.0;
    for (int k = 0; k < s.K; ++k) {
        const double mag = std::norm(s.at(k));
        const double f = map_frequency(k, s.K);
        if (mag > best_mag || (mag == best_mag && best >= 0 && f < best_f)) {
            best = k;
            best_mag = mag;
            best_f = f;
        }
    }
    if (best < 0 || best_mag == 0.0)
        throw std::invalid_argument("coarse_peak: surface is identically zero");
    return best;
}

std::array<int, 2> coarse_peak(const CostSurface2D& s) {
    std::array<int, 2> best{-1, -1};
    double best_mag = 0.0;
    double bf1 = 0.0, bf2 = 0.0;
    for (int k1 = 0; k1 < s.K1; ++k1) {
        for (int k2 = 0; k2 < s.K2; ++k2) {
            const double mag = std::norm(s.at(k1, k2));
            const double f1 = map_frequency(k1, s.K1);
            const double f2 = map_frequency(k2, s.K2);
            const bool tie_lower = mag == best_mag && best[0] >= 0 &&
                                   (f1 < bf1 || (f1 == bf1 && f2 < bf2));
            if (mag > best_mag || tie_lower) {
                best = {k1, k2};
                best_mag = mag;
                bf1 = f1;
                bf2 = f2;
            }
        }
    }
    if (best[0] < 0 || best_mag == 0.0)
        throw std::invalid_argument("coarse_peak: surface is identically zero");
    return best;
}

cplx direct_correlation(const SignalFrame& frame, double f) {
    if (frame.dims != 1) throw std::invalid_argument("direct_correlation: frame must be 1-D");
    const double ph0 = -2.0 * M_PI * f * frame.m1;
    const double dph = -2.0 * M_PI * f;
    cplx phasor{std::cos(ph0), std::sin(ph0)};
    const cplx step{std::cos(dph), std::sin(dph)};
    cplx acc{0.0, 0.0};
    for (int i = 0; i < frame.M; ++i) {
        acc += frame.at(i) * phasor;
        phasor *= step;
    }
    return acc;
}

cplx direct_correlation(const SignalFrame& frame, double f1, double f2) {
    if (frame.dims != 2) throw std::invalid_argument("direct_correlation: frame must be 2-D");
    const double pn0 = -2.0 * M_PI * f2 * frame.n1;
    const double dpn = -2.0 * M_PI * f2;
    std::vector<cplx> en(static_cast<size_t>(frame.N));
    cplx pn{std::cos(pn0), std::sin(pn0)};
    const cplx sn{std::cos(dpn), std::sin(dpn)};
    for (int j = 0; j < frame.N; ++j) {
        en[static_cast<size_t>(j)] = pn;
        pn *= sn;
    }
    const double pm0 = -2.0 * M_PI * f1 * frame.m1;
    const double dpm = -2.0 * M_PI * f1;
    cplx pm{std::cos(pm0), std::sin(pm0)};
    const cplx sm{std::cos(dpm), std::sin(dpm)};
    cplx acc{0.0, 0.0};
    for (int i = 0; i < frame.M; ++i) {
        cplx row{0.0, 0.0};
        for (int j = 0; j < frame.N; ++j) row += frame.at(i, j) * en[static_cast<size_t>(j)];
        acc += row * pm;
        pm *= sm;
    }
    return acc;
}

}  // namespace sinfreq
