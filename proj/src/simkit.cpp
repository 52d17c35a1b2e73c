#include "sinfreq/simkit.hpp"

#include <cmath>
#include <stdexcept>

namespace sinfreq {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

NoiseStream::NoiseStream(uint64_t seed, uint64_t hi, uint64_t lo) {
    uint64_t s = mix64(seed + kGolden);
    s = mix64(s ^ (hi + kGolden));
    s = mix64(s ^ (lo + kGolden));
    key_ = s;
}

uint64_t NoiseStream::next_u64() { return mix64(key_ + (++counter_) * kGolden); }

double NoiseStream::next_unit_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::array<double, 2> NoiseStream::next_gaussian_pair() {
    const double u1 = next_unit_open();
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * M_PI * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

namespace {

cplx unit_exp(double phase) { return {std::cos(phase), std::sin(phase)}; }

double noise_sigma2(double snr_db) {
    const double s2 = std::pow(10.0, -snr_db / 10.0);
    return std::isfinite(s2) ? s2 : 0.0;
}

}  // namespace

SignalFrame synthesize_1d(int M, double f_true, double snr_db, NoiseStream& rng) {
    const int m1 = -((M + 1) / 2);
    const double s2 = noise_sigma2(snr_db);
    const double amp = std::sqrt(s2 / 2.0);
    std::vector<cplx> data(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        cplx z = unit_exp(2.0 * M_PI * f_true * (m1 + i));
        if (s2 > 0.0) {
            const auto g = rng.next_gaussian_pair();
            z += cplx{amp * g[0], amp * g[1]};
        }
        data[static_cast<size_t>(i)] = z;
    }
    return SignalFrame::make_1d(std::move(data));
}

SignalFrame synthesize_2d(int M, int N, double f1_true, double f2_true, double snr_db,
                          NoiseStream& rng) {
    const int m1 = -((M + 1) / 2);
    const int n1 = -((N + 1) / 2);
    const double s2 = noise_sigma2(snr_db);
    const double amp = std::sqrt(s2 / 2.0);
    std::vector<cplx> data(static_cast<size_t>(M) * N);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            cplx z = unit_exp(2.0 * M_PI * (f1_true * (m1 + i) + f2_true * (n1 + j)));
            if (s2 > 0.0) {
                const auto g = rng.next_gaussian_pair();
                z += cplx{amp * g[0], amp * g[1]};
            }
            data[static_cast<size_t>(i) * N + j] = z;
        }
    }
    return SignalFrame::make_2d(std::move(data), M, N);
}

double wrap_frequency(double f) {
    double w = std::fmod(f + 0.5, 1.0);
    if (w < 0.0) w += 1.0;
    return w - 0.5;
}

namespace {

void validate_config(const TrialConfig& c) {
    if (c.dims != 1 && c.dims != 2) throw std::invalid_argument("run_sweep: dims must be 1 or 2");
    if (c.trials_per_point < 1) throw std::invalid_argument("run_sweep: trials_per_point must be >= 1");
    if (c.snr_db_grid.empty()) throw std::invalid_argument("run_sweep: empty SNR grid");
    if (c.methods.empty()) throw std::invalid_argument("run_sweep: no methods requested");
    for (Method m : c.methods)
        if (m == Method::subspace && c.dims != 2)
            throw std::invalid_argument("run_sweep: the subspace method requires dims = 2");
    for (double f : {c.f_true[0], c.f_true[1]})
        if (!(f >= -0.5) || !(f < 0.5))
            throw std::invalid_argument("run_sweep: f_true components must lie in [-1/2, 1/2[");
}

}  // namespace

TrialReport run_sweep(const TrialConfig& config) {
    validate_config(config);
    const int K1 = config.K1 > 0 ? config.K1
                                 : static_cast<int>(default_fft_size(static_cast<size_t>(config.M)));
    const int K2 = config.K2 > 0 ? config.K2
                                 : static_cast<int>(default_fft_size(static_cast<size_t>(config.N)));

    TrialReport report;
    report.config = config;
    report.points.resize(config.snr_db_grid.size());

    for (size_t s = 0; s < config.snr_db_grid.size(); ++s) {
        SweepPoint& pt = report.points[s];
        pt.snr_db = config.snr_db_grid[s];
        const double snr_lin = std::pow(10.0, pt.snr_db / 10.0);
        if (config.dims == 2) {
            const CrbReport b = crb(config.M, config.N, snr_lin);
            pt.crb_var = {b.var_f1, b.var_f2};
        } else {
            pt.crb_var = {crb_1d(config.M, snr_lin), std::nan("")};
        }
        for (Method m : config.methods)
            pt.records[m].reserve(static_cast<size_t>(config.trials_per_point));

        for (int t = 0; t < config.trials_per_point; ++t) {
            NoiseStream rng(config.rng_seed, static_cast<uint64_t>(s), static_cast<uint64_t>(t));
            const SignalFrame frame =
                config.dims == 2
                    ? synthesize_2d(config.M, config.N, config.f_true[0], config.f_true[1],
                                    pt.snr_db, rng)
                    : synthesize_1d(config.M, config.f_true[0], pt.snr_db, rng);

            for (Method m : config.methods) {
                TrialRecord rec;
                try {
                    Estimate est;
                    if (m == Method::ml) {
                        est = config.dims == 2
                                  ? refine_2d(correlation_surface_2d(frame, K1, K2, Padding::nyquist),
                                              config.newton)
                                  : refine_1d(correlation_surface_1d(frame, K1, Padding::nyquist),
                                              config.newton);
                    } else {
                        est = subspace_estimate(frame, config.newton);
                    }
                    rec.converged = est.converged;
                    rec.iters = est.iters;
                    rec.estimate = est.freqs;
                    rec.sq_err[0] = std::pow(wrap_frequency(est.freqs[0] - config.f_true[0]), 2);
                    rec.sq_err[1] = config.dims == 2
                                        ? std::pow(wrap_frequency(est.freqs[1] - config.f_true[1]), 2)
                                        : std::nan("");
                } catch (const std::exception&) {
                    rec.converged = false;
                    rec.estimate = {std::nan(""), std::nan("")};
                    rec.sq_err = {std::nan(""), std::nan("")};
                }
                pt.records[m].push_back(rec);
            }
        }

        for (Method m : config.methods) {
            MethodStats st;
            st.trials = config.trials_per_point;
            double se1 = 0.0, se2 = 0.0, it_sum = 0.0;
            int n_conv = 0;
            for (const TrialRecord& r : pt.records[m]) {
                if (!r.converged) {
                    ++st.failures;
                    continue;
                }
                ++n_conv;
                se1 += r.sq_err[0];
                se2 += config.dims == 2 ? r.sq_err[1] : 0.0;
                it_sum += r.iters;
            }
            if (n_conv > 0) {
                st.rmse[0] = std::sqrt(se1 / n_conv);
                st.rmse[1] = config.dims == 2 ? std::sqrt(se2 / n_conv) : std::nan("");
                st.mean_iters = it_sum / n_conv;
            } else {
                st.rmse = {std::nan(""), std::nan("")};
                st.mean_iters = std::nan("");
            }
            pt.stats[m] = st;
        }
    }
    return report;
}

std::vector<EpsPoint> interp_error_sweep(const std::vector<int>& P_grid, const SignalFrame& frame,
                                         int K1, int K2, uint64_t probe_seed) {
    if (P_grid.empty()) throw std::invalid_argument("interp_error_sweep: empty P grid");
    if (frame.dims != 2) throw std::invalid_argument("interp_error_sweep: frame must be 2-D");
    const CostSurface2D surf = correlation_surface_2d(frame, K1, K2, Padding::nyquist);
    const auto peak = coarse_peak(surf);

    // probe cells: 3x3 around the peak plus 32 pseudo-random cells
    std::vector<std::array<int, 2>> cells;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            cells.push_back({(peak[0] + a + K1) % K1, (peak[1] + b + K2) % K2});
    NoiseStream cell_rng(probe_seed, 0xC0FFEE, 0);
    for (int i = 0; i < 32; ++i) {
        const int a = static_cast<int>(cell_rng.next_u64() % static_cast<uint64_t>(K1));
        const int b = static_cast<int>(cell_rng.next_u64() % static_cast<uint64_t>(K2));
        cells.push_back({a, b});
    }

    // 8x8 probes per cell at sub-cell offsets (i+1/2)/8 - 1/2
    std::vector<std::array<double, 2>> probes;
    probes.reserve(cells.size() * 64);
    for (const auto& c : cells) {
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                const double f1 = (c[0] + (i + 0.5) / 8.0 - 0.5) * surf.delta_f1;
                const double f2 = (c[1] + (j + 0.5) / 8.0 - 0.5) * surf.delta_f2;
                probes.push_back({f1, f2});
            }
        }
    }

    std::vector<double> L_direct(probes.size());
    double L_max = 0.0;
    for (size_t i = 0; i < probes.size(); ++i) {
        L_direct[i] = std::norm(direct_correlation(frame, probes[i][0], probes[i][1]));
        L_max = std::max(L_max, L_direct[i]);
    }

    std::vector<EpsPoint> out;
    out.reserve(P_grid.size());
    for (int P : P_grid) {
        const BaryKernel k1 = make_kernel(P, surf.delta_f1, surf.M);
        const BaryKernel k2 = make_kernel(P, surf.delta_f2, surf.N);
        double worst = 0.0;
        for (size_t i = 0; i < probes.size(); ++i) {
            const double L = interp_cost_2d(surf, k1, k2, probes[i][0], probes[i][1]).L;
            worst = std::max(worst, std::abs(L - L_direct[i]));
        }
        out.push_back({P, worst / L_max});
    }
    return out;
}

}  // namespace sinfreq
