#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sinfreq/baselines.hpp"

namespace sinfreq {

/// Counter-based deterministic random stream keyed by (seed, hi, lo).
/// Output i depends only on the key and i, so substreams for different
/// (snr index, trial index) pairs are independent of evaluation order,
/// method subsets and worker count.
class NoiseStream {
public:
    NoiseStream(uint64_t seed, uint64_t hi, uint64_t lo);

    uint64_t next_u64();
    double next_unit_open();                   // (0, 1]
    std::array<double, 2> next_gaussian_pair();  // Box-Muller, two N(0,1)

private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

/// Unit-amplitude exponential at symmetric indices plus circular complex
/// white noise of variance sigma^2 = 10^{-snr_db/10} (real and imaginary
/// parts independent N(0, sigma^2/2)).
SignalFrame synthesize_1d(int M, double f_true, double snr_db, NoiseStream& rng);
SignalFrame synthesize_2d(int M, int N, double f1_true, double f2_true, double snr_db,
                          NoiseStream& rng);

enum class Method { ml, subspace };

struct TrialConfig {
    int dims = 2;
    int M = 64;
    int N = 64;
    std::array<double, 2> f_true{0.235, -0.141};
    std::vector<double> snr_db_grid;
    int trials_per_point = 500;
    uint64_t rng_seed = 1;
    NewtonConfig newton{};
    std::vector<Method> methods{Method::ml};
    int K1 = 0;  // 0 -> default_fft_size
    int K2 = 0;
};

struct TrialRecord {
    std::array<double, 2> estimate{0.0, 0.0};
    std::array<double, 2> sq_err{0.0, 0.0};  // wrapped to [-1/2,1/2[ before squaring
    int iters = 0;
    bool converged = false;
};

struct MethodStats {
    std::array<double, 2> rmse{0.0, 0.0};  // over converged trials
    double mean_iters = 0.0;
    int failures = 0;
    int trials = 0;
};

struct SweepPoint {
    double snr_db = 0.0;
    std::array<double, 2> crb_var{0.0, 0.0};
    std::map<Method, std::vector<TrialRecord>> records;
    std::map<Method, MethodStats> stats;
};

struct TrialReport {
    TrialConfig config;
    std::vector<SweepPoint> points;
};

/// Monte-Carlo sweep over the SNR grid. Trial t at SNR index s draws its
/// noise from substream (seed, s, t); all requested methods see the same
/// frame (paired comparisons). Per-trial failures are recorded, not fatal.
TrialReport run_sweep(const TrialConfig& config);

struct EpsPoint {
    int P = 0;
    double eps = 0.0;
};

/// Relative interpolation error of the cost surface, max |L - L~| / max L
/// over a probe set (8x8 probes per cell over the 3x3 cells around the coarse
/// peak plus 32 random cells), with L from direct summation. One row per P.
std::vector<EpsPoint> interp_error_sweep(const std::vector<int>& P_grid,
                                         const SignalFrame& frame, int K1, int K2,
                                         uint64_t probe_seed = 0);

double wrap_frequency(double f);  // to [-1/2, 1/2[

}  // namespace sinfreq
