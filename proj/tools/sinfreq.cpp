// sinfreq command line: ML frequency estimation on sample files, Monte-Carlo
// benchmarks against the CRB, and interpolation-error tables.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinfreq/sample_io.hpp"
#include "sinfreq/simkit.hpp"

namespace {

using nlohmann::json;
using namespace sinfreq;

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

// "a:step:b" or comma list
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double a, step, b;
        char c1, c2;
        std::stringstream ss(s);
        if (!(ss >> a >> c1 >> step >> c2 >> b) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw std::runtime_error("bad grid spec '" + s + "' (want a:step:b)");
        for (double x = a; x <= b + 1e-12; x += step) out.push_back(x);
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw std::runtime_error("empty grid spec");
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

const char* method_name(Method m) { return m == Method::ml ? "ml" : "subspace"; }

int cmd_estimate(const std::string& path, int dims_flag, const std::string& fft_flag,
                 const std::string& p_flag, const std::string& method, bool as_json) {
    const SampleFile sf = read_sample_file(path);
    if (dims_flag != 0 && dims_flag != sf.dims)
        throw std::runtime_error("--dims does not match the file header");
    const SignalFrame frame = to_frame(sf);

    int K1 = 0, K2 = 0;
    Padding pad = Padding::nyquist;  // defaults follow the reference setup
    if (!fft_flag.empty()) {
        const auto ks = parse_int_list(fft_flag);
        if (ks.size() < 1 || ks.size() > 2) throw std::runtime_error("--fft-size wants K or K1,K2");
        K1 = ks[0];
        K2 = ks.size() == 2 ? ks[1] : ks[0];
        if (K1 < 2 * frame.M || (frame.dims == 2 && K2 < 2 * frame.N))
            throw std::runtime_error(
                "--fft-size below factor-two padding (need K >= 2M per axis); "
                "the coarse peak is only guaranteed to land in the right cell with K >= 2M");
        pad = Padding::factor_two;
    } else {
        K1 = static_cast<int>(default_fft_size(static_cast<size_t>(frame.M)));
        K2 = frame.dims == 2 ? static_cast<int>(default_fft_size(static_cast<size_t>(frame.N))) : 0;
    }

    NewtonConfig cfg;
    if (!p_flag.empty()) {
        const auto ps = parse_int_list(p_flag);
        if (ps.size() < 1 || ps.size() > 2) throw std::runtime_error("--P wants p or p1,p2");
        cfg.P = cfg.P1 = ps[0];
        cfg.P2 = ps.size() == 2 ? ps[1] : ps[0];
    }

    Estimate est;
    std::array<double, 2> coarse{0.0, 0.0};
    if (frame.dims == 1) {
        if (method != "ml") throw std::runtime_error("1-D input supports --method ml only");
        const CostSurface1D s = correlation_surface_1d(frame, K1, pad);
        est = refine_1d(s, cfg);
        coarse[0] = map_frequency(est.coarse_index[0], K1);
    } else {
        const CostSurface2D s = correlation_surface_2d(frame, K1, K2, pad);
        if (method == "ml") {
            est = refine_2d(s, cfg);
        } else if (method == "subspace") {
            est = subspace_estimate(frame, cfg);
        } else {
            throw std::runtime_error("--method must be ml or subspace");
        }
        // the subspace path reports coarse indices on its own 1-D default grids
        const int Kc1 = method == "ml" ? K1
                                       : static_cast<int>(default_fft_size(static_cast<size_t>(frame.M)));
        const int Kc2 = method == "ml" ? K2
                                       : static_cast<int>(default_fft_size(static_cast<size_t>(frame.N)));
        coarse[0] = map_frequency(est.coarse_index[0], Kc1);
        coarse[1] = map_frequency(est.coarse_index[1], Kc2);
    }

    if (as_json) {
        json j;
        j["dims"] = frame.dims;
        j["method"] = method;
        j["fft_size"] = frame.dims == 2 ? json::array({K1, K2}) : json::array({K1});
        j["coarse_f1"] = coarse[0];
        j["f1"] = est.freqs[0];
        if (frame.dims == 2) {
            j["coarse_f2"] = coarse[1];
            j["f2"] = est.freqs[1];
        }
        j["cost"] = est.cost;
        j["iters"] = est.iters;
        j["converged"] = est.converged;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "dims " << frame.dims << "\n";
        std::cout << "method " << method << "\n";
        if (frame.dims == 2)
            std::cout << "fft_size " << K1 << " " << K2 << "\n";
        else
            std::cout << "fft_size " << K1 << "\n";
        std::cout << "coarse_f1 " << fmt(coarse[0]) << "\n";
        if (frame.dims == 2) std::cout << "coarse_f2 " << fmt(coarse[1]) << "\n";
        std::cout << "f1 " << fmt(est.freqs[0]) << "\n";
        if (frame.dims == 2) std::cout << "f2 " << fmt(est.freqs[1]) << "\n";
        std::cout << "cost " << fmt(est.cost) << "\n";
        std::cout << "iters " << est.iters << "\n";
        std::cout << "converged " << (est.converged ? "true" : "false") << "\n";
    }
    return est.converged ? 0 : 2;
}

int cmd_bench(const TrialConfig& cfg, const std::string& out_path, bool as_json) {
    const TrialReport rep = run_sweep(cfg);

    std::ostringstream body;
    if (as_json) {
        json rows = json::array();
        for (const auto& pt : rep.points) {
            for (const auto& [m, st] : pt.stats) {
                json r;
                r["snr_db"] = pt.snr_db;
                r["method"] = method_name(m);
                r["rmse_f1"] = st.rmse[0];
                r["rmse_f2"] = st.rmse[1];
                r["crb_rms_f1"] = std::sqrt(pt.crb_var[0]);
                r["crb_rms_f2"] = std::sqrt(pt.crb_var[1]);
                r["mean_iters"] = st.mean_iters;
                r["failures"] = st.failures;
                r["trials"] = st.trials;
                rows.push_back(r);
            }
        }
        body << rows.dump(2) << "\n";
    } else {
        body << "snr_db,method,rmse_f1,rmse_f2,crb_rms_f1,crb_rms_f2,mean_iters,failures,trials\n";
        for (const auto& pt : rep.points) {
            for (const auto& [m, st] : pt.stats) {
                body << fmt(pt.snr_db) << "," << method_name(m) << "," << fmt(st.rmse[0]) << ","
                     << fmt(st.rmse[1]) << "," << fmt(std::sqrt(pt.crb_var[0])) << ","
                     << fmt(std::sqrt(pt.crb_var[1])) << "," << fmt(st.mean_iters) << ","
                     << st.failures << "," << st.trials << "\n";
            }
        }
    }

    if (out_path.empty() || out_path == "-") {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        out << body.str();
        if (!out) throw std::runtime_error("write failed for '" + out_path + "'");
    }
    return 0;
}

int cmd_spectrum(double BT, const std::vector<int>& Ps, int grid, const std::string& out_path) {
    if (Ps.empty()) throw std::runtime_error("--P list must not be empty");
    if (grid < 2) throw std::runtime_error("--grid must be >= 2");
    std::vector<double> f_grid(static_cast<size_t>(grid));
    for (int i = 0; i < grid; ++i)
        f_grid[static_cast<size_t>(i)] = -BT / 2.0 + BT * i / (grid - 1);
    std::vector<double> u_grid(static_cast<size_t>(2 * grid + 1));
    for (int i = 0; i <= 2 * grid; ++i)
        u_grid[static_cast<size_t>(i)] = -0.5 + static_cast<double>(i) / (2 * grid);

    std::ostringstream body;
    body << "P,f,E\n";
    for (int P : Ps) {
        const BaryKernel k = make_kernel(P, 1.0, BT);
        const auto E = error_spectrum(k, f_grid, u_grid);
        for (size_t i = 0; i < f_grid.size(); ++i)
            body << P << "," << fmt(f_grid[i]) << "," << fmt(E[i]) << "\n";
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        out << body.str();
    }
    return 0;
}

int cmd_eps(const std::vector<int>& Ps, int M, int N, double f1, double f2, double snr_db,
            uint64_t seed, const std::string& fft_flag, const std::string& out_path) {
    if (Ps.empty()) throw std::runtime_error("--P list must not be empty");
    int K1 = static_cast<int>(default_fft_size(static_cast<size_t>(M)));
    int K2 = static_cast<int>(default_fft_size(static_cast<size_t>(N)));
    if (!fft_flag.empty()) {
        const auto ks = parse_int_list(fft_flag);
        if (ks.size() < 1 || ks.size() > 2) throw std::runtime_error("--fft-size wants K or K1,K2");
        K1 = ks[0];
        K2 = ks.size() == 2 ? ks[1] : ks[0];
    }
    NoiseStream rng(seed, 0, 0);
    const SignalFrame frame = synthesize_2d(M, N, f1, f2, snr_db, rng);
    const auto table = interp_error_sweep(Ps, frame, K1, K2, seed);

    std::ostringstream body;
    body << "P,eps,log10_eps\n";
    for (const auto& row : table)
        body << row.P << "," << fmt(row.eps) << "," << fmt(std::log10(row.eps)) << "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        out << body.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sinfreq: exact ML frequency estimation of complex sinusoids at FFT cost"};
    app.require_subcommand(1);

    // estimate
    auto* est = app.add_subcommand("estimate", "estimate frequencies from a sample file");
    std::string in_path, fft_flag, p_flag, method = "ml";
    int dims_flag = 0;
    bool as_json = false;
    est->add_option("input", in_path, "sample file")->required();
    est->add_option("--dims", dims_flag, "expected dimensionality (validated against the file)");
    est->add_option("--fft-size", fft_flag, "FFT size K or K1,K2 (default: power of two nearest 2M)");
    est->add_option("--P", p_flag, "truncation index p or p1,p2 (default 8)");
    est->add_option("--method", method, "ml | subspace")->check(CLI::IsMember({"ml", "subspace"}));
    est->add_flag("--json", as_json, "emit a single JSON object");

    // bench
    auto* bench = app.add_subcommand("bench", "Monte-Carlo RMSE/CRB sweep");
    TrialConfig cfg;
    std::string snr_spec = "-10:2:20", methods_spec = "ml", out_path;
    bool bench_json = false;
    int P_flag = 8;
    bench->add_option("--dims", cfg.dims, "1 or 2 (default 2)");
    bench->add_option("--M", cfg.M, "frame length, first axis (default 64)");
    bench->add_option("--N", cfg.N, "frame length, second axis (default 64)");
    bench->add_option("--f1", cfg.f_true[0], "true frequency, first axis (default 0.235)");
    bench->add_option("--f2", cfg.f_true[1], "true frequency, second axis (default -0.141)");
    bench->add_option("--snr", snr_spec, "SNR grid in dB, a:step:b or comma list (default -10:2:20)");
    bench->add_option("--trials", cfg.trials_per_point, "trials per SNR point (default 500)");
    bench->add_option("--seed", cfg.rng_seed, "RNG seed (default 1)");
    bench->add_option("--methods", methods_spec, "comma list of ml,subspace (default ml)");
    bench->add_option("--P", P_flag, "truncation index (default 8)");
    bench->add_option("--out", out_path, "output path (default stdout)");
    bench->add_flag("--json", bench_json, "emit JSON instead of CSV");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "interpolator error spectrum table");
    double BT = 0.25;
    std::string spec_P = "4,6,8", spec_out;
    int grid = 64;
    spec->add_option("--BT", BT, "bandwidth-period product (default 0.25)");
    spec->add_option("--P", spec_P, "comma list of truncation indices")->required();
    spec->add_option("--grid", grid, "frequency grid points (default 64)");
    spec->add_option("--out", spec_out, "output path (default stdout)");

    // eps
    auto* eps = app.add_subcommand("eps", "cost-surface interpolation error vs truncation index");
    std::string eps_P, eps_fft, eps_out;
    int eM = 64, eN = 64;
    double ef1 = 0.235, ef2 = -0.141, esnr = 5.0;
    uint64_t eseed = 1;
    eps->add_option("--P", eps_P, "comma list of truncation indices")->required();
    eps->add_option("--M", eM, "frame length, first axis (default 64)");
    eps->add_option("--N", eN, "frame length, second axis (default 64)");
    eps->add_option("--f1", ef1, "true frequency, first axis");
    eps->add_option("--f2", ef2, "true frequency, second axis");
    eps->add_option("--snr", esnr, "SNR in dB (default 5)");
    eps->add_option("--seed", eseed, "RNG seed (default 1)");
    eps->add_option("--fft-size", eps_fft, "FFT size K or K1,K2");
    eps->add_option("--out", eps_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (est->parsed()) return cmd_estimate(in_path, dims_flag, fft_flag, p_flag, method, as_json);
        if (bench->parsed()) {
            cfg.snr_db_grid = parse_grid(snr_spec);
            cfg.newton.P = cfg.newton.P1 = cfg.newton.P2 = P_flag;
            cfg.methods.clear();
            std::stringstream ss(methods_spec);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok == "ml") cfg.methods.push_back(Method::ml);
                else if (tok == "subspace") cfg.methods.push_back(Method::subspace);
                else throw std::runtime_error("unknown method '" + tok + "'");
            }
            return cmd_bench(cfg, out_path, bench_json);
        }
        if (spec->parsed()) return cmd_spectrum(BT, parse_int_list(spec_P), grid, spec_out);
        if (eps->parsed())
            return cmd_eps(parse_int_list(eps_P), eM, eN, ef1, ef2, esnr, eseed, eps_fft, eps_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
