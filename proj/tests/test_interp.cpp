#include <doctest.h>

#include <cmath>
#include <random>

#include "sinfreq/interp.hpp"

using namespace sinfreq;

namespace {

cplx expi(double ph) { return {std::cos(ph), std::sin(ph)}; }

// samples of s(t) = e^{j2pi f t} in the interpolate() convention,
// samples[p+P] = s((n-p)T) with n = 0
std::vector<cplx> exp_samples(int P, double T, double f) {
    std::vector<cplx> s(static_cast<size_t>(2 * P + 1));
    for (int p = -P; p <= P; ++p)
        s[static_cast<size_t>(p + P)] = expi(-2.0 * M_PI * f * p * T);
    return s;
}

}  // namespace

TEST_CASE("modulo decomposition reconstructs and bounds the offset") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> td(-40.0, 40.0), Td(0.1, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double T = Td(gen), t = td(gen);
        const auto [n, u] = modulo_decompose(t, T);
        CHECK(std::abs(u) <= T / 2 * (1 + 1e-12));
        CHECK(n * T + u == doctest::Approx(t).epsilon(1e-14));
    }
    CHECK(modulo_decompose(1.5, 1.0).n == 2);  // half-cell rounds up
}

TEST_CASE("weights match a 50-digit direct evaluation of the weight formula (P=6, BT=0.25)") {
    // frozen from an arbitrary-precision evaluation of
    // Gamma(p+P+1) Gamma(-p+P+1) g(pT) / L'(pT), max-normalized
    const double expected[13] = {
        0.00065260014380287006, -0.010117084736865797, 0.063266570171533855,
        -0.22537071494182973,   0.52468909997171871,  -0.85311791138970231,
        1.0,                    -0.85311791138970231,  0.52468909997171871,
        -0.22537071494182973,   0.063266570171533855, -0.010117084736865797,
        0.00065260014380287006};
    const BaryKernel k = make_kernel(6, 1.0, 0.25);
    REQUIRE(k.weights.size() == 13);
    for (int i = 0; i < 13; ++i)
        CHECK(k.weights[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("P=1, B=0 weights: symmetric ends, alternating signs, pulse-ratio magnitude") {
    const BaryKernel k = make_kernel(1, 1.0, 0.0);
    CHECK(k.weight(-1) == k.weight(1));  // even in p
    CHECK(k.weight(0) == doctest::Approx(-1.0));
    // |w_{+-1}| = g(T) = sinc(j sqrt(3)) / sinc(j 2)
    CHECK(k.weight(1) == doctest::Approx(0.4975986405312526).epsilon(1e-14));
}

TEST_CASE("weights depend on t/T and BT only: (P=3,T=0.5,B=0.5) vs (P=3,T=1,B=0.25)") {
    const BaryKernel a = make_kernel(3, 0.5, 0.5);
    const BaryKernel b = make_kernel(3, 1.0, 0.25);
    for (int p = -3; p <= 3; ++p)
        CHECK(a.weight(p) / a.weight(0) == doctest::Approx(b.weight(p) / b.weight(0)).epsilon(1e-15));
}

TEST_CASE("weight invariants across P and BT") {
    for (int P : {1, 2, 5, 8, 12, 40, 120}) {
        for (double BT : {0.0, 0.25, 0.5, 0.9}) {
            const BaryKernel k = make_kernel(P, 1.0, BT);
            for (int p = -P; p <= P; ++p) {
                CHECK(std::isfinite(k.weight(p)));
                CHECK(k.weight(p) != 0.0);
                if (p < P)  // strict alternation, g > 0
                    CHECK(k.weight(p) * k.weight(p + 1) < 0.0);
            }
        }
    }
}

TEST_CASE("make_kernel rejects bad input") {
    CHECK_THROWS_AS(make_kernel(0, 1.0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel(4, 1.0, 1.0), std::invalid_argument);   // BT = 1
    CHECK_THROWS_AS(make_kernel(4, 0.5, 2.5), std::invalid_argument);   // BT > 1
    CHECK_THROWS_AS(make_kernel(4, -1.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel(4, 1.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("constant samples are reproduced with zero derivatives") {
    const BaryKernel k = make_kernel(6, 1.0, 0.25);
    const cplx c{1.7, -0.4};
    std::vector<cplx> s(13, c);
    for (double u : {-0.5, -0.31, 0.0, 0.123, 0.5}) {
        const InterpValue v = interpolate(k, s, u);
        CHECK(std::abs(v.value - c) < 1e-13 * std::abs(c));
        CHECK(std::abs(v.d1) < 1e-10 * std::abs(c));
        CHECK(std::abs(v.d2) < 1e-9 * std::abs(c));
    }
}

TEST_CASE("node reproduction at u = 0 is bit-for-bit") {
    const BaryKernel k = make_kernel(6, 1.0, 0.25);
    const auto s = exp_samples(6, 1.0, 0.137);
    const InterpValue v = interpolate(k, s, 0.0);
    CHECK(v.value == s[6]);
    // within the node tolerance the node path must engage
    const InterpValue w = interpolate(k, s, 1e-12);
    CHECK(w.value == s[6]);
}

TEST_CASE("exponential interpolation accuracy (f=0.1, BT=0.25, P=8, u=0.3)") {
    const BaryKernel k = make_kernel(8, 1.0, 0.25);
    const auto s = exp_samples(8, 1.0, 0.1);
    const InterpValue v = interpolate(k, s, 0.3);
    CHECK(std::abs(v.value - expi(2.0 * M_PI * 0.1 * 0.3)) < 1e-7);
}

TEST_CASE("derivatives match central finite differences") {
    const BaryKernel k = make_kernel(8, 1.0, 0.25);
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> fd(-0.125, 0.125), ud(-0.5, 0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const double f = fd(gen);
        double u = ud(gen);
        if (std::abs(u) < 1e-3) u = 0.1;  // stay off the node path, it is tested separately
        const auto s = exp_samples(8, 1.0, f);
        const InterpValue v = interpolate(k, s, u);
        const double h1 = 1e-6;
        const cplx fd1 = (interpolate(k, s, u + h1).value - interpolate(k, s, u - h1).value) / (2 * h1);
        CHECK(std::abs(v.d1 - fd1) < 1e-6 * std::max(std::abs(v.d1), 1.0));
        const double h2 = 1e-4;
        const cplx fd2 = (interpolate(k, s, u + h2).value - 2.0 * v.value +
                          interpolate(k, s, u - h2).value) / (h2 * h2);
        CHECK(std::abs(v.d2 - fd2) < 1e-5 * std::max(std::abs(v.d2), 1.0));
    }
}

TEST_CASE("node-path derivatives agree with finite differences") {
    const BaryKernel k = make_kernel(8, 1.0, 0.25);
    const auto s = exp_samples(8, 1.0, 0.09);
    const InterpValue v = interpolate(k, s, 0.0);
    const double h = 1e-5;
    const cplx fd1 = (interpolate(k, s, h).value - interpolate(k, s, -h).value) / (2 * h);
    const cplx fd2 = (interpolate(k, s, h).value - 2.0 * v.value + interpolate(k, s, -h).value) / (h * h);
    CHECK(std::abs(v.d1 - fd1) < 1e-6 * std::max(std::abs(v.d1), 1.0));
    CHECK(std::abs(v.d2 - fd2) < 1e-5 * std::max(std::abs(v.d2), 1.0));
}

TEST_CASE("scaling the samples scales value and derivatives") {
    const BaryKernel k = make_kernel(6, 1.0, 0.25);
    const auto s = exp_samples(6, 1.0, 0.11);
    const InterpValue v = interpolate(k, s, 0.27);

    // power-of-two real scale commutes exactly
    std::vector<cplx> s2(s);
    for (auto& x : s2) x *= 2.0;
    const InterpValue v2 = interpolate(k, s2, 0.27);
    CHECK(v2.value == 2.0 * v.value);
    CHECK(v2.d1 == 2.0 * v.d1);
    CHECK(v2.d2 == 2.0 * v.d2);

    const cplx alpha{0.3, -1.9};
    std::vector<cplx> s3(s);
    for (auto& x : s3) x *= alpha;
    const InterpValue v3 = interpolate(k, s3, 0.27);
    CHECK(std::abs(v3.value - alpha * v.value) < 1e-13 * std::abs(alpha * v.value));
    CHECK(std::abs(v3.d1 - alpha * v.d1) < 1e-12 * std::max(std::abs(alpha * v.d1), 1.0));
    CHECK(std::abs(v3.d2 - alpha * v.d2) < 1e-11 * std::max(std::abs(alpha * v.d2), 1.0));
}

TEST_CASE("interpolate rejects bad input") {
    const BaryKernel k = make_kernel(4, 1.0, 0.25);
    std::vector<cplx> s(9, cplx{1.0, 0.0});
    CHECK_THROWS_AS(interpolate(k, s, 0.51), std::invalid_argument);
    CHECK_THROWS_AS(interpolate(k, s, -0.7), std::invalid_argument);
    std::vector<cplx> wrong(7, cplx{1.0, 0.0});
    CHECK_THROWS_AS(interpolate(k, wrong, 0.1), std::invalid_argument);
}

TEST_CASE("error spectrum: floor at f = 0, exponential decay in P") {
    std::vector<double> f_grid, u_grid;
    for (int i = 0; i < 48; ++i) f_grid.push_back(-0.125 + 0.25 * i / 47.0);
    for (int i = 0; i <= 96; ++i) u_grid.push_back(-0.5 + static_cast<double>(i) / 96.0);

    const std::vector<double> f0{0.0};
    const BaryKernel k6 = make_kernel(6, 1.0, 0.25);
    CHECK(error_spectrum(k6, f0, u_grid)[0] < 1e-13);

    std::vector<int> Ps{4, 5, 6, 8, 10};
    std::vector<double> maxE;
    for (int P : Ps) {
        const auto E = error_spectrum(make_kernel(P, 1.0, 0.25), f_grid, u_grid);
        maxE.push_back(*std::max_element(E.begin(), E.end()));
    }
    for (size_t i = 1; i < maxE.size(); ++i) CHECK(maxE[i] < maxE[i - 1]);

    // decay trend e^{-pi (1-BT) P}: P=10 over P=5 within a factor 100
    const double ratio = maxE[4] / maxE[1];
    const double trend = std::exp(-M_PI * 0.75 * 5.0);
    CHECK(ratio < 100.0 * trend);
    CHECK(ratio > trend / 100.0);
}

TEST_CASE("error spectrum slope tracks -pi(1-BT)") {
    std::vector<double> f_grid, u_grid;
    for (int i = 0; i < 48; ++i) f_grid.push_back(-0.125 + 0.25 * i / 47.0);
    for (int i = 0; i <= 96; ++i) u_grid.push_back(-0.5 + static_cast<double>(i) / 96.0);
    std::vector<double> Ps{4, 6, 8, 10, 12}, logs;
    for (double P : Ps) {
        const auto E = error_spectrum(make_kernel(static_cast<int>(P), 1.0, 0.25), f_grid, u_grid);
        logs.push_back(std::log(*std::max_element(E.begin(), E.end())));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(Ps.size());
    for (size_t i = 0; i < Ps.size(); ++i) {
        sx += Ps[i]; sy += logs[i]; sxx += Ps[i] * Ps[i]; sxy += Ps[i] * logs[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double target = -M_PI * 0.75;
    CHECK(slope / target > 0.7);
    CHECK(slope / target < 1.3);
}

TEST_CASE("error spectrum input validation") {
    const BaryKernel k = make_kernel(6, 1.0, 0.25);
    std::vector<double> ok_f{0.0}, ok_u{0.1};
    std::vector<double> empty;
    CHECK_THROWS_AS(error_spectrum(k, empty, ok_u), std::invalid_argument);
    CHECK_THROWS_AS(error_spectrum(k, ok_f, empty), std::invalid_argument);
    std::vector<double> bad_f{0.2};  // outside [-B/2, B/2] = [-0.125, 0.125]
    CHECK_THROWS_AS(error_spectrum(k, bad_f, ok_u), std::invalid_argument);
    std::vector<double> bad_u{0.6};
    CHECK_THROWS_AS(error_spectrum(k, ok_f, bad_u), std::invalid_argument);
}
