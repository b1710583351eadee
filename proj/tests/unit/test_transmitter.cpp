#include <doctest.h>

#include <filesystem>
#include <random>

#include "../oracles.hpp"
#include "gfdm/modmatrix.hpp"
#include "gfdm/spectral.hpp"
#include "gfdm/transmitter.hpp"

using namespace gfdm;

namespace {

CVec random_vector(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    CVec v(n);
    for (auto& x : v) x = {dist(rng), dist(rng)};
    return v;
}

double max_diff(const CVec& a, const CVec& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_SUITE("modmatrix") {
    TEST_CASE("direct matrix follows the element definition") {
        const std::size_t M = 3, N = 4, K = 12;
        const GfdmParams p{M, N, 0, 1.0, 0.0};
        const auto pulse = pulse_from_coefficients(random_vector(K, 2), p);
        const auto A = build_modmatrix_direct(pulse, p).a;
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t k = 0; k < N; ++k)
                for (std::size_t n = 0; n < K; ++n) {
                    const cdouble ref = pulse.g[(n + K - m * N) % K] *
                                        std::polar(1.0, 2 * std::numbers::pi * double(k * n) / double(N)) /
                                        std::sqrt(double(N));
                    CHECK(std::abs(A(n, m * N + k) - ref) < 1e-12);
                }
    }

    TEST_CASE("columns have unit norm") {
        const GfdmParams p{4, 8, 0, 1.0, 0.0};
        const auto A = build_modmatrix_direct(build_prototype_pulse({PulseFamily::RaisedCosine, 0.3}, p), p).a;
        for (Eigen::Index c = 0; c < A.cols(); ++c) CHECK(A.col(c).norm() == doctest::Approx(1.0));
    }

    TEST_CASE("factored and direct forms agree") {
        for (auto [M, N] : {std::pair<std::size_t, std::size_t>{2, 8}, {8, 2}, {4, 4}}) {
            const GfdmParams p{M, N, 0, 1.0, 0.0};
            const auto pulse = pulse_from_coefficients(random_vector(M * N, unsigned(M + N)), p);
            const auto d = build_modmatrix_direct(pulse, p).a;
            const auto f = build_modmatrix_factored(pulse, p).a;
            CHECK((d - f).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    TEST_CASE("OFDM-equivalent pulse gives a block-diagonal IDFT") {
        const std::size_t M = 4, N = 8;
        const GfdmParams p{M, N, 0, 1.0, 0.0};
        const auto A = build_modmatrix_direct(build_prototype_pulse({PulseFamily::RectTimeDelta, 0.0}, p), p).a;
        const auto ref = oracle::block_diag(oracle::idft_matrix(N), M);
        CHECK((A - ref).cwiseAbs().maxCoeff() < 1e-12);
    }

    TEST_CASE("capacity and size errors are typed") {
        const GfdmParams big{128, 64, 0, 1.0, 0.0};
        const auto pulse = build_prototype_pulse({PulseFamily::RaisedCosine, 0.1}, big);
        try {
            build_modmatrix_direct(pulse, big);
            FAIL("expected a capacity error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Capacity);
        }
        const GfdmParams odd{3, 4, 0, 1.0, 0.0};
        try {
            build_modmatrix_factored(build_prototype_pulse({PulseFamily::RaisedCosine, 0.1}, odd), odd);
            FAIL("expected an unsupported-size error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UnsupportedSize);
        }
    }
}

TEST_SUITE("transmitter") {
    TEST_CASE("fast modulation matches the dense product") {
        const GfdmParams p{16, 8, 0, 1.0, 0.0};
        const auto pulse = build_prototype_pulse({PulseFamily::RaisedCosine, 0.9}, p);
        const auto a = build_modmatrix_direct(pulse, p);
        const auto bar = spectral_diagonal(pulse, p).lambda_bar;
        for (unsigned s = 0; s < 5; ++s) {
            const CVec d = random_vector(p.size(), s);
            CHECK(max_diff(modulate_fast(p, bar, d).x, modulate_direct(a, d).x) < 1e-12);
        }
    }

    TEST_CASE("modulation is linear") {
        const GfdmParams p{8, 8, 0, 1.0, 0.0};
        const auto bar = spectral_diagonal(build_prototype_pulse({PulseFamily::RaisedCosine, 0.4}, p), p).lambda_bar;
        const FastModulator mod(p, bar);
        const CVec u = random_vector(64, 1), v = random_vector(64, 2);
        const cdouble a{0.3, -1.2}, b{2.0, 0.5};
        CVec w(64);
        for (std::size_t i = 0; i < 64; ++i) w[i] = a * u[i] + b * v[i];
        const CVec xu = mod.modulate(u), xv = mod.modulate(v), xw = mod.modulate(w);
        for (std::size_t i = 0; i < 64; ++i) CHECK(std::abs(xw[i] - (a * xu[i] + b * xv[i])) < 1e-12);
    }

    TEST_CASE("cyclic prefix copies the block tail") {
        const BasebandSignal x{CVec{1, 2, 3, 4, 5}, false, 0};
        const auto y = add_cp(x, 2);
        CHECK(y.has_cp);
        CHECK(y.n_cp == 2);
        CHECK(y.x == CVec{4, 5, 1, 2, 3, 4, 5});
        CHECK(add_cp(x, 0).x == x.x);
        CHECK_THROWS_AS(add_cp(y, 1), Error);
        CHECK_THROWS_AS(add_cp(x, 6), Error);
    }

    TEST_CASE("wrong data length is rejected") {
        const GfdmParams p{4, 4, 0, 1.0, 0.0};
        const CVec bar(16, 1.0);
        CHECK_THROWS_AS(modulate_fast(p, bar, CVec(15)), Error);
    }

    TEST_CASE("I/Q files round-trip") {
        const auto dir = std::filesystem::temp_directory_path() / "gfdm_iq_test";
        std::filesystem::create_directories(dir);
        const CVec s = random_vector(37, 4);
        write_iq_binary(dir / "x.iq", s);
        CHECK(read_iq_binary(dir / "x.iq") == s);
        CHECK(std::filesystem::file_size(dir / "x.iq") == 37 * 16);
        write_iq_csv(dir / "x.csv", s);
        CHECK(max_diff(read_iq_csv(dir / "x.csv"), s) < 1e-15);
        write_iq_sidecar(dir / "x.meta", {8, 128, 16, 3, "rc:0.1", "f64le"});
        const auto m = read_iq_sidecar(dir / "x.meta");
        CHECK(m.M == 8);
        CHECK(m.N == 128);
        CHECK(m.n_cp == 16);
        CHECK(m.blocks == 3);
        CHECK(m.pulse == "rc:0.1");
        CHECK_THROWS_AS(read_iq_binary(dir / "missing.iq"), Error);
        std::filesystem::remove_all(dir);
    }
}
