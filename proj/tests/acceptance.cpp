// Acceptance checks. Prints one PASS/FAIL line per criterion, preceded by
// indented detail lines. Usage: gfdm_acceptance [criterion...]

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "gfdm/channel.hpp"
#include "gfdm/flops.hpp"
#include "gfdm/modmatrix.hpp"
#include "gfdm/qam.hpp"
#include "gfdm/sim.hpp"
#include "gfdm/spectral.hpp"

using namespace gfdm;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void expect(bool ok, const std::string& what) {
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
        pass = pass && ok;
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CVec random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    CVec v(n);
    for (auto& x : v) x = {dist(rng), dist(rng)};
    return v;
}

Eigen::VectorXcd as_eigen(const CVec& v) {
    return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

using Geometry = std::pair<std::size_t, std::size_t>;

const std::vector<Geometry> kOracleSizes{{2, 2}, {4, 8}, {8, 4}, {16, 16}};
const std::vector<PulseSpec> kOraclePulses{
    {PulseFamily::RaisedCosine, 0.1}, {PulseFamily::RaisedCosine, 0.9}, {PulseFamily::RectTimeDelta, 0.0}};

constexpr EqualizerKind kKinds[] = {EqualizerKind::MF, EqualizerKind::ZF, EqualizerKind::MmseBiased,
                                    EqualizerKind::MmseUnbiased};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (auto [M, N] : kOracleSizes) {
        const GfdmParams p{M, N, 0, 1.0, 0.0};
        for (const auto& spec : kOraclePulses) {
            const auto pulse = build_prototype_pulse(spec, p);
            const auto d = build_modmatrix_direct(pulse, p).a;
            const auto f = build_modmatrix_factored(pulse, p).a;
            const double err = (d - f).cwiseAbs().maxCoeff();
            worst = std::max(worst, err);
            o.expect(err < 1e-10, fmt("M=%zu N=%zu %s: max|A_direct - A_factored| = %.2e", M, N,
                                      spec.to_string().c_str(), err));
        }
    }
    const double t = seconds_since(t0);
    o.expect(t < 10.0, fmt("runtime %.3f s < 10 s", t));
    o.details.push_back(fmt("worst %.2e (tolerance 1e-10)", worst));
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::mt19937_64 rng(2);
    for (auto [M, N] : kOracleSizes) {
        const GfdmParams p{M, N, 0, 1.0, 0.0};
        for (const auto& spec : kOraclePulses) {
            const auto pulse = build_prototype_pulse(spec, p);
            const auto a = build_modmatrix_direct(pulse, p);
            const FastModulator mod(p, spectral_diagonal(pulse, p).lambda_bar);
            double worst = 0;
            for (int trial = 0; trial < 100; ++trial) {
                const CVec d = random_vector(p.size(), rng);
                const Eigen::VectorXcd ref = as_eigen(modulate_direct(a, d).x);
                worst = std::max(worst, (as_eigen(mod.modulate(d)) - ref).norm() / ref.norm());
            }
            o.expect(worst < 1e-10,
                     fmt("M=%zu N=%zu %s: worst relative error %.2e over 100 vectors (< 1e-10)", M, N,
                         spec.to_string().c_str(), worst));
        }
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3);
    for (auto [M, N] : std::vector<Geometry>{{4, 4}, {8, 16}, {16, 8}}) {
        const GfdmParams p{M, N, 0, 1.0, 0.0};
        for (double alpha : {0.1, 0.9}) {
            const auto pulse = build_prototype_pulse({PulseFamily::RaisedCosine, alpha}, p);
            const auto a = build_modmatrix_direct(pulse, p);
            const auto bar = spectral_diagonal(pulse, p).lambda_bar;
            for (double rho : {0.0, 0.1, 1.0}) {
                for (EqualizerKind kind : kKinds) {
                    const FastEqualizer fast(p, build_deq(bar, kind, rho));
                    const CMatrix dense = build_equalizer_direct(a, kind, rho);
                    double worst = 0;
                    for (int trial = 0; trial < 5; ++trial) {
                        const CVec y = random_vector(p.size(), rng);
                        const Eigen::VectorXcd ref = dense * as_eigen(y);
                        worst = std::max(worst, (as_eigen(fast.equalize(y)) - ref).norm() / ref.norm());
                    }
                    o.expect(worst < 1e-9, fmt("M=%zu N=%zu rc:%.1f rho=%.1f %-13s relative error %.2e (< 1e-9)", M,
                                               N, alpha, rho, to_string(kind), worst));
                }
            }
        }
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> rho_dist(0.01, 2.0);
    double worst_spread = 0, worst_mean = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const GfdmParams p = trial % 2 == 0 ? GfdmParams{4, 8, 0, 1.0, 0.0} : GfdmParams{8, 4, 0, 1.0, 0.0};
        const auto pulse = pulse_from_coefficients(random_vector(p.size(), rng), p);
        const double rho = rho_dist(rng);
        const CMatrix& A = build_modmatrix_direct(pulse, p).a;
        const CMatrix gram = A.adjoint() * A;
        const CMatrix reg = gram + rho * CMatrix::Identity(A.rows(), A.cols());
        const Eigen::VectorXcd diag = reg.partialPivLu().solve(gram).diagonal();
        const double mean = diag.real().mean();
        double spread = 0;
        for (Eigen::Index i = 0; i < diag.size(); ++i) spread = std::max(spread, std::abs(diag(i) - mean));
        const double closed = bias_scalar(spectral_diagonal(pulse, p).lambda_bar, rho);
        worst_spread = std::max(worst_spread, spread);
        worst_mean = std::max(worst_mean, std::abs(mean - closed));
    }
    o.expect(worst_spread < 1e-9, fmt("dense bias diagonal constant: worst deviation %.2e (< 1e-9)", worst_spread));
    o.expect(worst_mean < 1e-9, fmt("mean vs closed form: worst difference %.2e (< 1e-9)", worst_mean));
    return o;
}

Outcome criterion5() {
    Outcome o;
    for (const char* name : {"case1", "case2"}) {
        for (double alpha : {0.1, 0.9}) {
            const sim::SimConfig cfg = sim::preset(name);
            const GfdmParams& p = cfg.params;
            const auto bar =
                spectral_diagonal(build_prototype_pulse({PulseFamily::RaisedCosine, alpha}, p), p).lambda_bar;
            const FastModulator mod(p, bar);
            const FastEqualizer zf(p, build_deq(bar, EqualizerKind::ZF, 0.0));
            Rng rng = make_rng(5, alpha > 0.5);
            double err_awgn = 0, err_etu = 0;
            for (int blk = 0; blk < 10; ++blk) {
                Bits bits(p.size() * 4);
                for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
                const CVec d = qam_map(bits, 16);
                const auto x_cp = add_cp({mod.modulate(d), false, 0}, p.n_cp);

                const CVec one{1.0};
                const CVec y_awgn = remove_cp(apply_channel(x_cp, one, 0.0, rng), p, 1);
                const CVec d_awgn = zf.equalize(y_awgn);

                const auto ch = draw_channel(ChannelProfile::etu(), cfg.sample_rate_hz, p, rng);
                const CVec y = remove_cp(apply_channel(x_cp, ch.h, 0.0, rng), p, ch.taps());
                const CVec d_etu = zf.equalize(fde_equalize(y, ch.lambda, FdeKind::ZF, 0.0));
                for (std::size_t i = 0; i < d.size(); ++i) {
                    err_awgn = std::max(err_awgn, std::abs(d_awgn[i] - d[i]));
                    err_etu = std::max(err_etu, std::abs(d_etu[i] - d[i]));
                }
            }
            o.expect(err_awgn < 1e-8, fmt("%s rc:%.1f AWGN + ZF: max symbol error %.2e (< 1e-8)", name, alpha, err_awgn));
            o.expect(err_etu < 1e-8,
                     fmt("%s rc:%.1f ETU + ZF-FDE + ZF: max symbol error %.2e (< 1e-8)", name, alpha, err_etu));
        }
    }
    return o;
}

Outcome criterion6() {
    using namespace gfdm::flops;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    o.expect(fft_flops(16) == 92, fmt("fft_flops(16) = %llu (expected 92)", (unsigned long long)fft_flops(16)));
    o.expect(fft_flops(2) == 4, fmt("fft_flops(2) = %llu (expected 4)", (unsigned long long)fft_flops(2)));
    const Count tx = scheme_flops(Scheme::ProposedTx, Channel::Awgn, 8, 128);
    o.expect(tx == 37440, fmt("PROPOSED_TX(M=8, N=128) = %llu (expected 37440)", (unsigned long long)tx));

    // Sweep grids: N = 16 with M in [2, 1024], and M = 16 with N in [2, 1024].
    double lo = 1e300, hi = 0;
    Geometry at_lo{}, at_hi{};
    for (std::size_t v = 2; v <= 1024; v *= 2) {
        for (Geometry g : {Geometry{v, 16}, Geometry{16, v}}) {
            const double r = double(scheme_flops(Scheme::ProposedTx, Channel::Awgn, g.first, g.second)) /
                             double(scheme_flops(Scheme::OfdmTx, Channel::Awgn, g.first, g.second));
            if (r < lo) lo = r, at_lo = g;
            if (r > hi) hi = r, at_hi = g;
        }
    }
    o.expect(lo >= 2.0 && hi <= 10.0,
             fmt("PROPOSED_TX/OFDM_TX over the sweep grids spans [%.2f (M=%zu,N=%zu), %.2f (M=%zu,N=%zu)]; "
                 "required within [2, 10]",
                 lo, at_lo.first, at_lo.second, hi, at_hi.first, at_hi.second));

    const double farhang = double(scheme_flops(Scheme::FarhangTx, Channel::Awgn, 1024, 16)) /
                           double(scheme_flops(Scheme::ProposedTx, Channel::Awgn, 1024, 16));
    o.expect(farhang >= 50.0, fmt("FARHANG_TX/PROPOSED_TX at (M=1024, N=16) = %.2f (>= 50)", farhang));

    const Count again = scheme_flops(Scheme::ProposedTx, Channel::Awgn, 8, 128);
    o.expect(again == tx, "repeated evaluation is integer-identical");
    const double t = seconds_since(t0);
    o.expect(t < 1.0, fmt("runtime %.4f s < 1 s", t));
    return o;
}

Outcome criterion7() {
    Outcome o;
    double worst = 0;
    for (auto [M, N] : std::vector<Geometry>{{2, 16}, {4, 16}, {8, 16}, {16, 16}, {4, 64}, {16, 8}, {8, 32}}) {
        const GfdmParams p{M, N, 0, 1.0, 0.0};
        for (double alpha : {0.1, 0.9}) {
            const auto pulse = build_prototype_pulse({PulseFamily::RaisedCosine, alpha}, p);
            const auto a = build_modmatrix_direct(pulse, p);
            const auto bar = spectral_diagonal(pulse, p).lambda_bar;
            for (EqualizerKind kind : kKinds) {
                const double shortcut = condition_number(kind, bar, 1e-3);
                const double dense = oracle::svd_condition(build_equalizer_direct(a, kind, 1e-3));
                worst = std::max(worst, std::abs(shortcut - dense) / dense);
            }
        }
    }
    {
        std::mt19937_64 rng(7);
        const GfdmParams p{8, 8, 0, 1.0, 0.0};
        for (int trial = 0; trial < 5; ++trial) {
            const auto pulse = pulse_from_coefficients(random_vector(p.size(), rng), p);
            const auto a = build_modmatrix_direct(pulse, p);
            const auto bar = spectral_diagonal(pulse, p).lambda_bar;
            for (EqualizerKind kind : kKinds) {
                const double shortcut = condition_number(kind, bar, 1e-3);
                const double dense = oracle::svd_condition(build_equalizer_direct(a, kind, 1e-3));
                worst = std::max(worst, std::abs(shortcut - dense) / dense);
            }
        }
    }
    o.expect(worst < 1e-6, fmt("shortcut vs dense SVD, MN <= 256: worst relative difference %.2e (< 1e-6)", worst));

    auto kappa = [](std::size_t M, double alpha, EqualizerKind kind) {
        const GfdmParams p{M, 16, 0, 1.0, 0.0};
        const auto bar =
            spectral_diagonal(build_prototype_pulse({PulseFamily::RaisedCosine, alpha}, p), p).lambda_bar;
        return condition_number(kind, bar, 1e-3);
    };
    const double zf4 = kappa(4, 0.9, EqualizerKind::ZF), zf64 = kappa(64, 0.9, EqualizerKind::ZF);
    o.expect(zf64 > zf4, fmt("N=16 ROF 0.9: kappa_ZF(64) = %.3f > kappa_ZF(4) = %.3f", zf64, zf4));
    const double r = kappa(1024, 0.9, EqualizerKind::MmseUnbiased) / kappa(256, 0.9, EqualizerKind::MmseUnbiased);
    o.expect(r < 1.1, fmt("N=16 ROF 0.9 at 30 dB: kappa_MMSE(1024)/kappa_MMSE(256) = %.4f (< 1.1)", r));
    const double r01 = kappa(1024, 0.1, EqualizerKind::MmseUnbiased) / kappa(256, 0.1, EqualizerKind::MmseUnbiased);
    o.details.push_back(fmt("info N=16 ROF 0.1 at 30 dB: kappa_MMSE(1024)/kappa_MMSE(256) = %.4f", r01));
    return o;
}

double mc_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1 - p) / double(n)); }

Outcome criterion8() {
    Outcome o;

    {  // (a) OFDM-equivalent pulse against the closed form.
        sim::SimConfig cfg = sim::preset("case1");
        cfg.pulse = {PulseFamily::RectTimeDelta, 0.0};
        cfg.equalizer = EqualizerKind::ZF;
        cfg.snr_unit = sim::SnrUnit::EbN0;
        cfg.snr_grid_db = {8, 10, 12};
        cfg.min_bits = 1'000'000;
        for (const auto& r : sim::run_ber_sweep(cfg)) {
            const double p = oracle::qam16_ber(std::pow(10.0, cfg.es_n0_db(r.snr_db) / 10.0));
            const double s = mc_sigma(p, r.bits_simulated);
            o.expect(std::abs(r.ber - p) < 3 * s,
                     fmt("(a) Eb/N0=%.0f dB: BER %.4e vs closed form %.4e, |diff| = %.2f sigma (< 3)", r.snr_db, r.ber,
                         p, std::abs(r.ber - p) / s));
        }
    }

    {  // (b) fast and direct paths on shared noise.
        struct Case {
            const char* preset;
            const char* channel;
            EqualizerKind eq;
            bool coding;
        };
        for (const Case c : {Case{"case1", "awgn", EqualizerKind::ZF, false},
                             Case{"case2", "awgn", EqualizerKind::MmseUnbiased, false},
                             Case{"case1", "ETU", EqualizerKind::MmseUnbiased, true},
                             Case{"case2", "ETU", EqualizerKind::ZF, false}}) {
            sim::SimConfig cfg = sim::preset(c.preset);
            cfg.channel = c.channel;
            cfg.equalizer = c.eq;
            cfg.coding = c.coding;
            cfg.pulse = {PulseFamily::RaisedCosine, 0.1};
            cfg.snr_unit = sim::SnrUnit::EsN0;
            cfg.snr_grid_db = {10, 20};
            cfg.min_bits = 100'000;
            cfg.record_decisions = true;
            const auto fast = sim::run_ber_sweep(cfg);
            cfg.path = sim::ExecPath::Direct;
            const auto direct = sim::run_ber_sweep(cfg);
            bool same = true;
            std::uint64_t errors = 0;
            for (std::size_t i = 0; i < fast.size(); ++i) {
                same = same && fast[i].decisions == direct[i].decisions;
                errors += fast[i].bit_errors;
            }
            o.expect(same, fmt("(b) %s %s %s%s: fast and direct decisions bit-identical (%llu errors in both)",
                               c.preset, c.channel, to_string(c.eq), c.coding ? " coded" : "",
                               (unsigned long long)errors));
        }
    }

    {  // (c) bias correction at ROF 0.9, Case II, AWGN.
        sim::SimConfig cfg = sim::preset("case2");
        cfg.pulse = {PulseFamily::RaisedCosine, 0.9};
        cfg.snr_unit = sim::SnrUnit::EbN0;
        cfg.snr_grid_db = {8, 10, 12};
        cfg.min_bits = 1'000'000;
        cfg.equalizer = EqualizerKind::MmseUnbiased;
        const auto unbiased = sim::run_ber_sweep(cfg);
        cfg.equalizer = EqualizerKind::MmseBiased;
        const auto biased = sim::run_ber_sweep(cfg);
        for (std::size_t i = 0; i < unbiased.size(); ++i) {
            const double s = mc_sigma(biased[i].ber, biased[i].bits_simulated);
            o.expect(unbiased[i].ber <= biased[i].ber + s,
                     fmt("(c) Eb/N0=%.0f dB: unbiased %.4e <= biased %.4e + 1 sigma (%.1e)", unbiased[i].snr_db,
                         unbiased[i].ber, biased[i].ber, s));
        }
    }

    {  // (d) coded fading, Case II, ROF 0.1: MMSE receiver against ZF receiver.
        sim::SimConfig cfg = sim::preset("case2");
        cfg.pulse = {PulseFamily::RaisedCosine, 0.1};
        cfg.channel = "ETU";
        cfg.coding = true;
        cfg.snr_unit = sim::SnrUnit::EbN0;
        cfg.snr_grid_db = {20};
        cfg.min_bits = 1'000'000;
        cfg.fde = FdeKind::MMSE;
        cfg.equalizer = EqualizerKind::MmseUnbiased;
        const auto mmse = sim::run_ber_sweep(cfg)[0];
        cfg.fde = FdeKind::ZF;
        cfg.equalizer = EqualizerKind::ZF;
        const auto zf = sim::run_ber_sweep(cfg)[0];
        o.expect(2 * mmse.ber < zf.ber,
                 fmt("(d) ETU coded Eb/N0=20 dB: MMSE receiver %.3e vs ZF receiver %.3e (ratio %.1f, need > 2)",
                     mmse.ber, zf.ber, zf.ber / std::max(mmse.ber, 1e-300)));
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    sim::SimConfig cfg = sim::preset("case2");
    cfg.channel = "ETU";
    cfg.coding = true;
    cfg.snr_unit = sim::SnrUnit::EbN0;
    cfg.snr_grid_db = {8, 12};
    cfg.min_bits = 200'000;
    cfg.batch_blocks = 4;
    auto csv = [&](unsigned workers) {
        cfg.workers = workers;
        std::ostringstream os;
        sim::write_ber_csv(os, sim::run_ber_sweep(cfg), cfg, false);
        return os.str();
    };
    const std::string ref = csv(1);
    for (unsigned w : {1u, 4u, 8u}) o.expect(csv(w) == ref, fmt("workers=%u: CSV byte-identical to workers=1", w));
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"factorization oracle", criterion1},  {"transmitter equivalence", criterion2},
    {"receiver equivalence", criterion3},  {"bias scalar", criterion4},
    {"perfect reconstruction", criterion5}, {"flop model", criterion6},
    {"condition number", criterion7},       {"BER properties", criterion8},
    {"determinism", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!selected.empty() && !selected.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = kCriteria[i].second();
        } catch (const Error& e) {
            o.expect(false, std::string("unexpected ") + e.kind_name() + ": " + e.what());
        }
        for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
        std::printf("%s criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, kCriteria[i].first.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
