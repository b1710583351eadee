// gfdm command-line front end: modulate, demodulate, ber, flops, condition, selftest.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gfdm/fec.hpp"
#include "gfdm/flops.hpp"
#include "gfdm/modmatrix.hpp"
#include "gfdm/qam.hpp"
#include "gfdm/sim.hpp"
#include "gfdm/spectral.hpp"

namespace fs = std::filesystem;
using namespace gfdm;

namespace {

struct ConfigOptions {
    std::string config_file;
    std::string preset;
    std::vector<std::string> overrides;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
    cmd->add_option("-c,--config", opts.config_file, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("-p,--preset", opts.preset, "named preset: case1 (N=128, M=8) or case2 (N=8, M=128)");
    cmd->add_option("-s,--set", opts.overrides, "override a configuration key, e.g. --set snr_unit=ebn0");
}

sim::SimConfig resolve_config(const ConfigOptions& opts) {
    sim::SimConfig cfg = opts.preset.empty() ? sim::SimConfig{} : sim::preset(opts.preset);
    if (!opts.config_file.empty()) {
        std::ifstream is(opts.config_file);
        sim::apply_config_text(cfg, is);
    }
    for (const auto& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Configuration, "--set expects key=value, got '" + kv + "'");
        sim::apply_config_kv(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

// Relative output paths land under GFDM_OUTPUT_DIR when it is set.
fs::path output_path(const std::string& name) {
    fs::path p(name);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("GFDM_OUTPUT_DIR"); dir && *dir) {
            fs::create_directories(dir);
            p = fs::path(dir) / p;
        }
    }
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p;
}

std::ofstream open_output(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw Error(ErrorKind::Io, "cannot open '" + p.string() + "' for writing");
    return os;
}

template <typename Writer>
void emit(const std::string& out, Writer write) {
    if (out.empty() || out == "-") {
        write(std::cout);
        return;
    }
    const fs::path p = output_path(out);
    auto os = open_output(p);
    write(os);
    std::cerr << "wrote " << p.string() << '\n';
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        // lo:hi over powers of two
        const std::size_t lo = std::stoull(text.substr(0, colon));
        const std::size_t hi = std::stoull(text.substr(colon + 1));
        if (!is_power_of_two(lo) || lo > hi) throw Error(ErrorKind::Parameter, "bad power-of-two range '" + text + "'");
        for (std::size_t v = lo; v <= hi; v *= 2) out.push_back(v);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoull(tok));
    }
    if (out.empty()) throw Error(ErrorKind::Parameter, "empty size list");
    return out;
}

fs::path sidecar_for(const fs::path& samples) { return fs::path(samples.string() + ".meta"); }

bool is_csv(const fs::path& p) { return p.extension() == ".csv"; }

void write_bits(const fs::path& p, std::span<const std::uint8_t> bits) {
    auto os = open_output(p);
    for (auto b : bits) os << static_cast<char>('0' + b);
    os << '\n';
}

Bits read_bits(const fs::path& p) {
    std::ifstream is(p);
    if (!is) throw Error(ErrorKind::Io, "cannot open '" + p.string() + "'");
    Bits out;
    char c;
    while (is.get(c)) {
        if (c == '0' || c == '1') out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

int cmd_modulate(const ConfigOptions& opts, std::size_t blocks, const std::string& out, const std::string& bits_out,
                 const std::string& pulse_file) {
    sim::SimConfig cfg = resolve_config(opts);
    const GfdmParams& params = cfg.params;
    params.validate();
    const PrototypeFilter pulse = pulse_file.empty() ? build_prototype_pulse(cfg.pulse, params) : [&] {
        std::ifstream is(pulse_file);
        if (!is) throw Error(ErrorKind::Io, "cannot open pulse file '" + pulse_file + "'");
        return pulse_from_coefficients(read_pulse_csv(is), params);
    }();
    const auto diag = spectral_diagonal(pulse, params);
    const unsigned bps = bits_per_symbol(cfg.qam_order);

    Rng rng = make_rng(cfg.seed);
    std::optional<FastModulator> fast;
    std::optional<ModulationMatrix> dense;
    if (cfg.path == sim::ExecPath::Fast) fast.emplace(params, diag.lambda_bar);
    else dense = build_modmatrix_direct(pulse, params, cfg.oracle_cap);

    Bits bits(blocks * params.size() * bps);
    std::bernoulli_distribution coin(0.5);
    for (auto& b : bits) b = coin(rng);

    CVec samples;
    for (std::size_t blk = 0; blk < blocks; ++blk) {
        const std::span<const std::uint8_t> chunk(bits.data() + blk * params.size() * bps, params.size() * bps);
        const CVec d = qam_map(chunk, cfg.qam_order);
        const BasebandSignal x = fast ? BasebandSignal{fast->modulate(d), false, 0} : modulate_direct(*dense, d);
        const BasebandSignal x_cp = add_cp(x, params.n_cp);
        samples.insert(samples.end(), x_cp.x.begin(), x_cp.x.end());
    }

    const fs::path path = output_path(out);
    if (is_csv(path)) write_iq_csv(path, samples);
    else write_iq_binary(path, samples);
    write_iq_sidecar(sidecar_for(path),
                     {params.M, params.N, params.n_cp, blocks, pulse.spec.to_string(), is_csv(path) ? "csv" : "f64le"});
    if (!bits_out.empty()) write_bits(output_path(bits_out), bits);
    std::cerr << "wrote " << samples.size() << " samples (" << blocks << " blocks) to " << path.string() << '\n';
    return 0;
}

int cmd_demodulate(const ConfigOptions& opts, const std::string& in, const std::string& out,
                   const std::string& reference, const std::string& pulse_file) {
    sim::SimConfig cfg = resolve_config(opts);
    const fs::path path(in);
    const IqMetadata meta = read_iq_sidecar(sidecar_for(path));
    GfdmParams params = cfg.params;
    params.M = meta.M;
    params.N = meta.N;
    params.n_cp = meta.n_cp;
    if (pulse_file.empty() && meta.pulse != "custom") cfg.pulse = PulseSpec::parse(meta.pulse);

    const CVec samples = meta.format == "csv" ? read_iq_csv(path) : read_iq_binary(path);
    const std::size_t block_len = params.size() + params.n_cp;
    if (samples.size() % block_len != 0) {
        throw Error(ErrorKind::Io, "sample count is not a multiple of the block length " + std::to_string(block_len));
    }
    const PrototypeFilter pulse = pulse_file.empty() ? build_prototype_pulse(cfg.pulse, params) : [&] {
        std::ifstream is(pulse_file);
        if (!is) throw Error(ErrorKind::Io, "cannot open pulse file '" + pulse_file + "'");
        return pulse_from_coefficients(read_pulse_csv(is), params);
    }();
    const auto diag = spectral_diagonal(pulse, params);
    const double rho = params.snr_ratio();
    const FastEqualizer eq(params, build_deq(diag.lambda_bar, cfg.equalizer, rho));

    Bits bits;
    for (std::size_t off = 0; off < samples.size(); off += block_len) {
        const std::span<const cdouble> block(samples.data() + off, block_len);
        const CVec y = remove_cp(block, params, 1);
        const Bits b = qam_demap(eq.equalize(y), cfg.qam_order);
        bits.insert(bits.end(), b.begin(), b.end());
    }
    if (!out.empty()) write_bits(output_path(out), bits);
    std::cout << "blocks=" << samples.size() / block_len << " bits=" << bits.size();
    if (!reference.empty()) {
        const Bits ref = read_bits(reference);
        require_length(ref.size(), bits.size(), "reference bits");
        std::size_t errors = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != ref[i];
        std::cout << " bit_errors=" << errors;
    }
    std::cout << '\n';
    return 0;
}

int cmd_ber(const ConfigOptions& opts, const std::string& out, const std::string& plot, bool no_timing, bool ofdm) {
    const sim::SimConfig cfg = resolve_config(opts);
    const auto rows = ofdm ? sim::ofdm_baseline(cfg) : sim::run_ber_sweep(cfg);
    emit(out, [&](std::ostream& os) { sim::write_ber_csv(os, rows, cfg, !no_timing); });
    if (!plot.empty()) {
        const std::string csv_name = out.empty() || out == "-" ? "ber.csv" : fs::path(out).filename().string();
        emit(plot, [&](std::ostream& os) { sim::write_gnuplot_script(os, csv_name, cfg); });
    }
    return 0;
}

int cmd_flops(const std::string& m_text, const std::string& n_text, const std::vector<std::string>& scheme_names,
              const std::string& channel_name, std::size_t L, std::size_t I, const std::string& format,
              const std::string& out) {
    const auto ms = parse_sizes(m_text);
    const auto ns = parse_sizes(n_text);
    const flops::Channel channel = flops::parse_channel(channel_name);
    std::vector<flops::SchemeChannel> schemes;
    if (scheme_names.empty()) {
        for (auto s : flops::kAllSchemes)
            if (channel == flops::Channel::Awgn || !flops::is_transmitter(s)) schemes.push_back({s, channel});
    } else {
        for (const auto& name : scheme_names) schemes.push_back({flops::parse_scheme(name), channel});
    }
    const auto rows = flops::complexity_report(ms, ns, schemes, {L, I});
    emit(out, [&](std::ostream& os) {
        if (format == "md") flops::write_markdown(os, rows);
        else flops::write_csv(os, rows);
    });
    return 0;
}

int cmd_condition(std::size_t n, const std::string& m_text, const std::string& pulse, double snr_db,
                  const std::string& out) {
    const auto rows = sim::run_condition_sweep(n, parse_sizes(m_text), PulseSpec::parse(pulse), snr_db);
    emit(out, [&](std::ostream& os) { sim::write_condition_csv(os, rows); });
    return 0;
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

int cmd_selftest() {
    int failed = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        failed += ok ? 0 : 1;
    };

    for (auto [M, N] : {std::pair<std::size_t, std::size_t>{4, 8}, {8, 4}}) {
        const GfdmParams params{M, N, 0, 1.0, 0.0};
        const auto pulse = build_prototype_pulse({PulseFamily::RaisedCosine, 0.5}, params);
        const auto direct = build_modmatrix_direct(pulse, params);
        const auto factored = build_modmatrix_factored(pulse, params);
        const double err = (direct.a - factored.a).cwiseAbs().maxCoeff();
        check("factorization M=" + std::to_string(M) + " N=" + std::to_string(N), err < 1e-10,
              "max|A_direct - A_factored| = " + sci(err));

        Rng rng = make_rng(7);
        CVec d(params.size());
        for (auto& v : d) v = complex_gaussian(rng, 1.0);
        const auto diag = spectral_diagonal(pulse, params);
        const CVec x = modulate_fast(params, diag.lambda_bar, d).x;
        const CVec d_hat = equalize_fast(x, build_deq(diag.lambda_bar, EqualizerKind::ZF, 0.0), params);
        double rt = 0;
        for (std::size_t i = 0; i < d.size(); ++i) rt = std::max(rt, std::abs(d[i] - d_hat[i]));
        check("zf round trip M=" + std::to_string(M) + " N=" + std::to_string(N), rt < 1e-10,
              "max error = " + sci(rt));
    }

    check("fft_flops(16)", flops::fft_flops(16) == 92, std::to_string(flops::fft_flops(16)));
    const auto tx = flops::scheme_flops(flops::Scheme::ProposedTx, flops::Channel::Awgn, 8, 128);
    check("PROPOSED_TX(8,128)", tx == 37440, std::to_string(tx));

    Bits info(200);
    Rng rng = make_rng(3);
    for (auto& b : info) b = static_cast<std::uint8_t>(rng() & 1u);
    check("viterbi round trip", fec::viterbi_decode(fec::conv_encode(info)) == info, "200 bits");

    std::cout << (failed == 0 ? "selftest passed" : "selftest FAILED") << '\n';
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GFDM transceiver toolkit"};
    app.require_subcommand(1);

    ConfigOptions mod_opts, demod_opts, ber_opts;

    auto* mod = app.add_subcommand("modulate", "Modulate random 16-QAM blocks and write baseband I/Q");
    add_config_options(mod, mod_opts);
    std::size_t blocks = 1;
    std::string mod_out = "gfdm_tx.iq", mod_bits, mod_pulse;
    mod->add_option("-b,--blocks", blocks, "number of GFDM blocks")->check(CLI::PositiveNumber);
    mod->add_option("-o,--out", mod_out, "output samples (.csv for text, anything else for f64le binary)");
    mod->add_option("--bits-out", mod_bits, "write the transmitted bits as a 0/1 text file");
    mod->add_option("--pulse-file", mod_pulse, "prototype filter CSV (index,re,im)")->check(CLI::ExistingFile);

    auto* demod = app.add_subcommand("demodulate", "Equalize and demap baseband I/Q written by 'modulate'");
    add_config_options(demod, demod_opts);
    std::string demod_in, demod_out, demod_ref, demod_pulse;
    demod->add_option("-i,--in", demod_in, "input samples; the .meta sidecar is read alongside")->required();
    demod->add_option("-o,--out", demod_out, "write decided bits as a 0/1 text file");
    demod->add_option("-r,--reference", demod_ref, "reference bits to count errors against")
        ->check(CLI::ExistingFile);
    demod->add_option("--pulse-file", demod_pulse, "prototype filter CSV (index,re,im)")->check(CLI::ExistingFile);

    auto* ber = app.add_subcommand("ber", "Monte Carlo BER sweep");
    add_config_options(ber, ber_opts);
    std::string ber_out, ber_plot;
    bool no_timing = false, ofdm = false;
    ber->add_option("-o,--out", ber_out, "CSV output ('-' or empty for stdout)");
    ber->add_option("--plot", ber_plot, "also write a gnuplot script");
    ber->add_flag("--no-timing", no_timing, "omit the wall_time_s column");
    ber->add_flag("--ofdm", ofdm, "run the CP-OFDM baseline instead");

    auto* fl = app.add_subcommand("flops", "Flop-count report");
    std::string fl_m = "16", fl_n = "2:1024", fl_channel = "AWGN", fl_format = "csv", fl_out;
    std::vector<std::string> fl_schemes;
    std::size_t fl_L = 0, fl_I = 8;
    fl->add_option("-M", fl_m, "M values: comma list or lo:hi powers of two");
    fl->add_option("-N", fl_n, "N values: comma list or lo:hi powers of two");
    fl->add_option("--scheme", fl_schemes, "scheme ids (default: all valid for the channel)");
    fl->add_option("--channel", fl_channel, "AWGN, FADING_ZF_FDE or FADING_MMSE_FDE");
    fl->add_option("-L", fl_L, "filter frequency support (0 means N)");
    fl->add_option("-I", fl_I, "SIC iterations");
    fl->add_option("--format", fl_format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
    fl->add_option("-o,--out", fl_out, "output file");

    auto* cond = app.add_subcommand("condition", "Condition number of the equalization matrix versus M");
    std::size_t cond_n = 16;
    std::string cond_m = "2:1024", cond_pulse = "rc:0.1", cond_out;
    double cond_snr = 30.0;
    cond->add_option("-N", cond_n, "subcarriers");
    cond->add_option("-M", cond_m, "M values: comma list or lo:hi powers of two");
    cond->add_option("--pulse", cond_pulse, "rc:<alpha>, rect-delta or rect-full");
    cond->add_option("--snr-db", cond_snr, "sigma_d^2 / sigma_nu^2 in dB for the MMSE kinds");
    cond->add_option("-o,--out", cond_out, "output file");

    auto* self = app.add_subcommand("selftest", "Quick internal consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*mod) return cmd_modulate(mod_opts, blocks, mod_out, mod_bits, mod_pulse);
        if (*demod) return cmd_demodulate(demod_opts, demod_in, demod_out, demod_ref, demod_pulse);
        if (*ber) return cmd_ber(ber_opts, ber_out, ber_plot, no_timing, ofdm);
        if (*fl) return cmd_flops(fl_m, fl_n, fl_schemes, fl_channel, fl_L, fl_I, fl_format, fl_out);
        if (*cond) return cmd_condition(cond_n, cond_m, cond_pulse, cond_snr, cond_out);
        if (*self) return cmd_selftest();
    } catch (const Error& e) {
        std::cerr << e.kind_name() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
