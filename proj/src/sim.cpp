#include "gfdm/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "gfdm/fec.hpp"
#include "gfdm/modmatrix.hpp"
#include "gfdm/qam.hpp"
#include "gfdm/spectral.hpp"
#include "gfdm/transmitter.hpp"

namespace gfdm::sim {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw Error(ErrorKind::Configuration, "invalid value '" + value + "' for '" + key + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        // Accept 1e6-style counts as well as plain integers.
        const double d = std::stod(value, &pos);
        if (pos != value.size() || d < 0 || d != std::floor(d) || d > 1.8e19) bad_value(key, value);
        if (value.find_first_of(".eE") == std::string::npos) return std::stoull(value);
        return static_cast<std::uint64_t>(d);
    } catch (const std::logic_error&) {
        bad_value(key, value);
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) bad_value(key, value);
        return d;
    } catch (const std::logic_error&) {
        bad_value(key, value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    const std::string v = lower(value);
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    bad_value(key, value);
}

// "a,b,c" or "start:step:stop" (inclusive).
std::vector<double> parse_grid(const std::string& key, const std::string& value) {
    std::vector<double> out;
    if (value.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::istringstream is(value);
        std::string tok;
        while (std::getline(is, tok, ':')) parts.push_back(parse_double(key, trim(tok)));
        if (parts.size() != 3 || !(parts[1] > 0) || parts[2] < parts[0]) bad_value(key, value);
        const auto count = static_cast<std::size_t>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
        return out;
    }
    std::string cleaned = value;
    for (char& c : cleaned)
        if (c == ',' || c == '[' || c == ']') c = ' ';
    std::istringstream is(cleaned);
    std::string tok;
    while (is >> tok) out.push_back(parse_double(key, tok));
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

// Everything that is fixed for a sweep and shared read-only by the workers.
struct Chain {
    GfdmParams params;
    PrototypeFilter pulse;
    SpectralDiagonal diag;
    std::optional<FastModulator> fast_mod;
    std::optional<ModulationMatrix> dense;
    std::optional<ChannelProfile> profile;
    unsigned bps = 0;
    std::size_t code_bits = 0;  // bits carried per block
    std::size_t info_bits = 0;  // information bits per block
};

Chain build_chain(const SimConfig& cfg) {
    Chain c;
    c.params = cfg.params;
    c.pulse = build_prototype_pulse(cfg.pulse, cfg.params);
    c.diag = spectral_diagonal(c.pulse, cfg.params);
    if (cfg.path == ExecPath::Fast) {
        c.fast_mod.emplace(cfg.params, c.diag.lambda_bar);
    } else {
        c.dense = build_modmatrix_direct(c.pulse, cfg.params, cfg.oracle_cap);
    }
    if (!cfg.is_awgn()) c.profile = ChannelProfile::resolve(cfg.channel);
    c.bps = bits_per_symbol(cfg.qam_order);
    c.code_bits = cfg.params.size() * c.bps;
    c.info_bits = cfg.coding ? c.code_bits / 2 - fec::kTailBits : c.code_bits;
    return c;
}

struct PointEqualizer {
    std::optional<FastEqualizer> fast;
    CMatrix dense;
};

PointEqualizer build_point_equalizer(const SimConfig& cfg, const Chain& c, double rho) {
    PointEqualizer eq;
    if (cfg.path == ExecPath::Fast) {
        eq.fast.emplace(cfg.params, build_deq(c.diag.lambda_bar, cfg.equalizer, rho));
    } else {
        eq.dense = build_equalizer_direct(*c.dense, cfg.equalizer, rho);
    }
    return eq;
}

void random_bits(Rng& rng, std::span<std::uint8_t> out) {
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i % 64 == 0) word = rng();
        out[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
}

struct BatchResult {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    Bits decisions;
};

BatchResult run_batch(const SimConfig& cfg, const Chain& c, const PointEqualizer& eq, double sigma_nu2,
                      double rho, std::size_t point, std::size_t batch, std::size_t blocks) {
    Rng rng = make_rng(cfg.seed, point, batch);
    const std::size_t K = cfg.params.size();
    BatchResult r;
    r.decisions.reserve(blocks * c.info_bits);
    Bits info(c.info_bits);
    const CVec unit_channel{cdouble{1.0, 0.0}};

    for (std::size_t blk = 0; blk < blocks; ++blk) {
        random_bits(rng, info);
        const Bits coded = cfg.coding ? fec::conv_encode(info) : info;
        const CVec d = qam_map(coded, cfg.qam_order);

        BasebandSignal x;
        if (c.fast_mod) {
            x = {c.fast_mod->modulate(d), false, 0};
        } else {
            x = modulate_direct(*c.dense, d);
        }
        const BasebandSignal x_cp = add_cp(x, cfg.params.n_cp);

        std::optional<ChannelRealization> ch;
        if (c.profile) ch = draw_channel(*c.profile, cfg.sample_rate_hz, cfg.params, rng);
        const std::span<const cdouble> h = ch ? std::span<const cdouble>(ch->h) : std::span<const cdouble>(unit_channel);

        const CVec z = apply_channel(x_cp, h, sigma_nu2, rng);
        CVec y = remove_cp(z, cfg.params, h.size());
        if (ch) y = fde_equalize(y, ch->lambda, cfg.fde, rho);

        CVec d_hat(K);
        if (eq.fast) {
            eq.fast->equalize(y, d_hat);
        } else {
            Eigen::Map<const Eigen::VectorXcd> yv(y.data(), static_cast<Eigen::Index>(K));
            Eigen::Map<Eigen::VectorXcd>(d_hat.data(), static_cast<Eigen::Index>(K)) = eq.dense * yv;
        }

        const Bits hard = qam_demap(d_hat, cfg.qam_order);
        const Bits decided = cfg.coding ? fec::viterbi_decode(hard) : hard;
        for (std::size_t i = 0; i < c.info_bits; ++i) r.errors += decided[i] != info[i];
        r.bits += c.info_bits;
        r.decisions.insert(r.decisions.end(), decided.begin(), decided.end());
    }
    return r;
}

BerRecord run_point(const SimConfig& cfg, const Chain& c, std::size_t point, double snr_db) {
    const auto t0 = std::chrono::steady_clock::now();
    const double es_n0 = std::pow(10.0, cfg.es_n0_db(snr_db) / 10.0);
    const double sigma_nu2 = std::isinf(es_n0) ? 0.0 : cfg.params.sigma_d2 / es_n0;
    const double rho = sigma_nu2 / cfg.params.sigma_d2;
    const PointEqualizer eq = build_point_equalizer(cfg, c, rho);

    const std::size_t blocks = static_cast<std::size_t>((cfg.min_bits + c.info_bits - 1) / c.info_bits);
    const std::size_t batches = (blocks + cfg.batch_blocks - 1) / cfg.batch_blocks;
    std::vector<BatchResult> results(batches);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t b = next++; b < batches; b = next++) {
            try {
                const std::size_t n = std::min(cfg.batch_blocks, blocks - b * cfg.batch_blocks);
                results[b] = run_batch(cfg, c, eq, sigma_nu2, rho, point, b, n);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = batches;
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(batches)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    BerRecord rec;
    rec.snr_db = snr_db;
    Bits all;
    for (auto& r : results) {
        rec.bits_simulated += r.bits;
        rec.bit_errors += r.errors;
        all.insert(all.end(), r.decisions.begin(), r.decisions.end());
    }
    rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits_simulated);
    rec.decision_digest = fnv1a(all);
    if (cfg.record_decisions) rec.decisions = std::move(all);
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

const char* unit_name(SnrUnit u) { return u == SnrUnit::EsN0 ? "esn0" : "ebn0"; }

}  // namespace

bool SimConfig::is_awgn() const { return lower(channel) == "awgn"; }

double SimConfig::es_n0_db(double snr_db) const {
    if (!snr_unit) throw Error(ErrorKind::Configuration, "snr_unit must be set to esn0 or ebn0");
    if (*snr_unit == SnrUnit::EsN0) return snr_db;
    return snr_db + 10.0 * std::log10(static_cast<double>(bits_per_symbol(qam_order)) * code_rate());
}

void SimConfig::validate() const {
    params.validate();
    if (!snr_unit) throw Error(ErrorKind::Configuration, "snr_unit must be set to esn0 or ebn0");
    if (snr_grid_db.empty()) throw Error(ErrorKind::Configuration, "snr_grid_db is empty");
    for (std::size_t i = 1; i < snr_grid_db.size(); ++i) {
        if (!(snr_grid_db[i] > snr_grid_db[i - 1])) {
            throw Error(ErrorKind::Configuration, "snr_grid_db must be strictly increasing");
        }
    }
    for (double s : snr_grid_db)
        if (std::isnan(s)) throw Error(ErrorKind::Configuration, "snr_grid_db contains NaN");
    if (min_bits < 10'000) throw Error(ErrorKind::Configuration, "min_bits must be at least 10000");
    if (workers == 0) throw Error(ErrorKind::Configuration, "workers must be >= 1");
    if (batch_blocks == 0) throw Error(ErrorKind::Configuration, "batch_blocks must be >= 1");
    if (ofdm_subcarriers == 0 || !is_power_of_two(ofdm_subcarriers)) {
        throw Error(ErrorKind::Configuration, "ofdm_subcarriers must be a power of two");
    }
    const unsigned bps = bits_per_symbol(qam_order);
    if (coding && params.size() * bps / 2 <= fec::kTailBits) {
        throw Error(ErrorKind::Configuration, "block too small to carry a terminated codeword");
    }
    if (path == ExecPath::Fast) {
        params.require_fast();
    } else if (params.size() > oracle_cap) {
        throw Error(ErrorKind::Capacity, "direct path limited to MN <= " + std::to_string(oracle_cap));
    }
    if (!is_awgn()) {
        const auto taps = quantized_tap_powers(ChannelProfile::resolve(channel), sample_rate_hz).size();
        if (taps > params.n_cp) {
            throw Error(ErrorKind::Configuration, "channel '" + channel + "' spans " + std::to_string(taps) +
                                                      " taps but n_cp is " + std::to_string(params.n_cp));
        }
    }
    if (equalizer == EqualizerKind::ZF) {
        const auto diag = spectral_diagonal(build_prototype_pulse(pulse, params), params);
        build_deq(diag.lambda_bar, EqualizerKind::ZF, 0.0);
    }
}

SimConfig preset(const std::string& name) {
    SimConfig cfg;
    const std::string n = lower(name);
    if (n == "case1" || n == "casei") {
        cfg.params = {8, 128, 16, 1.0, 0.0};
    } else if (n == "case2" || n == "caseii") {
        cfg.params = {128, 8, 16, 1.0, 0.0};
    } else {
        throw Error(ErrorKind::Configuration, "unknown preset '" + name + "' (case1, case2)");
    }
    return cfg;
}

void apply_config_kv(SimConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "preset") {
        const SimConfig p = preset(value);
        cfg.params.M = p.params.M;
        cfg.params.N = p.params.N;
        cfg.params.n_cp = p.params.n_cp;
    } else if (key == "M") cfg.params.M = parse_u64(key, value);
    else if (key == "N") cfg.params.N = parse_u64(key, value);
    else if (key == "n_cp") cfg.params.n_cp = parse_u64(key, value);
    else if (key == "pulse") cfg.pulse = PulseSpec::parse(value);
    else if (key == "channel") cfg.channel = value;
    else if (key == "fde") cfg.fde = parse_fde_kind(lower(value));
    else if (key == "equalizer") cfg.equalizer = parse_equalizer_kind(lower(value));
    else if (key == "qam_order") cfg.qam_order = static_cast<unsigned>(parse_u64(key, value));
    else if (key == "snr_grid_db") cfg.snr_grid_db = parse_grid(key, value);
    else if (key == "snr_unit") {
        const std::string v = lower(value);
        if (v == "esn0" || v == "es/n0") cfg.snr_unit = SnrUnit::EsN0;
        else if (v == "ebn0" || v == "eb/n0") cfg.snr_unit = SnrUnit::EbN0;
        else bad_value(key, value);
    } else if (key == "min_bits") cfg.min_bits = parse_u64(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "coding") cfg.coding = parse_bool(key, value);
    else if (key == "path") {
        const std::string v = lower(value);
        if (v == "fast") cfg.path = ExecPath::Fast;
        else if (v == "direct") cfg.path = ExecPath::Direct;
        else bad_value(key, value);
    } else if (key == "workers") cfg.workers = static_cast<unsigned>(parse_u64(key, value));
    else if (key == "batch_blocks") cfg.batch_blocks = parse_u64(key, value);
    else if (key == "sample_rate_hz") cfg.sample_rate_hz = parse_double(key, value);
    else if (key == "carrier_hz") cfg.carrier_hz = parse_double(key, value);
    else if (key == "doppler_hz") cfg.doppler_hz = parse_double(key, value);
    else if (key == "ofdm_subcarriers") cfg.ofdm_subcarriers = parse_u64(key, value);
    else if (key == "oracle_cap") cfg.oracle_cap = parse_u64(key, value);
    else if (key == "record_decisions") cfg.record_decisions = parse_bool(key, value);
    else throw Error(ErrorKind::Configuration, "unknown configuration key '" + key + "'");
}

void apply_config_text(SimConfig& cfg, std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::Configuration, "line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_config_kv(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::Io, "cannot open config '" + path.string() + "'");
    SimConfig cfg;
    apply_config_text(cfg, is);
    return cfg;
}

std::vector<BerRecord> run_ber_sweep(const SimConfig& config) {
    config.validate();
    const Chain chain = build_chain(config);
    std::vector<BerRecord> out;
    out.reserve(config.snr_grid_db.size());
    for (std::size_t p = 0; p < config.snr_grid_db.size(); ++p) {
        out.push_back(run_point(config, chain, p, config.snr_grid_db[p]));
    }
    return out;
}

std::vector<BerRecord> ofdm_baseline(const SimConfig& config) {
    SimConfig ofdm = config;
    ofdm.params.M = 1;
    ofdm.params.N = config.ofdm_subcarriers;
    ofdm.pulse = PulseSpec{PulseFamily::RectTimeDelta, 0.0};
    ofdm.equalizer = EqualizerKind::ZF;
    ofdm.path = ExecPath::Fast;
    return run_ber_sweep(ofdm);
}

std::vector<ConditionRow> run_condition_sweep(std::size_t n, std::span<const std::size_t> m_list,
                                              const PulseSpec& pulse, double snr_db) {
    if (!is_power_of_two(n)) throw Error(ErrorKind::UnsupportedSize, "N must be a power of two");
    const double rho = std::pow(10.0, -snr_db / 10.0);
    constexpr EqualizerKind kinds[] = {EqualizerKind::MF, EqualizerKind::ZF, EqualizerKind::MmseBiased,
                                       EqualizerKind::MmseUnbiased};
    std::vector<ConditionRow> rows;
    for (std::size_t m : m_list) {
        if (!is_power_of_two(m)) throw Error(ErrorKind::UnsupportedSize, "M must be a power of two");
        const GfdmParams params{m, n, 0, 1.0, rho};
        const auto diag = spectral_diagonal(build_prototype_pulse(pulse, params), params);
        for (EqualizerKind kind : kinds) {
            double kappa = std::numeric_limits<double>::infinity();
            try {
                kappa = condition_number(kind, diag.lambda_bar, rho);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Singularity) throw;
            }
            rows.push_back({m, kind, kappa});
        }
    }
    return rows;
}

std::map<std::string, std::string> describe(const SimConfig& cfg) {
    return {
        {"M", std::to_string(cfg.params.M)},
        {"N", std::to_string(cfg.params.N)},
        {"n_cp", std::to_string(cfg.params.n_cp)},
        {"pulse", cfg.pulse.to_string()},
        {"channel", cfg.channel},
        {"fde", to_string(cfg.fde)},
        {"equalizer", to_string(cfg.equalizer)},
        {"qam_order", std::to_string(cfg.qam_order)},
        {"snr_unit", cfg.snr_unit ? unit_name(*cfg.snr_unit) : "unset"},
        {"min_bits", std::to_string(cfg.min_bits)},
        {"seed", std::to_string(cfg.seed)},
        {"coding", cfg.coding ? "on" : "off"},
        {"path", cfg.path == ExecPath::Fast ? "fast" : "direct"},
        {"batch_blocks", std::to_string(cfg.batch_blocks)},
        {"sample_rate_hz", format_double(cfg.sample_rate_hz)},
        {"carrier_hz", format_double(cfg.carrier_hz)},
        {"doppler_hz", format_double(cfg.doppler_hz)},
    };
}

void write_ber_csv(std::ostream& os, std::span<const BerRecord> rows, const SimConfig& cfg, bool include_timing) {
    for (const auto& [k, v] : describe(cfg)) os << "# " << k << '=' << v << '\n';
    os << "snr_db,bits_simulated,bit_errors,ber";
    if (include_timing) os << ",wall_time_s";
    os << '\n';
    for (const auto& r : rows) {
        os << format_double(r.snr_db) << ',' << r.bits_simulated << ',' << r.bit_errors << ','
           << format_double(r.ber);
        if (include_timing) os << ',' << format_double(r.wall_time_s);
        os << '\n';
    }
}

void write_condition_csv(std::ostream& os, std::span<const ConditionRow> rows) {
    os << "M,kind,kappa\n";
    for (const auto& r : rows) {
        os << r.M << ',' << to_string(r.kind) << ',' << (std::isinf(r.kappa) ? "inf" : format_double(r.kappa))
           << '\n';
    }
}

void write_gnuplot_script(std::ostream& os, const std::string& csv_name, const SimConfig& cfg) {
    const bool eb = cfg.snr_unit && *cfg.snr_unit == SnrUnit::EbN0;
    os << "set datafile separator ','\n"
       << "set datafile commentschars '#'\n"
       << "set key autotitle columnhead\n"
       << "set logscale y\n"
       << "set format y '10^{%L}'\n"
       << "set grid\n"
       << "set xlabel '" << (eb ? "E_b/N_0 [dB]" : "E_s/N_0 [dB]") << "'\n"
       << "set ylabel 'BER'\n"
       << "set title 'M=" << cfg.params.M << ", N=" << cfg.params.N << ", " << cfg.pulse.to_string() << ", "
       << cfg.channel << ", " << to_string(cfg.equalizer) << "'\n"
       << "plot '" << csv_name << "' using 1:4 with linespoints title '" << to_string(cfg.equalizer) << "'\n";
}

}  // namespace gfdm::sim
