#include "gfdm/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gfdm/fft.hpp"

namespace gfdm {

Rng make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xFFFFFFFFu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(a), hi(a), lo(b), hi(b), 0x9E3779B9u};
    return Rng(seq);
}

cdouble complex_gaussian(Rng& rng, double variance) {
    if (variance <= 0) return {};
    std::normal_distribution<double> dist(0.0, std::sqrt(variance / 2.0));
    const double re = dist(rng);
    const double im = dist(rng);
    return {re, im};
}

void ChannelProfile::validate() const {
    if (delays_ns.empty()) throw Error(ErrorKind::Configuration, "channel profile '" + name + "' has no paths");
    if (delays_ns.size() != powers_db.size()) {
        throw Error(ErrorKind::Configuration, "channel profile '" + name + "': delays and powers differ in length");
    }
    for (std::size_t i = 0; i < delays_ns.size(); ++i) {
        if (delays_ns[i] < 0) throw Error(ErrorKind::Configuration, "negative path delay");
        if (i > 0 && !(delays_ns[i] > delays_ns[i - 1])) {
            throw Error(ErrorKind::Configuration, "path delays must be strictly increasing");
        }
    }
}

ChannelProfile ChannelProfile::etu() {
    return {"ETU",
            {0, 50, 120, 200, 230, 500, 1600, 2300, 5000},
            {-1, -1, -1, 0, 0, 0, -3, -5, -7}};
}

ChannelProfile ChannelProfile::resolve(const std::string& name_or_path) {
    if (name_or_path == "ETU" || name_or_path == "etu") return etu();
    return load_channel_profile(name_or_path);
}

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::string cleaned = text;
    for (char& c : cleaned)
        if (c == ',' || c == '[' || c == ']') c = ' ';
    std::istringstream is(cleaned);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw Error(ErrorKind::Configuration, "bad number '" + tok + "' in channel profile");
        }
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

ChannelProfile parse_channel_profile(std::istream& is, std::string name) {
    ChannelProfile p;
    p.name = std::move(name);
    std::string line;
    while (std::getline(is, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Configuration, "expected key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "delays_ns") p.delays_ns = parse_list(value);
        else if (key == "powers_db") p.powers_db = parse_list(value);
        else if (key == "name") p.name = value;
        else throw Error(ErrorKind::Configuration, "unknown channel profile key '" + key + "'");
    }
    p.validate();
    return p;
}

ChannelProfile load_channel_profile(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::Io, "cannot open channel profile '" + path.string() + "'");
    return parse_channel_profile(is, path.stem().string());
}

std::vector<double> quantized_tap_powers(const ChannelProfile& profile, double fs) {
    profile.validate();
    if (!(fs > 0)) throw Error(ErrorKind::Parameter, "sampling rate must be positive");
    std::vector<double> taps;
    for (std::size_t i = 0; i < profile.delays_ns.size(); ++i) {
        const auto bin = static_cast<std::size_t>(std::llround(profile.delays_ns[i] * 1e-9 * fs));
        if (bin >= taps.size()) taps.resize(bin + 1, 0.0);
        taps[bin] += std::pow(10.0, profile.powers_db[i] / 10.0);
    }
    double total = 0;
    for (double p : taps) total += p;
    for (double& p : taps) p /= total;
    return taps;
}

ChannelRealization draw_channel(const ChannelProfile& profile, double fs, const GfdmParams& params, Rng& rng) {
    const auto powers = quantized_tap_powers(profile, fs);
    if (powers.size() > params.n_cp) {
        throw Error(ErrorKind::Configuration, "channel '" + profile.name + "' spans " + std::to_string(powers.size()) +
                                                  " taps but the CP holds only " + std::to_string(params.n_cp));
    }
    ChannelRealization out;
    out.h.resize(powers.size());
    for (std::size_t s = 0; s < powers.size(); ++s) out.h[s] = complex_gaussian(rng, powers[s]);
    out.lambda = channel_freq_coeffs(out.h, params.size());
    return out;
}

CVec channel_freq_coeffs(std::span<const cdouble> h, std::size_t mn) {
    if (h.size() > mn) throw Error(ErrorKind::Parameter, "channel longer than the block");
    CVec out(mn);
    std::copy(h.begin(), h.end(), out.begin());
    BlockDft(mn, 1, FftDirection::Forward, FftScale::None)(out);
    return out;
}

CVec apply_channel(const BasebandSignal& x_cp, std::span<const cdouble> h, double sigma_nu2, Rng& rng) {
    if (h.empty()) throw Error(ErrorKind::Parameter, "empty channel impulse response");
    if (x_cp.has_cp && h.size() > x_cp.n_cp && h.size() > 1) {
        throw Error(ErrorKind::Configuration, "channel taps exceed the cyclic prefix");
    }
    const std::size_t len = x_cp.x.size();
    CVec out(len + h.size() - 1);
    for (std::size_t n = 0; n < len; ++n)
        for (std::size_t s = 0; s < h.size(); ++s) out[n + s] += h[s] * x_cp.x[n];
    if (sigma_nu2 > 0) {
        for (auto& v : out) v += complex_gaussian(rng, sigma_nu2);
    }
    return out;
}

CVec remove_cp(std::span<const cdouble> z_cp, const GfdmParams& params, std::size_t taps) {
    if (taps == 0) throw Error(ErrorKind::Parameter, "tap count must be >= 1");
    require_length(z_cp.size(), params.n_cp + params.size() + taps - 1, "remove_cp");
    const auto first = z_cp.begin() + static_cast<std::ptrdiff_t>(params.n_cp);
    return CVec(first, first + static_cast<std::ptrdiff_t>(params.size()));
}

}  // namespace gfdm
