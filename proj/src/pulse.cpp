#include "gfdm/pulse.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gfdm/fft.hpp"

namespace gfdm {
namespace {

void normalize_energy(CVec& g, std::size_t N) {
    double energy = 0;
    for (const auto& v : g) energy += std::norm(v);
    if (!(energy > 0)) throw Error(ErrorKind::Parameter, "pulse has zero energy");
    const double s = std::sqrt(static_cast<double>(N) / energy);
    for (auto& v : g) v *= s;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parameter, "cannot parse " + what + " from '" + text + "'");
    }
}

}  // namespace

PulseSpec PulseSpec::parse(const std::string& text) {
    if (text == "rect-delta" || text == "rect-time-delta") return {PulseFamily::RectTimeDelta, 0.0};
    if (text == "rect-full") return {PulseFamily::RectFull, 0.0};
    if (text == "custom") return {PulseFamily::Custom, 0.0};
    if (text.rfind("rc:", 0) == 0) {
        PulseSpec spec{PulseFamily::RaisedCosine, parse_double(text.substr(3), "roll-off")};
        if (spec.rolloff < 0 || spec.rolloff > 1) {
            throw Error(ErrorKind::Parameter, "roll-off must lie in [0, 1]");
        }
        return spec;
    }
    throw Error(ErrorKind::Parameter, "unknown pulse '" + text + "' (expected rc:<alpha>, rect-delta, rect-full)");
}

std::string PulseSpec::to_string() const {
    switch (family) {
        case PulseFamily::RaisedCosine: {
            std::ostringstream os;
            os << "rc:" << rolloff;
            return os.str();
        }
        case PulseFamily::RectTimeDelta: return "rect-delta";
        case PulseFamily::RectFull: return "rect-full";
        case PulseFamily::Custom: return "custom";
    }
    return "unknown";
}

double raised_cosine_response(double nu, double rolloff) {
    const double a = std::abs(nu);
    if (rolloff == 0.0) {
        if (a < 0.5) return 1.0;
        return a == 0.5 ? 0.5 : 0.0;
    }
    const double lo = 0.5 * (1.0 - rolloff);
    const double hi = 0.5 * (1.0 + rolloff);
    if (a <= lo) return 1.0;
    if (a >= hi) return 0.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * (a - lo) / rolloff));
}

PrototypeFilter build_prototype_pulse(const PulseSpec& spec, const GfdmParams& params) {
    params.validate();
    const std::size_t M = params.M;
    const std::size_t N = params.N;
    const std::size_t K = M * N;
    PrototypeFilter out{spec, CVec(K)};

    switch (spec.family) {
        case PulseFamily::RaisedCosine: {
            if (spec.rolloff < 0 || spec.rolloff > 1 || std::isnan(spec.rolloff)) {
                throw Error(ErrorKind::Parameter, "roll-off must lie in [0, 1]");
            }
            // Frequency response on the MN-bin grid; one subcarrier spans M bins.
            CVec G(K);
            for (std::size_t k = 0; k < K; ++k) {
                const double f = k < K / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(K);
                G[k] = raised_cosine_response((f + 0.5) / static_cast<double>(M), spec.rolloff);
            }
            BlockDft(K, 1, FftDirection::Inverse, FftScale::None)(G);
            out.g = std::move(G);
            break;
        }
        case PulseFamily::RectTimeDelta:
            for (std::size_t n = 0; n < N; ++n) out.g[n] = 1.0;
            break;
        case PulseFamily::RectFull:
            for (auto& v : out.g) v = 1.0;
            break;
        case PulseFamily::Custom:
            throw Error(ErrorKind::Parameter, "custom pulses are built with pulse_from_coefficients");
    }
    normalize_energy(out.g, N);
    return out;
}

PrototypeFilter pulse_from_coefficients(CVec g, const GfdmParams& params) {
    params.validate();
    require_length(g.size(), params.size(), "pulse coefficients");
    normalize_energy(g, params.N);
    return {PulseSpec{PulseFamily::Custom, 0.0}, std::move(g)};
}

void write_pulse_csv(std::ostream& os, std::span<const cdouble> g) {
    os << "index,re,im\n";
    os.precision(17);
    for (std::size_t i = 0; i < g.size(); ++i) os << i << ',' << g[i].real() << ',' << g[i].imag() << '\n';
}

CVec read_pulse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorKind::Io, "empty pulse CSV");
    if (line.rfind("index,re,im", 0) != 0) throw Error(ErrorKind::Io, "pulse CSV must start with 'index,re,im'");
    CVec g;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string idx, re, im;
        if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') || !std::getline(row, im)) {
            throw Error(ErrorKind::Io, "malformed pulse CSV row: " + line);
        }
        if (static_cast<std::size_t>(std::stoull(idx)) != g.size()) {
            throw Error(ErrorKind::Io, "pulse CSV indices must be consecutive from 0");
        }
        g.emplace_back(parse_double(re, "re"), parse_double(im, "im"));
    }
    return g;
}

}  // namespace gfdm
