#include "gfdm/transmitter.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace gfdm {
namespace {

const GfdmParams& checked_fast(const GfdmParams& params) {
    params.require_fast();
    return params;
}

}  // namespace

BasebandSignal modulate_direct(const ModulationMatrix& a, std::span<const cdouble> d) {
    require_length(d.size(), a.dim(), "modulate_direct");
    Eigen::Map<const Eigen::VectorXcd> dv(d.data(), static_cast<Eigen::Index>(d.size()));
    Eigen::VectorXcd x = a.a * dv;
    return {CVec(x.data(), x.data() + x.size()), false, 0};
}

FastModulator::FastModulator(const GfdmParams& params, CVec lambda_bar)
    : params_(checked_fast(params)),
      lambda_bar_(std::move(lambda_bar)),
      idft_n_(params.N, params.M, FftDirection::Inverse),
      dft_m_(params.M, params.N, FftDirection::Forward),
      idft_m_(params.M, params.N, FftDirection::Inverse) {
    require_length(lambda_bar_.size(), params_.size(), "FastModulator lambda_bar");
}

void FastModulator::modulate(std::span<const cdouble> d, std::span<cdouble> x) const {
    const std::size_t M = params_.M, N = params_.N, K = M * N;
    require_length(d.size(), K, "modulate_fast");
    require_length(x.size(), K, "modulate_fast output");

    CVec e(d.begin(), d.end());
    idft_n_(e);
    CVec t(K);
    permute_forward(e, t, M, N);
    dft_m_(t);
    for (std::size_t r = 0; r < K; ++r) t[r] *= lambda_bar_[r];
    idft_m_(t);
    permute_inverse(t, x, M, N);
}

CVec FastModulator::modulate(std::span<const cdouble> d) const {
    CVec x(params_.size());
    modulate(d, x);
    return x;
}

BasebandSignal modulate_fast(const GfdmParams& params, std::span<const cdouble> lambda_bar,
                             std::span<const cdouble> d) {
    const FastModulator mod(params, CVec(lambda_bar.begin(), lambda_bar.end()));
    return {mod.modulate(d), false, 0};
}

BasebandSignal add_cp(const BasebandSignal& x, std::size_t n_cp) {
    if (x.has_cp) throw Error(ErrorKind::Parameter, "signal already carries a cyclic prefix");
    const std::size_t len = x.x.size();
    if (n_cp > len) {
        throw Error(ErrorKind::Parameter, "CP length " + std::to_string(n_cp) + " exceeds block length " +
                                              std::to_string(len));
    }
    BasebandSignal out{CVec(), true, n_cp};
    out.x.reserve(len + n_cp);
    out.x.insert(out.x.end(), x.x.end() - static_cast<std::ptrdiff_t>(n_cp), x.x.end());
    out.x.insert(out.x.end(), x.x.begin(), x.x.end());
    return out;
}

namespace {

void put_f64le(std::ostream& os, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    os.write(bytes, 8);
}

double get_f64le(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode);
    if (!os) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream is(path, mode);
    if (!is) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    return is;
}

}  // namespace

void write_iq_binary(const std::filesystem::path& path, std::span<const cdouble> samples) {
    auto os = open_out(path, std::ios::out | std::ios::binary);
    for (const auto& s : samples) {
        put_f64le(os, s.real());
        put_f64le(os, s.imag());
    }
}

CVec read_iq_binary(const std::filesystem::path& path) {
    auto is = open_in(path, std::ios::in | std::ios::binary);
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (raw.size() % 16 != 0) throw Error(ErrorKind::Io, "I/Q file size is not a multiple of 16 bytes");
    CVec out(raw.size() / 16);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = {get_f64le(&raw[16 * i]), get_f64le(&raw[16 * i + 8])};
    }
    return out;
}

void write_iq_csv(const std::filesystem::path& path, std::span<const cdouble> samples) {
    auto os = open_out(path);
    os.precision(17);
    os << "index,re,im\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        os << i << ',' << samples[i].real() << ',' << samples[i].imag() << '\n';
    }
}

CVec read_iq_csv(const std::filesystem::path& path) {
    auto is = open_in(path);
    std::string line;
    std::getline(is, line);
    if (line.rfind("index,re,im", 0) != 0) throw Error(ErrorKind::Io, "I/Q CSV must start with 'index,re,im'");
    CVec out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string idx, re, im;
        std::getline(row, idx, ',');
        std::getline(row, re, ',');
        std::getline(row, im);
        out.emplace_back(std::stod(re), std::stod(im));
    }
    return out;
}

void write_iq_sidecar(const std::filesystem::path& path, const IqMetadata& meta) {
    auto os = open_out(path);
    os << "format = " << meta.format << '\n'
       << "M = " << meta.M << '\n'
       << "N = " << meta.N << '\n'
       << "n_cp = " << meta.n_cp << '\n'
       << "blocks = " << meta.blocks << '\n'
       << "pulse = " << meta.pulse << '\n';
}

IqMetadata read_iq_sidecar(const std::filesystem::path& path) {
    auto is = open_in(path);
    IqMetadata meta;
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "format") meta.format = value;
        else if (key == "M") meta.M = std::stoull(value);
        else if (key == "N") meta.N = std::stoull(value);
        else if (key == "n_cp") meta.n_cp = std::stoull(value);
        else if (key == "blocks") meta.blocks = std::stoull(value);
        else if (key == "pulse") meta.pulse = value;
    }
    if (meta.M == 0 || meta.N == 0) throw Error(ErrorKind::Io, "sidecar '" + path.string() + "' lacks M/N");
    return meta;
}

}  // namespace gfdm
