#include "gfdm/flops.hpp"

#include <bit>
#include <ostream>

namespace gfdm::flops {

Count fft_flops(std::size_t size, const FlopModel& model) {
    if (!is_power_of_two(size)) {
        throw Error(ErrorKind::Parameter, "fft_flops needs a power-of-two size, got " + std::to_string(size));
    }
    if (size == 1) return 0;
    if (size < model.crossover) {
        for (const auto& [n, cost] : model.winograd_table)
            if (n == size) return cost;
    }
    // Split-radix: 4 X log2 X - 6 X + 8
    const Count x = size;
    const Count lg = static_cast<Count>(std::countr_zero(size));
    return 4 * x * lg - 6 * x + 8;
}

const char* to_string(Scheme s) noexcept {
    switch (s) {
        case Scheme::ProposedTx: return "PROPOSED_TX";
        case Scheme::MichailowTx: return "MICHAILOW_TX";
        case Scheme::FarhangTx: return "FARHANG_TX";
        case Scheme::LinTx: return "LIN_TX";
        case Scheme::OfdmTx: return "OFDM_TX";
        case Scheme::ProposedZfMfRx: return "PROPOSED_ZF_MF_RX";
        case Scheme::ProposedBiasedMmseRx: return "PROPOSED_BIASED_MMSE_RX";
        case Scheme::ProposedUnbiasedMmseRx: return "PROPOSED_UNBIASED_MMSE_RX";
        case Scheme::FarhangZfMfRx: return "FARHANG_ZF_MF_RX";
        case Scheme::FarhangMmseRx: return "FARHANG_MMSE_RX";
        case Scheme::MichailowZfMfRx: return "MICHAILOW_ZF_MF_RX";
        case Scheme::SicRx: return "SIC_RX";
        case Scheme::OfdmRx: return "OFDM_RX";
    }
    return "?";
}

const char* to_string(Channel c) noexcept {
    switch (c) {
        case Channel::Awgn: return "AWGN";
        case Channel::FadingZfFde: return "FADING_ZF_FDE";
        case Channel::FadingMmseFde: return "FADING_MMSE_FDE";
    }
    return "?";
}

Scheme parse_scheme(const std::string& text) {
    for (Scheme s : kAllSchemes)
        if (text == to_string(s)) return s;
    throw Error(ErrorKind::Parameter, "unknown scheme '" + text + "'");
}

Channel parse_channel(const std::string& text) {
    for (Channel c : {Channel::Awgn, Channel::FadingZfFde, Channel::FadingMmseFde})
        if (text == to_string(c)) return c;
    throw Error(ErrorKind::Parameter, "unknown channel '" + text + "'");
}

bool is_transmitter(Scheme s) noexcept {
    switch (s) {
        case Scheme::ProposedTx:
        case Scheme::MichailowTx:
        case Scheme::FarhangTx:
        case Scheme::LinTx:
        case Scheme::OfdmTx: return true;
        default: return false;
    }
}

Count scheme_flops(Scheme scheme, Channel channel, std::size_t M, std::size_t N, const Extras& extras) {
    const Count m = M, n = N, mn = m * n;
    const Count L = extras.L == 0 ? n : extras.L;
    const Count I = extras.I;
    const Count cn = fft_flops(N);
    const Count cm = fft_flops(M);
    const Count cmn = fft_flops(M * N);
    const bool awgn = channel == Channel::Awgn;
    const bool mmse_fde = channel == Channel::FadingMmseFde;

    if (is_transmitter(scheme) && !awgn) {
        throw Error(ErrorKind::Unsupported, std::string(to_string(scheme)) + " has no fading-channel variant");
    }

    // FDE overhead on top of the AWGN self-interference equalizer.
    const Count fde = 2 * cmn + (mmse_fde ? 13 : 6) * mn;
    const Count sic_iters = I * (4 * n * cm + 6 * mn);

    switch (scheme) {
        case Scheme::ProposedTx: return m * cn + 2 * n * cm + 6 * mn;
        case Scheme::MichailowTx: return m * cn + 2 * n * cm + 6 * mn * L;
        case Scheme::FarhangTx: return m * cn + 4 * m * m * n;
        case Scheme::LinTx: return m * cn + 3 * m * m * n + 2 * (m - 1) * n;
        case Scheme::OfdmTx: return m * cn;

        // The proposed rows use M N-point transforms (the printed M x C_M is
        // read as M x C_N, matching the receiver pipeline).
        case Scheme::ProposedZfMfRx: return m * cn + 2 * n * cm + 6 * mn + (awgn ? 0 : fde);
        case Scheme::ProposedBiasedMmseRx: return m * cn + 2 * n * cm + 11 * mn + (awgn ? 0 : fde);
        case Scheme::ProposedUnbiasedMmseRx: return m * cn + 2 * n * cm + 17 * mn + (awgn ? 0 : fde);

        case Scheme::FarhangZfMfRx:
            if (awgn) return m * cn + 3 * m * m * n + 2 * (m - 1) * n;
            return 2 * cmn + m * cn + 3 * m * m * n + (mmse_fde ? 15 : 8) * mn - 2 * n;
        case Scheme::FarhangMmseRx:
            if (awgn) return m * cn + 12 * m * m * n + 9 * mn;
            return 2 * cmn + m * cn + 12 * m * m * n + (mmse_fde ? 22 : 15) * mn;
        case Scheme::MichailowZfMfRx:
            if (awgn) return 2 * cmn + 2 * n * cm + 6 * mn * L;
            // The fading row as tabulated includes the SIC iteration term.
            return 4 * cmn + 2 * n * cm + 6 * L * mn + sic_iters + (mmse_fde ? 13 : 6) * mn;
        case Scheme::SicRx:
            if (awgn) return 2 * cmn + 2 * n * cm + 6 * L * mn + sic_iters;
            return 4 * cmn + 2 * n * cm + 6 * L * mn + sic_iters + (mmse_fde ? 13 : 6) * mn;
        case Scheme::OfdmRx: return m * cn + (awgn ? 0 : (mmse_fde ? 13 : 6) * mn);
    }
    throw Error(ErrorKind::Unsupported, "unknown scheme");
}

std::vector<ReportRow> complexity_report(std::span<const std::size_t> m_range, std::span<const std::size_t> n_range,
                                         std::span<const SchemeChannel> schemes, const Extras& extras) {
    std::vector<ReportRow> rows;
    rows.reserve(schemes.size() * m_range.size() * n_range.size());
    for (const auto& sc : schemes) {
        const Scheme ref = is_transmitter(sc.scheme) ? Scheme::OfdmTx : Scheme::OfdmRx;
        for (std::size_t M : m_range) {
            for (std::size_t N : n_range) {
                const Count f = scheme_flops(sc.scheme, sc.channel, M, N, extras);
                const Count base = scheme_flops(ref, sc.channel, M, N, extras);
                rows.push_back({sc.scheme, sc.channel, M, N, extras.L == 0 ? N : extras.L, extras.I, f,
                                base == 0 ? 0.0 : static_cast<double>(f) / static_cast<double>(base)});
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& os, std::span<const ReportRow> rows) {
    os << "scheme,channel,M,N,L,I,flops\n";
    for (const auto& r : rows) {
        os << to_string(r.scheme) << ',' << to_string(r.channel) << ',' << r.M << ',' << r.N << ',' << r.L << ','
           << r.I << ',' << r.flops << '\n';
    }
}

void write_markdown(std::ostream& os, std::span<const ReportRow> rows) {
    os << "| scheme | channel | M | N | L | I | flops | ratio to OFDM |\n"
       << "|---|---|---:|---:|---:|---:|---:|---:|\n";
    const auto old_precision = os.precision(3);
    for (const auto& r : rows) {
        os << "| " << to_string(r.scheme) << " | " << to_string(r.channel) << " | " << r.M << " | " << r.N << " | "
           << r.L << " | " << r.I << " | " << r.flops << " | " << r.ratio_to_ofdm << " |\n";
    }
    os.precision(old_precision);
    os << "\nProposed receiver rows count M N-point plus 2N M-point transforms "
          "(the tabulated M x C_M term is taken as M x C_N).\n";
}

}  // namespace gfdm::flops
