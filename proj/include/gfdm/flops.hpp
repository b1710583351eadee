#pragma once

#include <array>
#include <iosfwd>

#include "gfdm/common.hpp"

namespace gfdm::flops {

using Count = std::uint64_t;

// Real-flop cost of complex primitives.
inline constexpr Count kComplexMul = 6;
inline constexpr Count kComplexDiv = 6;
inline constexpr Count kComplexAdd = 2;
inline constexpr Count kConjugate = 2;
inline constexpr Count kModulusSquare = 3;

/// Winograd small-FFT costs for sizes 2, 4, 8, 16; split-radix above.
struct FlopModel {
    std::array<std::pair<std::size_t, Count>, 4> winograd_table{{{2, 4}, {4, 12}, {8, 34}, {16, 92}}};
    std::size_t crossover = 19;
};

/// Flops of one size-point FFT/IFFT. Size must be a power of two.
Count fft_flops(std::size_t size, const FlopModel& model = {});

enum class Scheme {
    ProposedTx,
    MichailowTx,
    FarhangTx,
    LinTx,
    OfdmTx,
    ProposedZfMfRx,
    ProposedBiasedMmseRx,
    ProposedUnbiasedMmseRx,
    FarhangZfMfRx,
    FarhangMmseRx,
    MichailowZfMfRx,
    SicRx,
    OfdmRx,
};

enum class Channel { Awgn, FadingZfFde, FadingMmseFde };

inline constexpr std::array kAllSchemes{
    Scheme::ProposedTx,      Scheme::MichailowTx,          Scheme::FarhangTx,
    Scheme::LinTx,           Scheme::OfdmTx,               Scheme::ProposedZfMfRx,
    Scheme::ProposedBiasedMmseRx, Scheme::ProposedUnbiasedMmseRx, Scheme::FarhangZfMfRx,
    Scheme::FarhangMmseRx,   Scheme::MichailowZfMfRx,      Scheme::SicRx,
    Scheme::OfdmRx,
};

const char* to_string(Scheme s) noexcept;
const char* to_string(Channel c) noexcept;
Scheme parse_scheme(const std::string& text);
Channel parse_channel(const std::string& text);
bool is_transmitter(Scheme s) noexcept;

struct Extras {
    std::size_t L = 0;  ///< filter frequency support; 0 means "use N"
    std::size_t I = 8;  ///< SIC iterations
};

/// Closed-form flop count of one scheme row. Transmitters exist only for
/// Channel::Awgn; asking for a fading transmitter throws ErrorKind::Unsupported.
Count scheme_flops(Scheme scheme, Channel channel, std::size_t M, std::size_t N, const Extras& extras = {});

struct ReportRow {
    Scheme scheme;
    Channel channel;
    std::size_t M;
    std::size_t N;
    std::size_t L;
    std::size_t I;
    Count flops;
    double ratio_to_ofdm;
};

struct SchemeChannel {
    Scheme scheme;
    Channel channel;
};

/// Rows ordered scheme-major, then M, then N.
std::vector<ReportRow> complexity_report(std::span<const std::size_t> m_range,
                                         std::span<const std::size_t> n_range,
                                         std::span<const SchemeChannel> schemes, const Extras& extras = {});

/// Header `scheme,channel,M,N,L,I,flops`.
void write_csv(std::ostream& os, std::span<const ReportRow> rows);
void write_markdown(std::ostream& os, std::span<const ReportRow> rows);

}  // namespace gfdm::flops
