#pragma once

#include "gfdm/common.hpp"

namespace gfdm::fec {

/// Rate-1/2, constraint length 7, generators 171/133 (octal), zero-tail.
struct CodeSpec {
    int constraint_length = 7;
    unsigned g0 = 0171;
    unsigned g1 = 0133;

    /// Throws ErrorKind::Unsupported for anything but the default code.
    void validate() const;
};

inline constexpr std::size_t kTailBits = 6;

/// Output length is 2 * (len + 6); pairs are (g0, g1) parities.
Bits conv_encode(std::span<const std::uint8_t> info, const CodeSpec& code = {});

/// Hard-decision Viterbi (Hamming metric) over zero-tail terminated code bits.
Bits viterbi_decode(std::span<const std::uint8_t> code_bits, const CodeSpec& code = {});

/// Soft-decision Viterbi. Input is one real value per code bit, positive for
/// 0 and negative for 1 (antipodal); the path metric is the squared Euclidean
/// distance to +-1, evaluated as the equivalent correlation.
Bits viterbi_decode_soft(std::span<const double> soft, const CodeSpec& code = {});

}  // namespace gfdm::fec
