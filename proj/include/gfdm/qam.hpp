#pragma once

#include "gfdm/common.hpp"

namespace gfdm {

/// Gray-coded square QAM with unit average energy. Orders 4, 16, 64.
/// The first half of each label selects the in-phase level, the second half
/// the quadrature level.
CVec qam_map(std::span<const std::uint8_t> bits, unsigned order);

/// Minimum-distance hard decision; on an exact decision boundary the smaller
/// label wins.
Bits qam_demap(std::span<const cdouble> symbols, unsigned order);

unsigned bits_per_symbol(unsigned order);

/// The order points, indexed by label.
CVec qam_constellation(unsigned order);

}  // namespace gfdm
