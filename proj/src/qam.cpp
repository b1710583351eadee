#include "gfdm/qam.hpp"

#include <bit>
#include <cmath>

namespace gfdm {
namespace {

struct Layout {
    unsigned bits;       // per symbol
    unsigned half;       // per dimension
    unsigned levels;     // per dimension
    double scale;
};

Layout layout(unsigned order) {
    if (order != 4 && order != 16 && order != 64) {
        throw Error(ErrorKind::Parameter, "QAM order must be 4, 16 or 64, got " + std::to_string(order));
    }
    const unsigned bits = static_cast<unsigned>(std::countr_zero(order));
    const unsigned half = bits / 2;
    return {bits, half, 1u << half, std::sqrt(3.0 / (2.0 * (order - 1)))};
}

unsigned gray(unsigned v) { return v ^ (v >> 1); }

unsigned gray_inverse(unsigned g) {
    unsigned v = 0;
    for (; g; g >>= 1) v ^= g;
    return v;
}

// Level index -> amplitude -(L-1), ..., L-1 in steps of 2.
double amplitude(unsigned idx, unsigned levels) { return 2.0 * idx - (levels - 1.0); }

unsigned read_label(std::span<const std::uint8_t> bits, std::size_t offset, unsigned n) {
    unsigned v = 0;
    for (unsigned i = 0; i < n; ++i) {
        const auto b = bits[offset + i];
        if (b > 1) throw Error(ErrorKind::Parameter, "bits must be 0 or 1");
        v = (v << 1) | b;
    }
    return v;
}

// Decide a level index for one dimension; a value exactly between two levels
// goes to the one whose Gray label is smaller.
unsigned decide(double x, const Layout& l) {
    const double t = (x / l.scale + (l.levels - 1.0)) / 2.0;
    if (!(t > 0)) return 0;
    if (t >= l.levels - 1.0) return l.levels - 1;
    const double fl = std::floor(t);
    const double frac = t - fl;
    const auto lo = static_cast<unsigned>(fl);
    if (frac < 0.5) return lo;
    if (frac > 0.5) return lo + 1;
    return gray(lo) < gray(lo + 1) ? lo : lo + 1;
}

}  // namespace

unsigned bits_per_symbol(unsigned order) { return layout(order).bits; }

CVec qam_map(std::span<const std::uint8_t> bits, unsigned order) {
    const Layout l = layout(order);
    if (bits.size() % l.bits != 0) {
        throw Error(ErrorKind::Parameter, "bit count " + std::to_string(bits.size()) + " is not a multiple of " +
                                              std::to_string(l.bits));
    }
    CVec out(bits.size() / l.bits);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const unsigned gi = read_label(bits, k * l.bits, l.half);
        const unsigned gq = read_label(bits, k * l.bits + l.half, l.half);
        out[k] = l.scale * cdouble(amplitude(gray_inverse(gi), l.levels), amplitude(gray_inverse(gq), l.levels));
    }
    return out;
}

Bits qam_demap(std::span<const cdouble> symbols, unsigned order) {
    const Layout l = layout(order);
    Bits out(symbols.size() * l.bits);
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        const unsigned gi = gray(decide(symbols[k].real(), l));
        const unsigned gq = gray(decide(symbols[k].imag(), l));
        for (unsigned i = 0; i < l.half; ++i) {
            out[k * l.bits + i] = static_cast<std::uint8_t>((gi >> (l.half - 1 - i)) & 1u);
            out[k * l.bits + l.half + i] = static_cast<std::uint8_t>((gq >> (l.half - 1 - i)) & 1u);
        }
    }
    return out;
}

CVec qam_constellation(unsigned order) {
    const Layout l = layout(order);
    CVec out(order);
    Bits label(l.bits);
    for (unsigned v = 0; v < order; ++v) {
        for (unsigned i = 0; i < l.bits; ++i) label[i] = static_cast<std::uint8_t>((v >> (l.bits - 1 - i)) & 1u);
        out[v] = qam_map(label, order)[0];
    }
    return out;
}

}  // namespace gfdm
