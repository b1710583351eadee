#include "gfdm/fec.hpp"

#include <array>
#include <bit>
#include <limits>

namespace gfdm::fec {
namespace {

constexpr std::size_t kStates = 64;

struct Trellis {
    // Output pair for (state, input); next state is ((input << 5) | (state >> 1)).
    std::array<std::array<std::uint8_t, 2>, kStates> out{};
};

Trellis make_trellis(const CodeSpec& code) {
    Trellis t;
    for (unsigned s = 0; s < kStates; ++s) {
        for (unsigned b = 0; b < 2; ++b) {
            const unsigned reg = (b << 6) | s;
            const unsigned p0 = std::popcount(reg & code.g0) & 1u;
            const unsigned p1 = std::popcount(reg & code.g1) & 1u;
            t.out[s][b] = static_cast<std::uint8_t>((p0 << 1) | p1);
        }
    }
    return t;
}

unsigned next_state(unsigned s, unsigned b) { return (b << 5) | (s >> 1); }

// Generic add-compare-select over a branch metric functor; larger is better.
template <typename BranchMetric>
Bits viterbi(std::size_t steps, const CodeSpec& code, BranchMetric metric) {
    if (steps < kTailBits) throw Error(ErrorKind::Parameter, "code sequence shorter than the tail");
    const Trellis t = make_trellis(code);
    constexpr double kNeg = -std::numeric_limits<double>::infinity();

    std::array<double, kStates> pm;
    pm.fill(kNeg);
    pm[0] = 0;
    std::vector<std::array<std::uint8_t, kStates>> prev(steps);

    for (std::size_t i = 0; i < steps; ++i) {
        std::array<double, kStates> next;
        next.fill(kNeg);
        auto& back = prev[i];
        // Predecessors are visited in increasing order, so ties keep the lower index.
        for (unsigned s = 0; s < kStates; ++s) {
            if (pm[s] == kNeg) continue;
            const unsigned max_b = i + kTailBits >= steps ? 1 : 2;
            for (unsigned b = 0; b < max_b; ++b) {
                const unsigned ns = next_state(s, b);
                const double m = pm[s] + metric(i, t.out[s][b]);
                if (m > next[ns]) {
                    next[ns] = m;
                    back[ns] = static_cast<std::uint8_t>(s);
                }
            }
        }
        pm = next;
    }

    Bits decoded(steps);
    unsigned s = 0;
    for (std::size_t i = steps; i-- > 0;) {
        decoded[i] = static_cast<std::uint8_t>(s >> 5);
        s = prev[i][s];
    }
    decoded.resize(steps - kTailBits);
    return decoded;
}

}  // namespace

void CodeSpec::validate() const {
    if (constraint_length != 7 || g0 != 0171 || g1 != 0133) {
        throw Error(ErrorKind::Unsupported, "only the K=7 (171,133) code is supported");
    }
}

Bits conv_encode(std::span<const std::uint8_t> info, const CodeSpec& code) {
    code.validate();
    const Trellis t = make_trellis(code);
    Bits out;
    out.reserve(2 * (info.size() + kTailBits));
    unsigned s = 0;
    auto push = [&](unsigned b) {
        const auto o = t.out[s][b];
        out.push_back(static_cast<std::uint8_t>(o >> 1));
        out.push_back(static_cast<std::uint8_t>(o & 1u));
        s = next_state(s, b);
    };
    for (auto b : info) {
        if (b > 1) throw Error(ErrorKind::Parameter, "information bits must be 0 or 1");
        push(b);
    }
    for (std::size_t i = 0; i < kTailBits; ++i) push(0);
    return out;
}

Bits viterbi_decode(std::span<const std::uint8_t> code_bits, const CodeSpec& code) {
    code.validate();
    if (code_bits.size() % 2 != 0) throw Error(ErrorKind::Parameter, "code bit count must be even");
    for (auto b : code_bits)
        if (b > 1) throw Error(ErrorKind::Parameter, "code bits must be 0 or 1");
    return viterbi(code_bits.size() / 2, code, [&](std::size_t i, std::uint8_t o) {
        const int d = (code_bits[2 * i] != (o >> 1)) + (code_bits[2 * i + 1] != (o & 1u));
        return -static_cast<double>(d);
    });
}

Bits viterbi_decode_soft(std::span<const double> soft, const CodeSpec& code) {
    code.validate();
    if (soft.size() % 2 != 0) throw Error(ErrorKind::Parameter, "soft value count must be even");
    // Maximizing sum(r * s) with s = +1 for bit 0, -1 for bit 1 is minimizing ||r - s||^2.
    return viterbi(soft.size() / 2, code, [&](std::size_t i, std::uint8_t o) {
        const double a = (o >> 1) ? -soft[2 * i] : soft[2 * i];
        const double b = (o & 1u) ? -soft[2 * i + 1] : soft[2 * i + 1];
        return a + b;
    });
}

}  // namespace gfdm::fec
