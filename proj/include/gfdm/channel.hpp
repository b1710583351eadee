#pragma once

#include <filesystem>
#include <iosfwd>
#include <random>

#include "gfdm/transmitter.hpp"

namespace gfdm {

using Rng = std::mt19937_64;

/// Independent generator stream for (seed, a, b); used to give each Monte
/// Carlo batch its own reproducible stream.
Rng make_rng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0);

/// Zero-mean circularly symmetric complex Gaussian with E|z|^2 = variance.
cdouble complex_gaussian(Rng& rng, double variance);

struct ChannelProfile {
    std::string name;
    std::vector<double> delays_ns;
    std::vector<double> powers_db;

    void validate() const;

    /// 3GPP Extended Typical Urban.
    static ChannelProfile etu();
    /// Built-in name ("ETU") or a path to a key-value profile file.
    static ChannelProfile resolve(const std::string& name_or_path);
};

/// Reads `delays_ns = ...` and `powers_db = ...` (comma or space separated).
ChannelProfile parse_channel_profile(std::istream& is, std::string name = "custom");
ChannelProfile load_channel_profile(const std::filesystem::path& path);

/// Sample-spaced power-delay profile after quantizing delays to round(delay*fs).
/// Powers landing in the same bin add; total power is normalized to 1.
std::vector<double> quantized_tap_powers(const ChannelProfile& profile, double fs);

struct ChannelRealization {
    CVec h;       ///< sample-spaced impulse response
    CVec lambda;  ///< MN-point frequency response

    std::size_t taps() const noexcept { return h.size(); }
};

/// One block-fading draw. Throws ErrorKind::Configuration when the quantized
/// profile is longer than the cyclic prefix.
ChannelRealization draw_channel(const ChannelProfile& profile, double fs, const GfdmParams& params,
                                Rng& rng);

/// Lambda[r] = sum_s h[s] exp(-j 2 pi s r / mn)
CVec channel_freq_coeffs(std::span<const cdouble> h, std::size_t mn);

/// Linear convolution with h plus complex AWGN of per-sample variance sigma_nu2.
/// Output length is len(x_cp) + L - 1.
CVec apply_channel(const BasebandSignal& x_cp, std::span<const cdouble> h, double sigma_nu2, Rng& rng);

/// Drops the first n_cp and the trailing L - 1 samples.
CVec remove_cp(std::span<const cdouble> z_cp, const GfdmParams& params, std::size_t taps);

}  // namespace gfdm
