#pragma once

#include <filesystem>

#include "gfdm/fft.hpp"
#include "gfdm/modmatrix.hpp"
#include "gfdm/spectral.hpp"

namespace gfdm {

struct BasebandSignal {
    CVec x;
    bool has_cp = false;
    std::size_t n_cp = 0;
};

BasebandSignal modulate_direct(const ModulationMatrix& a, std::span<const cdouble> d);

/// x = P^T Gamma_M diag(lambda_bar) Gamma_M^H P Gamma_N d, without forming A.
BasebandSignal modulate_fast(const GfdmParams& params, std::span<const cdouble> lambda_bar,
                             std::span<const cdouble> d);

/// Reusable fast modulator. Holds lambda_bar and the transform handles, so
/// one instance can serve concurrent callers.
class FastModulator {
public:
    FastModulator(const GfdmParams& params, CVec lambda_bar);

    void modulate(std::span<const cdouble> d, std::span<cdouble> x) const;
    CVec modulate(std::span<const cdouble> d) const;

    const GfdmParams& params() const noexcept { return params_; }

private:
    GfdmParams params_;
    CVec lambda_bar_;
    BlockDft idft_n_;  // M blocks of N
    BlockDft dft_m_;   // N blocks of M
    BlockDft idft_m_;
};

BasebandSignal add_cp(const BasebandSignal& x, std::size_t n_cp);

// Baseband I/Q export. Binary is little-endian interleaved float64 (re, im);
// the sidecar is a key = value text file next to the samples.
struct IqMetadata {
    std::size_t M = 0;
    std::size_t N = 0;
    std::size_t n_cp = 0;
    std::size_t blocks = 0;
    std::string pulse;
    std::string format = "f64le";
};

void write_iq_binary(const std::filesystem::path& path, std::span<const cdouble> samples);
CVec read_iq_binary(const std::filesystem::path& path);
void write_iq_csv(const std::filesystem::path& path, std::span<const cdouble> samples);
CVec read_iq_csv(const std::filesystem::path& path);
void write_iq_sidecar(const std::filesystem::path& path, const IqMetadata& meta);
IqMetadata read_iq_sidecar(const std::filesystem::path& path);

}  // namespace gfdm
