#pragma once

#include "gfdm/fft.hpp"
#include "gfdm/modmatrix.hpp"

namespace gfdm {

enum class EqualizerKind { MF, ZF, MmseBiased, MmseUnbiased };
enum class FdeKind { ZF, MMSE };

const char* to_string(EqualizerKind kind) noexcept;
const char* to_string(FdeKind kind) noexcept;
EqualizerKind parse_equalizer_kind(const std::string& text);
FdeKind parse_fde_kind(const std::string& text);

/// Relative modulus below which a diagonal entry counts as zero on ZF paths.
inline constexpr double kSingularityThreshold = 1e-12;

/// Frequency-domain channel equalization: y = W Lambda_eq W^H z.
CVec fde_equalize(std::span<const cdouble> z, std::span<const cdouble> lambda, FdeKind kind,
                  double snr_ratio);

/// Entire state of the fast self-interference equalizer.
struct EqualizerFactors {
    CVec d_eq;
    double bias = 1.0;
    EqualizerKind kind = EqualizerKind::ZF;
    double snr_ratio = 0.0;
};

EqualizerFactors build_deq(std::span<const cdouble> lambda_bar, EqualizerKind kind, double snr_ratio);

/// B = (1/MN) sum_r |lambda_r|^2 / (|lambda_r|^2 + snr_ratio)
double bias_scalar(std::span<const cdouble> lambda, double snr_ratio);

CVec equalize_fast(std::span<const cdouble> y, const EqualizerFactors& factors, const GfdmParams& params);

/// Reusable fast equalizer, shareable across threads.
class FastEqualizer {
public:
    FastEqualizer(const GfdmParams& params, EqualizerFactors factors);

    void equalize(std::span<const cdouble> y, std::span<cdouble> d_hat) const;
    CVec equalize(std::span<const cdouble> y) const;

    const EqualizerFactors& factors() const noexcept { return factors_; }

private:
    GfdmParams params_;
    EqualizerFactors factors_;
    BlockDft dft_m_;
    BlockDft idft_m_;
    BlockDft dft_n_;
};

/// Dense A_eq: A^H (MF), A^-1 (ZF), (rho I + A^H A)^-1 A^H (biased MMSE),
/// and the latter left-multiplied by diag(...)^-1 for unbiased MMSE.
CMatrix build_equalizer_direct(const ModulationMatrix& a, EqualizerKind kind, double snr_ratio);

/// kappa(A_eq) = max|d_eq| / min|d_eq|.
double condition_number(const EqualizerFactors& factors);
double condition_number(EqualizerKind kind, std::span<const cdouble> lambda_bar, double snr_ratio);

}  // namespace gfdm
