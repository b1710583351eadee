#pragma once

#include "gfdm/pulse.hpp"

namespace gfdm {

// Perfect shuffle between time-slot-major (m*N + k) and subcarrier-major
// (k*M + m) orderings.
//   forward: out[i] = v[(i mod M)*N + floor(i/M)]
//   inverse: out[i] = v[(i mod N)*M + floor(i/N)]
CVec permute_forward(std::span<const cdouble> v, const GfdmParams& params);
CVec permute_inverse(std::span<const cdouble> v, const GfdmParams& params);

void permute_forward(std::span<const cdouble> in, std::span<cdouble> out, std::size_t M, std::size_t N);
void permute_inverse(std::span<const cdouble> in, std::span<cdouble> out, std::size_t M, std::size_t N);

/// Diagonal of the block-circulant factor:
///   lambda(r) = sum_m g[m*N + r mod N] * exp(-j 2 pi m floor(r/N) / M)
CVec spectral_diag_lambda(std::span<const cdouble> g, const GfdmParams& params);

/// lambda_bar(r) = lambda((r mod M)*N + floor(r/M)), i.e. the shuffled diagonal.
CVec spectral_diag_lambda_bar(std::span<const cdouble> lambda, const GfdmParams& params);

struct SpectralDiagonal {
    CVec lambda;
    CVec lambda_bar;

    double min_abs_bar() const;
    double max_abs_bar() const;
};

SpectralDiagonal spectral_diagonal(const PrototypeFilter& pulse, const GfdmParams& params);

}  // namespace gfdm
