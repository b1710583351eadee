#include "gfdm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfdm/fft.hpp"

namespace gfdm {

void permute_forward(std::span<const cdouble> in, std::span<cdouble> out, std::size_t M, std::size_t N) {
    require_length(in.size(), M * N, "permute_forward");
    require_length(out.size(), M * N, "permute_forward output");
    // out is N blocks of M: out[k*M + m] = in[m*N + k]
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t m = 0; m < M; ++m) out[k * M + m] = in[m * N + k];
}

void permute_inverse(std::span<const cdouble> in, std::span<cdouble> out, std::size_t M, std::size_t N) {
    require_length(in.size(), M * N, "permute_inverse");
    require_length(out.size(), M * N, "permute_inverse output");
    for (std::size_t m = 0; m < M; ++m)
        for (std::size_t k = 0; k < N; ++k) out[m * N + k] = in[k * M + m];
}

CVec permute_forward(std::span<const cdouble> v, const GfdmParams& params) {
    CVec out(v.size());
    permute_forward(v, out, params.M, params.N);
    return out;
}

CVec permute_inverse(std::span<const cdouble> v, const GfdmParams& params) {
    CVec out(v.size());
    permute_inverse(v, out, params.M, params.N);
    return out;
}

CVec spectral_diag_lambda(std::span<const cdouble> g, const GfdmParams& params) {
    params.validate();
    require_length(g.size(), params.size(), "spectral_diag_lambda");
    // After the shuffle, block k holds g[m*N + k] for m = 0..M-1; an unscaled
    // forward M-point DFT of that block gives lambda(q*N + k) at position q.
    CVec shuffled = permute_forward(g, params);
    BlockDft(params.M, params.N, FftDirection::Forward, FftScale::None)(shuffled);
    return permute_inverse(shuffled, params);
}

CVec spectral_diag_lambda_bar(std::span<const cdouble> lambda, const GfdmParams& params) {
    return permute_forward(lambda, params);
}

double SpectralDiagonal::min_abs_bar() const {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& x : lambda_bar) v = std::min(v, std::abs(x));
    return v;
}

double SpectralDiagonal::max_abs_bar() const {
    double v = 0;
    for (const auto& x : lambda_bar) v = std::max(v, std::abs(x));
    return v;
}

SpectralDiagonal spectral_diagonal(const PrototypeFilter& pulse, const GfdmParams& params) {
    SpectralDiagonal out;
    out.lambda = spectral_diag_lambda(pulse.g, params);
    out.lambda_bar = spectral_diag_lambda_bar(out.lambda, params);
    return out;
}

}  // namespace gfdm
