#include "gfdm/modmatrix.hpp"

#include <cmath>
#include <numbers>

#include "gfdm/spectral.hpp"
#include "gfdm/transmitter.hpp"

namespace gfdm {
namespace {

void check_cap(const GfdmParams& params, std::size_t cap) {
    params.validate();
    if (params.size() > cap) {
        throw Error(ErrorKind::Capacity, "dense oracle limited to MN <= " + std::to_string(cap) + " (MN=" +
                                             std::to_string(params.size()) + ")");
    }
}

}  // namespace

ModulationMatrix build_modmatrix_direct(const PrototypeFilter& pulse, const GfdmParams& params, std::size_t cap) {
    check_cap(params, cap);
    const std::size_t M = params.M, N = params.N, K = M * N;
    require_length(pulse.g.size(), K, "build_modmatrix_direct");

    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    ModulationMatrix out{CMatrix(K, K)};
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t k = 0; k < N; ++k) {
            const std::size_t col = m * N + k;
            for (std::size_t n = 0; n < K; ++n) {
                const std::size_t tap = (n + K - m * N) % K;
                const double phase = 2.0 * std::numbers::pi * static_cast<double>((k * n) % N) / static_cast<double>(N);
                out.a(n, col) = scale * pulse.g[tap] * std::polar(1.0, phase);
            }
        }
    }
    return out;
}

ModulationMatrix build_modmatrix_factored(const PrototypeFilter& pulse, const GfdmParams& params, std::size_t cap) {
    check_cap(params, cap);
    params.require_fast();
    const std::size_t K = params.size();
    require_length(pulse.g.size(), K, "build_modmatrix_factored");

    const FastModulator mod(params, spectral_diagonal(pulse, params).lambda_bar);
    ModulationMatrix out{CMatrix(K, K)};
    CVec e(K), col(K);
    for (std::size_t j = 0; j < K; ++j) {
        std::fill(e.begin(), e.end(), cdouble{});
        e[j] = 1.0;
        mod.modulate(e, col);
        for (std::size_t n = 0; n < K; ++n) out.a(n, j) = col[n];
    }
    return out;
}

}  // namespace gfdm
