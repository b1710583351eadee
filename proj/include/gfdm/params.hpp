#pragma once

#include "gfdm/common.hpp"

namespace gfdm {

/// Block geometry and signal/noise variances of one GFDM block.
///
/// Data are ordered time-slot-major: index m*N + k addresses sub-symbol m
/// on subcarrier k.
struct GfdmParams {
    std::size_t M = 1;  ///< time slots (sub-symbols)
    std::size_t N = 1;  ///< subcarriers
    std::size_t n_cp = 0;
    double sigma_d2 = 1.0;
    double sigma_nu2 = 0.0;

    std::size_t size() const noexcept { return M * N; }
    double snr_ratio() const noexcept { return sigma_nu2 / sigma_d2; }
    bool fast_capable() const noexcept { return is_power_of_two(M) && is_power_of_two(N); }

    /// Throws ErrorKind::Parameter on invalid geometry or variances.
    void validate() const;
    /// Throws ErrorKind::UnsupportedSize unless M and N are powers of two.
    void require_fast() const;
};

}  // namespace gfdm
