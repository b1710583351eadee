#pragma once

#include <Eigen/Dense>

#include "gfdm/pulse.hpp"

namespace gfdm {

using CMatrix = Eigen::MatrixXcd;

inline constexpr std::size_t kDefaultOracleCap = 4096;

/// Dense MN x MN modulation matrix; oracle path only.
struct ModulationMatrix {
    CMatrix a;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(a.rows()); }
};

/// A[n, mN+k] = g[(n - mN) mod MN] * exp(j 2 pi k n / N) / sqrt(N)
ModulationMatrix build_modmatrix_direct(const PrototypeFilter& pulse, const GfdmParams& params,
                                        std::size_t cap = kDefaultOracleCap);

/// Materializes the factored form by pushing every basis vector through
/// the fast transmitter pipeline.
ModulationMatrix build_modmatrix_factored(const PrototypeFilter& pulse, const GfdmParams& params,
                                          std::size_t cap = kDefaultOracleCap);

}  // namespace gfdm
