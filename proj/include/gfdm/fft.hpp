#pragma once

#include "gfdm/common.hpp"

namespace gfdm {

enum class FftDirection {
    Forward,  ///< exp(-j 2 pi n k / size)
    Inverse,  ///< exp(+j 2 pi n k / size)
};

enum class FftScale {
    Unitary,  ///< 1/sqrt(size) in both directions
    None,
};

/// `count` contiguous transforms of length `size`, executed in place.
///
/// Plans come from a process-wide cache (planning is serialized, execution is
/// reentrant), so instances are cheap handles and safe to share across threads.
class BlockDft {
public:
    BlockDft(std::size_t size, std::size_t count, FftDirection dir, FftScale scale = FftScale::Unitary);

    void operator()(std::span<cdouble> data) const;

    std::size_t size() const noexcept { return size_; }
    std::size_t count() const noexcept { return count_; }

private:
    std::size_t size_;
    std::size_t count_;
    double scale_;
    void* plan_;  // fftw_plan, owned by the cache
};

}  // namespace gfdm
