#include "gfdm/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace gfdm {
namespace {

// FFTW planning is not thread-safe; execution with fftw_execute_dft is.
// Plans live for the lifetime of the process.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t size, std::size_t count, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(size, count, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        // In-place, unaligned plan so any std::vector<std::complex<double>>
        // buffer can be passed to fftw_execute_dft.
        auto* buf = fftw_alloc_complex(size * count);
        int n = static_cast<int>(size);
        fftw_plan plan = fftw_plan_many_dft(1, &n, static_cast<int>(count), buf, nullptr, 1, n, buf, nullptr,
                                            1, n, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (plan == nullptr) throw Error(ErrorKind::Unsupported, "FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    PlanCache() = default;

    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

}  // namespace

BlockDft::BlockDft(std::size_t size, std::size_t count, FftDirection dir, FftScale scale)
    : size_(size),
      count_(count),
      scale_(scale == FftScale::Unitary ? 1.0 / std::sqrt(static_cast<double>(size)) : 1.0),
      plan_(nullptr) {
    if (size == 0 || count == 0) throw Error(ErrorKind::Parameter, "BlockDft needs nonzero size and count");
    plan_ = PlanCache::instance().get(size, count, dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD);
}

void BlockDft::operator()(std::span<cdouble> data) const {
    require_length(data.size(), size_ * count_, "BlockDft");
    if (size_ == 1) return;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_), p, p);
    if (scale_ != 1.0) {
        for (auto& v : data) v *= scale_;
    }
}

}  // namespace gfdm
