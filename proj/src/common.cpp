#include "gfdm/common.hpp"
#include "gfdm/params.hpp"

namespace gfdm {

const char* error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parameter: return "ParameterError";
        case ErrorKind::Capacity: return "CapacityError";
        case ErrorKind::UnsupportedSize: return "UnsupportedSizeError";
        case ErrorKind::Singularity: return "SingularityError";
        case ErrorKind::Configuration: return "ConfigurationError";
        case ErrorKind::Unsupported: return "UnsupportedError";
        case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

void GfdmParams::validate() const {
    if (M < 1 || N < 1) throw Error(ErrorKind::Parameter, "M and N must be >= 1");
    if (!(sigma_d2 > 0)) throw Error(ErrorKind::Parameter, "sigma_d2 must be positive");
    if (!(sigma_nu2 >= 0)) throw Error(ErrorKind::Parameter, "sigma_nu2 must be nonnegative");
}

void GfdmParams::require_fast() const {
    validate();
    if (!fast_capable()) {
        throw Error(ErrorKind::UnsupportedSize, "fast path needs power-of-two M and N (M=" +
                                                    std::to_string(M) + ", N=" + std::to_string(N) + ")");
    }
}

}  // namespace gfdm
