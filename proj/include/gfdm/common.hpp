#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfdm {

using cdouble = std::complex<double>;
using CVec = std::vector<cdouble>;
using Bits = std::vector<std::uint8_t>;

enum class ErrorKind {
    Parameter,
    Capacity,
    UnsupportedSize,
    Singularity,
    Configuration,
    Unsupported,
    Io,
};

const char* error_kind_name(ErrorKind kind) noexcept;

// Single exception type for the library; `kind()` carries the typed category
// and `bin()` the offending spectral bin for singularity errors.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> bin = std::nullopt)
        : std::runtime_error(what), kind_(kind), bin_(bin) {}

    ErrorKind kind() const noexcept { return kind_; }
    const char* kind_name() const noexcept { return error_kind_name(kind_); }
    std::optional<std::size_t> bin() const noexcept { return bin_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> bin_;
};

constexpr bool is_power_of_two(std::size_t v) noexcept { return v != 0 && (v & (v - 1)) == 0; }

inline void require_length(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw Error(ErrorKind::Parameter, std::string(what) + ": expected length " +
                                              std::to_string(want) + ", got " + std::to_string(got));
    }
}

}  // namespace gfdm
