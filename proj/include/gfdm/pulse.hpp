#pragma once

#include <iosfwd>

#include "gfdm/params.hpp"

namespace gfdm {

enum class PulseFamily {
    RaisedCosine,
    RectTimeDelta,  ///< g[n] = 1 on the first N samples, 0 elsewhere (OFDM-equivalent)
    RectFull,       ///< constant over the whole block; singular for M > 1
    Custom,         ///< user-supplied coefficients
};

struct PulseSpec {
    PulseFamily family = PulseFamily::RaisedCosine;
    double rolloff = 0.1;

    /// Accepts "rc:<alpha>", "rect-delta", "rect-full".
    static PulseSpec parse(const std::string& text);
    std::string to_string() const;
};

/// MN prototype filter coefficients, energy-normalized to sum |g|^2 = N.
struct PrototypeFilter {
    PulseSpec spec;
    CVec g;
};

/// Builds the prototype pulse for the given geometry.
///
/// The raised-cosine family is defined in the frequency domain on the MN-bin
/// grid, with one subcarrier spanning M bins. The taper is sampled at half-bin
/// offsets, nu = (f + 1/2) / M, so no bin lands on the crossover nu = 1/2
/// where neighbouring subcarriers would cancel for even M. The result is
/// inverse-transformed and normalized; coefficients are complex.
PrototypeFilter build_prototype_pulse(const PulseSpec& spec, const GfdmParams& params);

/// Raised-cosine amplitude at normalized frequency nu (subcarrier units).
double raised_cosine_response(double nu, double rolloff);

/// Wraps externally supplied coefficients, rescaling them to sum |g|^2 = N.
PrototypeFilter pulse_from_coefficients(CVec g, const GfdmParams& params);

/// CSV with header `index,re,im`, one row per sample.
void write_pulse_csv(std::ostream& os, std::span<const cdouble> g);
CVec read_pulse_csv(std::istream& is);

}  // namespace gfdm
