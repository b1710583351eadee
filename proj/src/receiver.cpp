#include "gfdm/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfdm/spectral.hpp"

namespace gfdm {

const char* to_string(EqualizerKind kind) noexcept {
    switch (kind) {
        case EqualizerKind::MF: return "mf";
        case EqualizerKind::ZF: return "zf";
        case EqualizerKind::MmseBiased: return "mmse-biased";
        case EqualizerKind::MmseUnbiased: return "mmse-unbiased";
    }
    return "?";
}

const char* to_string(FdeKind kind) noexcept { return kind == FdeKind::ZF ? "zf" : "mmse"; }

EqualizerKind parse_equalizer_kind(const std::string& text) {
    if (text == "mf") return EqualizerKind::MF;
    if (text == "zf") return EqualizerKind::ZF;
    if (text == "mmse-biased" || text == "biased-mmse") return EqualizerKind::MmseBiased;
    if (text == "mmse-unbiased" || text == "unbiased-mmse" || text == "mmse") return EqualizerKind::MmseUnbiased;
    throw Error(ErrorKind::Parameter, "unknown equalizer '" + text + "' (mf, zf, mmse-biased, mmse-unbiased)");
}

FdeKind parse_fde_kind(const std::string& text) {
    if (text == "zf") return FdeKind::ZF;
    if (text == "mmse") return FdeKind::MMSE;
    throw Error(ErrorKind::Parameter, "unknown FDE '" + text + "' (zf, mmse)");
}

namespace {

// Throws a singularity error naming the first bin whose modulus is below
// the relative threshold.
void require_nonsingular(std::span<const cdouble> diag, const char* what) {
    double peak = 0;
    for (const auto& v : diag) peak = std::max(peak, std::abs(v));
    const double floor = kSingularityThreshold * peak;
    for (std::size_t r = 0; r < diag.size(); ++r) {
        if (!(std::abs(diag[r]) > floor)) {
            throw Error(ErrorKind::Singularity,
                        std::string(what) + " is singular at bin " + std::to_string(r), r);
        }
    }
}

// conj(v) / (|v|^2 + rho), with 0/0 taken as 0.
cdouble regularized_inverse(cdouble v, double rho) {
    const double den = std::norm(v) + rho;
    return den > 0 ? std::conj(v) / den : cdouble{};
}

}  // namespace

CVec fde_equalize(std::span<const cdouble> z, std::span<const cdouble> lambda, FdeKind kind, double snr_ratio) {
    const std::size_t K = z.size();
    require_length(lambda.size(), K, "fde_equalize");
    if (snr_ratio < 0) throw Error(ErrorKind::Parameter, "snr_ratio must be nonnegative");
    if (kind == FdeKind::ZF) require_nonsingular(lambda, "channel (ZF FDE)");

    CVec y(z.begin(), z.end());
    BlockDft(K, 1, FftDirection::Forward)(y);
    for (std::size_t r = 0; r < K; ++r) {
        y[r] *= kind == FdeKind::ZF ? 1.0 / lambda[r] : regularized_inverse(lambda[r], snr_ratio);
    }
    BlockDft(K, 1, FftDirection::Inverse)(y);
    return y;
}

double bias_scalar(std::span<const cdouble> lambda, double snr_ratio) {
    if (lambda.empty()) throw Error(ErrorKind::Parameter, "bias_scalar needs a nonempty diagonal");
    if (snr_ratio < 0) throw Error(ErrorKind::Parameter, "snr_ratio must be nonnegative");
    double acc = 0;
    for (const auto& v : lambda) {
        const double p = std::norm(v);
        if (p + snr_ratio > 0) acc += p / (p + snr_ratio);
    }
    return acc / static_cast<double>(lambda.size());
}

EqualizerFactors build_deq(std::span<const cdouble> lambda_bar, EqualizerKind kind, double snr_ratio) {
    if (lambda_bar.empty()) throw Error(ErrorKind::Parameter, "build_deq needs a nonempty diagonal");
    if (snr_ratio < 0) throw Error(ErrorKind::Parameter, "snr_ratio must be nonnegative");

    EqualizerFactors f;
    f.kind = kind;
    f.snr_ratio = snr_ratio;
    f.d_eq.resize(lambda_bar.size());
    switch (kind) {
        case EqualizerKind::MF:
            std::transform(lambda_bar.begin(), lambda_bar.end(), f.d_eq.begin(),
                           [](cdouble v) { return std::conj(v); });
            break;
        case EqualizerKind::ZF:
            require_nonsingular(lambda_bar, "pulse (ZF equalizer)");
            std::transform(lambda_bar.begin(), lambda_bar.end(), f.d_eq.begin(), [](cdouble v) { return 1.0 / v; });
            break;
        case EqualizerKind::MmseBiased:
        case EqualizerKind::MmseUnbiased:
            std::transform(lambda_bar.begin(), lambda_bar.end(), f.d_eq.begin(),
                           [snr_ratio](cdouble v) { return regularized_inverse(v, snr_ratio); });
            if (kind == EqualizerKind::MmseUnbiased) {
                f.bias = bias_scalar(lambda_bar, snr_ratio);
                if (!(f.bias > 0)) throw Error(ErrorKind::Singularity, "MMSE bias is zero");
            }
            break;
    }
    return f;
}

FastEqualizer::FastEqualizer(const GfdmParams& params, EqualizerFactors factors)
    : params_(params),
      factors_(std::move(factors)),
      dft_m_(params.M, params.N, FftDirection::Forward),
      idft_m_(params.M, params.N, FftDirection::Inverse),
      dft_n_(params.N, params.M, FftDirection::Forward) {
    params_.require_fast();
    require_length(factors_.d_eq.size(), params_.size(), "FastEqualizer d_eq");
}

void FastEqualizer::equalize(std::span<const cdouble> y, std::span<cdouble> d_hat) const {
    const std::size_t M = params_.M, N = params_.N, K = M * N;
    require_length(y.size(), K, "equalize_fast");
    require_length(d_hat.size(), K, "equalize_fast output");

    CVec t(K);
    permute_forward(y, t, M, N);
    dft_m_(t);
    for (std::size_t r = 0; r < K; ++r) t[r] *= factors_.d_eq[r];
    idft_m_(t);
    permute_inverse(t, d_hat, M, N);
    dft_n_(d_hat);
    if (factors_.bias != 1.0) {
        const double inv = 1.0 / factors_.bias;
        for (auto& v : d_hat) v *= inv;
    }
}

CVec FastEqualizer::equalize(std::span<const cdouble> y) const {
    CVec out(params_.size());
    equalize(y, out);
    return out;
}

CVec equalize_fast(std::span<const cdouble> y, const EqualizerFactors& factors, const GfdmParams& params) {
    return FastEqualizer(params, factors).equalize(y);
}

CMatrix build_equalizer_direct(const ModulationMatrix& a, EqualizerKind kind, double snr_ratio) {
    if (snr_ratio < 0) throw Error(ErrorKind::Parameter, "snr_ratio must be nonnegative");
    const CMatrix& A = a.a;
    const auto K = A.rows();
    switch (kind) {
        case EqualizerKind::MF: return A.adjoint();
        case EqualizerKind::ZF: {
            Eigen::FullPivLU<CMatrix> lu(A);
            if (!lu.isInvertible()) throw Error(ErrorKind::Singularity, "modulation matrix is singular");
            return lu.inverse();
        }
        case EqualizerKind::MmseBiased:
        case EqualizerKind::MmseUnbiased: {
            const CMatrix gram = A.adjoint() * A;
            const CMatrix reg = gram + snr_ratio * CMatrix::Identity(K, K);
            Eigen::PartialPivLU<CMatrix> lu(reg);
            CMatrix eq = lu.solve(CMatrix(A.adjoint()));
            if (kind == EqualizerKind::MmseUnbiased) {
                const CMatrix bias = lu.solve(gram);
                for (Eigen::Index i = 0; i < K; ++i) eq.row(i) /= bias(i, i).real();
            }
            return eq;
        }
    }
    throw Error(ErrorKind::Parameter, "unknown equalizer kind");
}

double condition_number(const EqualizerFactors& factors) {
    if (factors.d_eq.empty()) throw Error(ErrorKind::Parameter, "empty equalizer");
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    std::size_t arg = 0;
    for (std::size_t r = 0; r < factors.d_eq.size(); ++r) {
        const double v = std::abs(factors.d_eq[r]);
        if (v < lo) {
            lo = v;
            arg = r;
        }
        hi = std::max(hi, v);
    }
    if (!(lo > 0)) throw Error(ErrorKind::Singularity, "equalizer diagonal has a zero entry", arg);
    return hi / lo;
}

double condition_number(EqualizerKind kind, std::span<const cdouble> lambda_bar, double snr_ratio) {
    return condition_number(build_deq(lambda_bar, kind, snr_ratio));
}

}  // namespace gfdm
