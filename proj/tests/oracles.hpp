#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls the library's transform or factorization code.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Unitary DFT matrix, F[k, n] = exp(-j 2 pi k n / n_size) / sqrt(n_size).
inline Mat dft_matrix(std::size_t n) {
    Mat f(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            f(k, i) = s * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * i) % n) / n);
    return f;
}

inline Mat idft_matrix(std::size_t n) { return dft_matrix(n).adjoint(); }

// count copies of b along the diagonal.
inline Mat block_diag(const Mat& b, std::size_t count) {
    const auto s = b.rows();
    Mat out = Mat::Zero(s * count, s * count);
    for (std::size_t i = 0; i < count; ++i) out.block(i * s, i * s, s, s) = b;
    return out;
}

// Perfect-shuffle matrix from its element definition: P[l, q] = 1 iff
// q = (l mod M) N + floor(l / M).
inline Mat shuffle_matrix(std::size_t M, std::size_t N) {
    const std::size_t K = M * N;
    Mat p = Mat::Zero(K, K);
    for (std::size_t l = 0; l < K; ++l) p(l, (l % M) * N + l / M) = 1.0;
    return p;
}

// Naive DFT, sign -1, no scaling.
inline std::vector<cd> naive_dft(const std::vector<cd>& x) {
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            acc += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * i) % n) / n);
        out[k] = acc;
    }
    return out;
}

// lambda(r) = sum_m g[m N + r mod N] exp(-j 2 pi m floor(r/N) / M), evaluated term by term.
inline std::vector<cd> lambda_formula(const std::vector<cd>& g, std::size_t M, std::size_t N) {
    std::vector<cd> out(M * N);
    for (std::size_t r = 0; r < M * N; ++r) {
        cd acc = 0;
        for (std::size_t m = 0; m < M; ++m) {
            acc += g[m * N + r % N] *
                   std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((m * (r / N)) % M) / M);
        }
        out[r] = acc;
    }
    return out;
}

// Circular convolution matrix H[n, k] = h[(n - k) mod K].
inline Mat circulant(const std::vector<cd>& h, std::size_t K) {
    Mat c = Mat::Zero(K, K);
    for (std::size_t n = 0; n < K; ++n)
        for (std::size_t s = 0; s < h.size(); ++s) c(n, (n + K - s) % K) += h[s];
    return c;
}

inline double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// Gray-coded square 16-QAM in AWGN: Pb = 1/4 [3 Q(a) + 2 Q(3a) - Q(5a)], a = sqrt(Es / (5 N0)).
inline double qam16_ber(double es_n0) {
    const double a = std::sqrt(es_n0 / 5.0);
    return 0.25 * (3 * q_function(a) + 2 * q_function(3 * a) - q_function(5 * a));
}

// Condition number through singular values.
inline double svd_condition(const Mat& a) {
    Eigen::BDCSVD<Mat> svd(a);
    const auto& s = svd.singularValues();
    return s(0) / s(s.size() - 1);
}

}  // namespace oracle
