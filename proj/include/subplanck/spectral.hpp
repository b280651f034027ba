#pragma once

#include <Eigen/Dense>

namespace subplanck::spectral {

/// Forward DFT, X_m = sum_j x_j exp(-2 pi i j m / n).
Eigen::VectorXcd fft(const Eigen::VectorXcd& x);
/// Inverse DFT including the 1/n factor.
Eigen::VectorXcd ifft(const Eigen::VectorXcd& X);

/// Signed integer frequency index of FFT bin m: 0..n/2-1, then -n/2..-1.
inline long signed_index(long m, long n) { return m < n / 2 ? m : m - n; }

/// Band-limited periodic shift: returns g with g_j = f(x_j + shift * dx),
/// i.e. `shift` is measured in samples and may be fractional. The Nyquist
/// bin is treated symmetrically so real input stays real.
Eigen::VectorXcd shift(const Eigen::VectorXcd& f, double shift);

/// Band-limited 2x upsampling: the result has 2n samples at spacing dx/2 and
/// agrees with f on even indices.
Eigen::VectorXcd upsample2(const Eigen::VectorXcd& f);

}  // namespace subplanck::spectral
