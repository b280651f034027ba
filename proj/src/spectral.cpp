#include "subplanck/spectral.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace subplanck::spectral {

namespace {

Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

Eigen::VectorXcd fft(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd out(x.size());
  engine().fwd(out, x);
  return out;
}

Eigen::VectorXcd ifft(const Eigen::VectorXcd& X) {
  Eigen::VectorXcd out(X.size());
  engine().inv(out, X);
  return out;
}

Eigen::VectorXcd shift(const Eigen::VectorXcd& f, double shift) {
  const long n = f.size();
  Eigen::VectorXcd F = fft(f);
  for (long m = 0; m < n; ++m) {
    const long k = signed_index(m, n);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) * shift / static_cast<double>(n);
    if (2 * k == -n) {
      F[m] *= std::cos(angle);
    } else {
      F[m] *= std::complex<double>(std::cos(angle), std::sin(angle));
    }
  }
  return ifft(F);
}

Eigen::VectorXcd upsample2(const Eigen::VectorXcd& f) {
  const long n = f.size();
  const Eigen::VectorXcd F = fft(f);
  Eigen::VectorXcd G = Eigen::VectorXcd::Zero(2 * n);
  for (long m = 0; m < n / 2; ++m) G[m] = F[m];
  for (long m = n / 2 + 1; m < n; ++m) G[m + n] = F[m];
  // Split the Nyquist bin between +n/2 and -n/2.
  G[n / 2] = 0.5 * F[n / 2];
  G[n + n / 2] = 0.5 * F[n / 2];
  return 2.0 * ifft(G);
}

}  // namespace subplanck::spectral
