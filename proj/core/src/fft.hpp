#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <vector>

namespace gapgrad::detail {

// FFTW planning is not thread-safe; execution on distinct plans is.
inline std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

/// Real <-> half-complex transforms of fixed length, owning their buffers.
class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n),
        real_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        spec_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    std::lock_guard lock(fftw_plan_mutex());
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, spec_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec_, real_, FFTW_ESTIMATE);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  ~RealFft() {
    {
      std::lock_guard lock(fftw_plan_mutex());
      fftw_destroy_plan(forward_);
      fftw_destroy_plan(backward_);
    }
    fftw_free(real_);
    fftw_free(spec_);
  }

  std::size_t size() const { return n_; }

  /// Complex amplitudes c_n (n = 0..size/2) with f(t_j) = Re sum c_n e^{i n t_j}
  /// on t_j = 2 pi j / size, i.e. c_0 = mean and c_n = a_n - i b_n.
  std::vector<std::complex<double>> analyze(std::span<const double> samples) {
    for (std::size_t j = 0; j < n_; ++j) real_[j] = samples[j];
    fftw_execute(forward_);
    std::vector<std::complex<double>> c(n_ / 2 + 1);
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double scale = (k == 0 || 2 * k == n_) ? inv : 2.0 * inv;
      c[k] = {spec_[k][0] * scale, spec_[k][1] * scale};
    }
    return c;
  }

  /// Inverse of analyze: samples of Re sum_{n < amplitudes.size()} c_n e^{i n t_j}.
  std::vector<double> synthesize(std::span<const std::complex<double>> amplitudes) {
    const std::size_t half = n_ / 2 + 1;
    for (std::size_t k = 0; k < half; ++k) {
      std::complex<double> c = k < amplitudes.size() ? amplitudes[k] : 0.0;
      if (k != 0 && 2 * k != n_) c *= 0.5;
      spec_[k][0] = c.real();
      spec_[k][1] = c.imag();
    }
    spec_[0][1] = 0.0;
    fftw_execute(backward_);
    return {real_, real_ + n_};
  }

 private:
  std::size_t n_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan forward_;
  fftw_plan backward_;
};

}  // namespace gapgrad::detail
