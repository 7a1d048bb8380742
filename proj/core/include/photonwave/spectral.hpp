#pragma once

// Thin FFTW wrapper for periodic 3-D transforms of interleaved complex
// fields. Convention: field(x) = sum_k c(k) exp(+i k.x), so analysis is
// the FFTW_FORWARD transform scaled by 1/N and synthesis is FFTW_BACKWARD
// unscaled. Plans use FFTW_ESTIMATE so results are run-to-run deterministic.

#include <complex>
#include <memory>
#include <vector>

#include "photonwave/grid.hpp"

namespace photonwave {

class Fft3 {
 public:
  /// howmany interleaved complex components per grid point.
  Fft3(const GridSpec& grid, int howmany);
  ~Fft3();
  Fft3(const Fft3&) = delete;
  Fft3& operator=(const Fft3&) = delete;

  /// In-place analysis: position values -> Fourier coefficients (1/N scaled).
  void analyze(std::complex<double>* data) const;
  /// In-place synthesis: Fourier coefficients -> position values.
  void synthesize(std::complex<double>* data) const;

  const GridSpec& grid() const { return grid_; }

 private:
  struct Impl;
  GridSpec grid_;
  int howmany_;
  std::unique_ptr<Impl> impl_;
};

/// One-shot helpers for a vector of interleaved complex data
/// (size = grid.size() * howmany).
void fft_analyze(const GridSpec& grid, int howmany, std::vector<std::complex<double>>& data);
void fft_synthesize(const GridSpec& grid, int howmany, std::vector<std::complex<double>>& data);

}  // namespace photonwave
