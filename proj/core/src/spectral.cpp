#include "photonwave/spectral.hpp"

#include <fftw3.h>

#include <mutex>

namespace photonwave {

namespace {
// The FFTW planner is not thread-safe; execution with distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft3::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  // Plans are created on a scratch buffer and executed via the new-array
  // interface, so the class can transform caller-owned storage.
  fftw_complex* scratch = nullptr;
};

Fft3::Fft3(const GridSpec& grid, int howmany) : grid_(grid), howmany_(howmany) {
  grid_.validate();
  if (howmany < 1) throw ValidationError("fft: howmany must be >= 1");
  impl_ = std::make_unique<Impl>();
  const std::size_t total = grid_.size() * static_cast<std::size_t>(howmany);
  impl_->scratch = fftw_alloc_complex(total);
  if (!impl_->scratch) throw std::bad_alloc();

  const int dims[3] = {grid_.n[0], grid_.n[1], grid_.n[2]};
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->fwd = fftw_plan_many_dft(3, dims, howmany, impl_->scratch, nullptr, howmany, 1,
                                  impl_->scratch, nullptr, howmany, 1, FFTW_FORWARD,
                                  FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_many_dft(3, dims, howmany, impl_->scratch, nullptr, howmany, 1,
                                  impl_->scratch, nullptr, howmany, 1, FFTW_BACKWARD,
                                  FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("fftw plan creation failed");
}

Fft3::~Fft3() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
  if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
  if (impl_->scratch) fftw_free(impl_->scratch);
}

void Fft3::analyze(std::complex<double>* data) const {
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(impl_->fwd, raw, raw);
  const double inv_n = 1.0 / static_cast<double>(grid_.size());
  const std::size_t total = grid_.size() * static_cast<std::size_t>(howmany_);
  for (std::size_t i = 0; i < total; ++i) data[i] *= inv_n;
}

void Fft3::synthesize(std::complex<double>* data) const {
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(impl_->bwd, raw, raw);
}

void fft_analyze(const GridSpec& grid, int howmany, std::vector<std::complex<double>>& data) {
  Fft3 fft(grid, howmany);
  fft.analyze(data.data());
}

void fft_synthesize(const GridSpec& grid, int howmany, std::vector<std::complex<double>>& data) {
  Fft3 fft(grid, howmany);
  fft.synthesize(data.data());
}

}  // namespace photonwave
