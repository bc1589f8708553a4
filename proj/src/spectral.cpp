#include "filmflow/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace filmflow {

namespace {

// FFTW's planner is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FourierTransform::FourierTransform(int n) : n_(n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("FourierTransform: grid size must be even and >= 2, got " +
                                std::to_string(n));
  }
  std::vector<double> real(static_cast<std::size_t>(n));
  std::vector<Complex> half(static_cast<std::size_t>(n / 2 + 1));
  auto* hc = reinterpret_cast<fftw_complex*>(half.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_1d(n, real.data(), hc, FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, hc, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw std::runtime_error("FourierTransform: FFTW planning failed");
  }
}

FourierTransform::~FourierTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

Spectrum FourierTransform::forward(std::span<const double> samples) const {
  if (static_cast<int>(samples.size()) != n_) {
    throw std::invalid_argument("FourierTransform::forward: expected " + std::to_string(n_) +
                                " samples, got " + std::to_string(samples.size()));
  }
  std::vector<double> in(samples.begin(), samples.end());
  Spectrum out(static_cast<std::size_t>(n_ / 2 + 1));
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / n_;
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<double> FourierTransform::inverse(std::span<const Complex> spectrum) const {
  if (static_cast<int>(spectrum.size()) != n_ / 2 + 1) {
    throw std::invalid_argument("FourierTransform::inverse: expected " +
                                std::to_string(n_ / 2 + 1) + " modes, got " +
                                std::to_string(spectrum.size()));
  }
  // c2r overwrites its input.
  Spectrum in(spectrum.begin(), spectrum.end());
  std::vector<double> out(static_cast<std::size_t>(n_));
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(in.data()), out.data());
  return out;
}

const FourierTransform& fourier(int n) {
  static std::mutex cache_mutex;
  static std::map<int, std::unique_ptr<FourierTransform>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FourierTransform>(n);
  return *slot;
}

void differentiate_in_place(Spectrum& spectrum, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (order == 0) return;
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const Complex ik(0.0, wavenumber(static_cast<int>(n)));
    Complex factor = 1.0;
    for (int k = 0; k < order; ++k) factor *= ik;
    spectrum[n] *= factor;
  }
}

Spectrum derivative(std::span<const Complex> spectrum, int order) {
  Spectrum out(spectrum.begin(), spectrum.end());
  differentiate_in_place(out, order);
  return out;
}

int dealias_cutoff(int n, DealiasRule rule) {
  switch (rule) {
    case DealiasRule::TwoThirds: return n / 3;
    case DealiasRule::Half: return n / 4;
    case DealiasRule::None: return n / 2 - 1;
  }
  return n / 3;
}

void truncate_spectrum(Spectrum& spectrum, int cutoff) {
  if (spectrum.empty()) return;
  spectrum[0] = 0.0;
  for (std::size_t n = static_cast<std::size_t>(cutoff) + 1; n < spectrum.size(); ++n) {
    spectrum[n] = 0.0;
  }
  spectrum.back() = 0.0;
}

Spectrum resample_spectrum(std::span<const Complex> spectrum, int n) {
  Spectrum out(static_cast<std::size_t>(n / 2 + 1), Complex(0.0));
  const std::size_t keep = std::min(out.size(), spectrum.size());
  for (std::size_t k = 0; k < keep; ++k) out[k] = spectrum[k];
  out.back() = 0.0;
  return out;
}

std::vector<double> torus_grid(int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = static_cast<double>(j) / n;
  return x;
}

}  // namespace filmflow
