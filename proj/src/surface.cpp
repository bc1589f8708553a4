#include "filmflow/surface.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace filmflow {

namespace {

void check_resolution(int n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("surface resolution must be even and >= 4, got " +
                                std::to_string(n));
  }
}

}  // namespace

SurfaceState::SurfaceState(int n, double tau)
    : coeffs_(static_cast<std::size_t>(n / 2 + 1), Complex(0.0)), n_(n), tau_(tau) {
  check_resolution(n);
}

SurfaceState::SurfaceState(Spectrum coeffs, int n, double tau)
    : coeffs_(std::move(coeffs)), n_(n), tau_(tau) {
  check_resolution(n);
  if (static_cast<int>(coeffs_.size()) != n / 2 + 1) {
    throw std::invalid_argument("SurfaceState: spectrum length does not match resolution");
  }
  coeffs_.front() = 0.0;
  coeffs_.back() = 0.0;
}

SurfaceState SurfaceState::from_samples(std::span<const double> samples, DealiasRule rule,
                                        std::vector<std::string>* warnings) {
  const int n = static_cast<int>(samples.size());
  check_resolution(n);
  Spectrum c = fourier(n).forward(samples);
  const double mean = c.front().real();
  if (std::abs(mean) > 1e-14 && warnings != nullptr) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "initial profile has mean " << mean << "; subtracted";
    warnings->push_back(msg.str());
  }
  truncate_spectrum(c, dealias_cutoff(n, rule));
  return SurfaceState(std::move(c), n);
}

Complex SurfaceState::coeff(int n) const {
  if (n <= -n_ / 2 || n > n_ / 2) {
    throw std::out_of_range("mode " + std::to_string(n) + " outside resolution " +
                            std::to_string(n_));
  }
  return n >= 0 ? coeffs_[static_cast<std::size_t>(n)]
                : std::conj(coeffs_[static_cast<std::size_t>(-n)]);
}

void SurfaceState::set_coeff(int n, Complex value) {
  if (n == 0 || std::abs(n) >= n_ / 2) {
    throw std::out_of_range("set_coeff: mode " + std::to_string(n) +
                            " must satisfy 0 < |n| < N/2");
  }
  coeffs_[static_cast<std::size_t>(std::abs(n))] = n > 0 ? value : std::conj(value);
}

std::vector<double> SurfaceState::samples() const { return fourier(n_).inverse(coeffs_); }

int SurfaceState::highest_mode() const {
  for (int n = static_cast<int>(coeffs_.size()) - 1; n > 0; --n) {
    if (coeffs_[static_cast<std::size_t>(n)] != Complex(0.0)) return n;
  }
  return 0;
}

SurfaceState from_modes(int n, std::span<const ModeCoefficient> modes) {
  SurfaceState s(n);
  for (const auto& m : modes) {
    if (m.n == 0) {
      throw std::invalid_argument("mode list must not contain the mean mode n=0");
    }
    s.set_coeff(m.n, s.coeff(m.n) + (m.n > 0 ? m.value : std::conj(m.value)));
  }
  return s;
}

SurfaceState cosine_profile(int n, double amplitude, int mode) {
  SurfaceState s(n);
  s.set_coeff(mode, Complex(0.5 * amplitude, 0.0));
  return s;
}

SurfaceState sine_profile(int n, double amplitude, int mode) {
  SurfaceState s(n);
  s.set_coeff(mode, Complex(0.0, -0.5 * amplitude));
  return s;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SurfaceState noise_profile(int n, double amplitude, double width, std::uint64_t seed) {
  if (!(width > 0.0)) throw std::invalid_argument("noise width must be positive");
  SurfaceState s(n);
  SplitMix64 rng(seed);
  const int cutoff = dealias_cutoff(n, DealiasRule::TwoThirds);
  double energy = 0.0;
  for (int k = 1; k <= cutoff; ++k) {
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const double mag = std::exp(-static_cast<double>(k) * k / (width * width));
    s.set_coeff(k, std::polar(mag, phase));
    energy += 2.0 * mag * mag;
  }
  if (energy > 0.0) {
    const double scale = amplitude / std::sqrt(energy);
    for (auto& c : s.spectrum()) c *= scale;
  }
  return s;
}

}  // namespace filmflow
