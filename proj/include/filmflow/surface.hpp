#ifndef FILMFLOW_SURFACE_HPP_
#define FILMFLOW_SURFACE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "filmflow/spectral.hpp"

namespace filmflow {

/// Mean-zero real surface profile on the unit torus, stored as its half
/// spectrum. Hermitian symmetry holds by construction; the zero and
/// Nyquist modes are kept at zero.
class SurfaceState {
 public:
  /// Zero profile at resolution n (even, >= 4).
  explicit SurfaceState(int n, double tau = 0.0);
  SurfaceState(Spectrum coeffs, int n, double tau = 0.0);

  /// Sample a real field on the grid x_j = j/N. A nonzero mean is removed;
  /// when |mean| > 1e-14 a warning is appended to *warnings.
  static SurfaceState from_samples(std::span<const double> samples,
                                   DealiasRule rule = DealiasRule::TwoThirds,
                                   std::vector<std::string>* warnings = nullptr);

  int resolution() const { return n_; }
  double tau() const { return tau_; }
  void set_tau(double tau) { tau_ = tau; }

  /// Coefficient of exp(2 pi i n x) for any n in (-N/2, N/2].
  Complex coeff(int n) const;
  /// Sets mode n and its conjugate partner. n must satisfy 0 < |n| < N/2.
  void set_coeff(int n, Complex value);

  const Spectrum& spectrum() const { return coeffs_; }
  Spectrum& spectrum() { return coeffs_; }

  std::vector<double> samples() const;
  double mean() const { return coeffs_.front().real(); }

  /// Largest |n| with a nonzero coefficient (0 for the zero profile).
  int highest_mode() const;

  friend bool operator==(const SurfaceState&, const SurfaceState&) = default;

 private:
  Spectrum coeffs_;
  int n_;
  double tau_;
};

/// One entry of a finite Fourier mode list: coefficient of exp(2 pi i n x),
/// with the conjugate implied for -n.
struct ModeCoefficient {
  int n = 1;
  Complex value;
};

SurfaceState from_modes(int n, std::span<const ModeCoefficient> modes);

/// amplitude * cos(2 pi mode x)
SurfaceState cosine_profile(int n, double amplitude, int mode = 1);
/// amplitude * sin(2 pi mode x)
SurfaceState sine_profile(int n, double amplitude, int mode = 1);

/// Random-phase profile with |c_n| proportional to exp(-n^2/width^2),
/// scaled to L2 norm `amplitude`. Modes above the 2/3 cutoff stay zero.
SurfaceState noise_profile(int n, double amplitude, double width, std::uint64_t seed);

/// SplitMix64 generator used for reproducible noise.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform double in [0, 1).
  double uniform();

 private:
  std::uint64_t state_;
};

}  // namespace filmflow

#endif  // FILMFLOW_SURFACE_HPP_
