#ifndef FILMFLOW_SPECTRAL_HPP_
#define FILMFLOW_SPECTRAL_HPP_

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace filmflow {

using Complex = std::complex<double>;

/// Half spectrum of a real periodic field on the unit torus: entry n holds
/// the coefficient of exp(2 pi i n x) for n = 0..N/2. Negative modes are
/// the conjugates.
using Spectrum = std::vector<Complex>;

inline double wavenumber(int n) { return 2.0 * std::numbers::pi * n; }

/// Real <-> half-complex transform for a fixed grid size. Forward output is
/// normalised so that f(x_j) = sum_n f_n exp(2 pi i n x_j), x_j = j/N.
/// Safe to use concurrently from several threads.
class FourierTransform {
 public:
  explicit FourierTransform(int n);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  int size() const { return n_; }
  Spectrum forward(std::span<const double> samples) const;
  std::vector<double> inverse(std::span<const Complex> spectrum) const;

 private:
  int n_;
  void* forward_plan_;
  void* inverse_plan_;
};

/// Shared transform for grid size n (created on first use).
const FourierTransform& fourier(int n);

/// Spectral x-derivative of the given order.
Spectrum derivative(std::span<const Complex> spectrum, int order);

/// Multiply modewise by (2 pi i n)^order in place.
void differentiate_in_place(Spectrum& spectrum, int order);

enum class DealiasRule { TwoThirds, Half, None };

/// Largest retained |n| for grid size n.
int dealias_cutoff(int n, DealiasRule rule);

/// Zero modes above the cutoff; also clears the mean and the Nyquist mode
/// and makes the zero mode real.
void truncate_spectrum(Spectrum& spectrum, int cutoff);

/// Zero-pad or truncate a half spectrum to grid size n.
Spectrum resample_spectrum(std::span<const Complex> spectrum, int n);

/// Uniform torus grid points j/n.
std::vector<double> torus_grid(int n);

}  // namespace filmflow

#endif  // FILMFLOW_SPECTRAL_HPP_
