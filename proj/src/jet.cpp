#include "filmflow/jet.hpp"

#include <cmath>

#include "filmflow/dynamics.hpp"

namespace filmflow {

std::string to_string(JetIndex index) {
  return "(x=" + std::to_string(index.x) + ", t=" + std::to_string(index.t) + ")";
}

MissingJetEntry::MissingJetEntry(JetIndex index)
    : std::out_of_range("surface jet has no entry " + to_string(index)), index_(index) {}

SurfaceJet::SurfaceJet(int n, double t, int max_x, int max_t)
    : n_(n), t_(t), max_x_(max_x), max_t_(max_t) {}

bool SurfaceJet::contains(JetIndex index) const { return entries_.count(index) != 0; }

const Spectrum& SurfaceJet::spectrum(JetIndex index) const {
  auto it = entries_.find(index);
  if (it == entries_.end()) throw MissingJetEntry(index);
  return it->second.spectrum;
}

const std::vector<double>& SurfaceJet::samples(JetIndex index) const {
  auto it = entries_.find(index);
  if (it == entries_.end()) throw MissingJetEntry(index);
  return it->second.samples;
}

void SurfaceJet::set(JetIndex index, Spectrum spectrum) {
  std::vector<double> samples = fourier(n_).inverse(spectrum);
  entries_[index] = Entry{std::move(spectrum), std::move(samples)};
}

double slow_rate(const PhysicalParams& params, Regime regime) {
  if (regime == Regime::KdVBurgers || regime == Regime::KdVKS) {
    return params.delta * params.delta;
  }
  return params.delta;
}

namespace {

// Linear part of G: (-2 i kappa + rate * lambda) modewise.
Spectrum apply_linear(const Spectrum& v, const ModelCoefficients& coeffs, Regime regime,
                      double rate) {
  Spectrum out(v.size());
  for (std::size_t m = 0; m < v.size(); ++m) {
    const int n = static_cast<int>(m);
    const Complex transport(0.0, -2.0 * wavenumber(n));
    out[m] = (transport + rate * linear_symbol(coeffs, regime, n)) * v[m];
  }
  return out;
}

void add_scaled(Spectrum& acc, const Spectrum& term, double scale) {
  for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += scale * term[m];
}

// Nonlinear part N of F in conservative form, and its first and second
// directional derivatives:
//   N(z)      : first = -(a/2) z^2 - (c/3) z^3,  second = -(s/2) z^2
//   DN(z)[h]  : first = -a z h - c z^2 h,        second = -s z h
//   D2N(z)[h,k]: first = -a h k - 2c z h k,      second = -s h k
Spectrum nonlinear_part(const std::vector<double>& z, const NonlinearWeights& w, int cutoff) {
  std::vector<double> first(z.size()), second(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double z2 = z[j] * z[j];
    first[j] = -0.5 * w.advect * z2 - (w.cubic / 3.0) * z2 * z[j];
    second[j] = -0.5 * w.steepening * z2;
  }
  return flux_divergence(first, second, cutoff);
}

Spectrum nonlinear_first_variation(const std::vector<double>& z, const std::vector<double>& h,
                                   const NonlinearWeights& w, int cutoff) {
  std::vector<double> first(z.size()), second(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double zh = z[j] * h[j];
    first[j] = -w.advect * zh - w.cubic * z[j] * zh;
    second[j] = -w.steepening * zh;
  }
  return flux_divergence(first, second, cutoff);
}

Spectrum nonlinear_second_variation(const std::vector<double>& z, const std::vector<double>& h,
                                    const std::vector<double>& k, const NonlinearWeights& w,
                                    int cutoff) {
  std::vector<double> first(z.size()), second(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double hk = h[j] * k[j];
    first[j] = -w.advect * hk - 2.0 * w.cubic * z[j] * hk;
    second[j] = -w.steepening * hk;
  }
  return flux_divergence(first, second, cutoff);
}

}  // namespace

Spectrum fixed_frame_rhs(const Spectrum& eta, int n, const ModelCoefficients& coeffs,
                         Regime regime, double rate, DealiasRule rule) {
  const int cutoff = dealias_cutoff(n, rule);
  Spectrum out = apply_linear(eta, coeffs, regime, rate);
  add_scaled(out, nonlinear_part(fourier(n).inverse(eta), nonlinear_weights(coeffs, regime),
                                 cutoff),
             rate);
  out.front() = 0.0;
  out.back() = 0.0;
  return out;
}

SurfaceJet eta_jet(const SurfaceState& state, const PhysicalParams& params, Regime regime,
                   int max_x_order, int max_t_order, DealiasRule rule) {
  return eta_jet(state, model_coefficients(params, regime), params, regime, max_x_order,
                 max_t_order, rule);
}

SurfaceJet eta_jet(const SurfaceState& state, const ModelCoefficients& coeffs,
                   const PhysicalParams& params, Regime regime, int max_x_order,
                   int max_t_order, DealiasRule rule) {
  if (max_t_order < 0 || max_t_order > kMaxJetTimeOrder) {
    throw std::invalid_argument("eta_jet: t-order " + std::to_string(max_t_order) +
                                " unsupported (maximum " +
                                std::to_string(kMaxJetTimeOrder) + ")");
  }
  const int n = state.resolution();
  if (max_x_order < 0 || max_x_order > 16) {
    throw std::invalid_argument("eta_jet: x-order " + std::to_string(max_x_order) +
                                " outside [0, 16]");
  }
  const double rate = slow_rate(params, regime);
  const double t = state.tau() / rate;
  const int cutoff = dealias_cutoff(n, rule);
  const NonlinearWeights w = nonlinear_weights(coeffs, regime);
  const auto& fft = fourier(n);

  // Fixed-frame surface: shift by 2t.
  Spectrum eta = state.spectrum();
  for (std::size_t m = 0; m < eta.size(); ++m) {
    eta[m] *= std::polar(1.0, -wavenumber(static_cast<int>(m)) * 2.0 * t);
  }

  std::vector<Spectrum> dt_spectra{eta};
  if (max_t_order >= 1) {
    const std::vector<double> z = fft.inverse(eta);
    dt_spectra.push_back(fixed_frame_rhs(eta, n, coeffs, regime, rate, rule));
    std::vector<double> z_t;
    if (max_t_order >= 2) {
      z_t = fft.inverse(dt_spectra[1]);
      Spectrum ett = apply_linear(dt_spectra[1], coeffs, regime, rate);
      add_scaled(ett, nonlinear_first_variation(z, z_t, w, cutoff), rate);
      dt_spectra.push_back(std::move(ett));
    }
    if (max_t_order >= 3) {
      const std::vector<double> z_tt = fft.inverse(dt_spectra[2]);
      Spectrum ettt = apply_linear(dt_spectra[2], coeffs, regime, rate);
      add_scaled(ettt, nonlinear_first_variation(z, z_tt, w, cutoff), rate);
      add_scaled(ettt, nonlinear_second_variation(z, z_t, z_t, w, cutoff), rate);
      dt_spectra.push_back(std::move(ettt));
    }
  }

  SurfaceJet jet(n, t, max_x_order, max_t_order);
  for (int jt = 0; jt <= max_t_order; ++jt) {
    for (int jx = 0; jx <= max_x_order; ++jx) {
      Spectrum entry = derivative(dt_spectra[static_cast<std::size_t>(jt)], jx);
      entry.front() = 0.0;
      entry.back() = 0.0;
      jet.set({jx, jt}, std::move(entry));
    }
  }
  return jet;
}

}  // namespace filmflow
