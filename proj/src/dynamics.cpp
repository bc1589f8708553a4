#include "filmflow/dynamics.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace filmflow {

Complex linear_symbol(const ModelCoefficients& c, Regime regime, int n) {
  const double k = wavenumber(n);
  const double k2 = k * k;
  const double k3 = k2 * k;
  const double k4 = k2 * k2;
  const double w = c.delta_weight;
  switch (regime) {
    case Regime::I: return {-c.nu * k2, 0.0};
    case Regime::II: return {-c.nu * k2 - c.hyper * k4, 0.0};
    case Regime::III: return {-c.nu * k2, w * c.c1 * k3};
    case Regime::IV: return {-c.nu * k2 - w * c.hyper * k4, w * c.c1 * k3};
    // nu already carries the sign of the Reynolds gap for the KdV models.
    case Regime::KdVBurgers: return {-c.nu * k2, c.c1 * k3};
    case Regime::KdVKS: return {-c.nu * k2 - c.hyper * k4, c.c1 * k3};
  }
  return {0.0, 0.0};
}

NonlinearWeights nonlinear_weights(const ModelCoefficients& c, Regime regime) {
  NonlinearWeights w;
  w.advect = c.advect;
  if (regime == Regime::III || regime == Regime::IV) {
    w.steepening = c.delta_weight * c.c2;
    w.cubic = c.delta_weight * c.cubic;
  }
  return w;
}

Spectrum flux_divergence(std::span<const double> first, std::span<const double> second,
                         int cutoff) {
  const int n = static_cast<int>(first.size());
  const auto& fft = fourier(n);
  Spectrum a = fft.forward(first);
  Spectrum b = fft.forward(second);
  Spectrum out(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) {
    const Complex ik(0.0, wavenumber(static_cast<int>(m)));
    out[m] = ik * a[m] + ik * ik * b[m];
  }
  truncate_spectrum(out, cutoff);
  return out;
}

namespace {

Spectrum nonlinear_from_spectrum(const Spectrum& v, int n, const NonlinearWeights& w,
                                 int cutoff) {
  const auto& fft = fourier(n);
  const std::vector<double> z = fft.inverse(v);
  std::vector<double> first(z.size());
  std::vector<double> second(z.size());
  // advect*z*z_x = (advect/2)(z^2)_x, c2(z z_xx + z_x^2) = (c2/2)(z^2)_xx,
  // cubic*z^2 z_x = (cubic/3)(z^3)_x
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double z2 = z[j] * z[j];
    first[j] = -0.5 * w.advect * z2 - (w.cubic / 3.0) * z2 * z[j];
    second[j] = -0.5 * w.steepening * z2;
  }
  return flux_divergence(first, second, cutoff);
}

int first_nonfinite_mode(const Spectrum& v) {
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (!std::isfinite(v[m].real()) || !std::isfinite(v[m].imag())) {
      return static_cast<int>(m);
    }
  }
  return -1;
}

}  // namespace

Spectrum nonlinear_rhs(const SurfaceState& state, const ModelCoefficients& coeffs,
                       Regime regime, DealiasRule rule) {
  const int n = state.resolution();
  return nonlinear_from_spectrum(state.spectrum(), n, nonlinear_weights(coeffs, regime),
                                 dealias_cutoff(n, rule));
}

BlowUpError::BlowUpError(double tau, int mode)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg.precision(17);
        msg << "numerical blow-up at tau=" << tau << " (first non-finite mode n=" << mode
            << ")";
        return msg.str();
      }()),
      tau_(tau),
      mode_(mode) {}

Etdrk4Stepper::Etdrk4Stepper(const ModelCoefficients& coeffs, Regime regime, int n,
                             double dt, DealiasRule rule)
    : coeffs_(coeffs), regime_(regime), n_(n), dt_(dt), rule_(rule),
      cutoff_(dealias_cutoff(n, rule)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("ETDRK4: dt must be positive and finite");
  }
  const std::size_t modes = static_cast<std::size_t>(n / 2 + 1);
  e_.resize(modes);
  e_half_.resize(modes);
  q_.resize(modes);
  f1_.resize(modes);
  f2_.resize(modes);
  f3_.resize(modes);

  constexpr int kContourPoints = 32;
  for (std::size_t m = 0; m < modes; ++m) {
    const Complex z0 = linear_symbol(coeffs, regime, static_cast<int>(m)) * dt;
    e_[m] = std::exp(z0);
    e_half_[m] = std::exp(0.5 * z0);
    Complex q = 0.0, a = 0.0, b = 0.0, c = 0.0;
    for (int j = 0; j < kContourPoints; ++j) {
      const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kContourPoints;
      const Complex z = z0 + std::polar(1.0, theta);
      const Complex ez = std::exp(z);
      const Complex z3 = z * z * z;
      q += (std::exp(0.5 * z) - 1.0) / z;
      a += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
      b += (2.0 + z + ez * (z - 2.0)) / z3;
      c += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    }
    q_[m] = dt * q / static_cast<double>(kContourPoints);
    f1_[m] = dt * a / static_cast<double>(kContourPoints);
    f2_[m] = dt * b / static_cast<double>(kContourPoints);
    f3_[m] = dt * c / static_cast<double>(kContourPoints);
  }
}

Spectrum Etdrk4Stepper::tendency(const Spectrum& v) const {
  return nonlinear_from_spectrum(v, n_, nonlinear_weights(coeffs_, regime_), cutoff_);
}

SurfaceState Etdrk4Stepper::step(const SurfaceState& state) const {
  if (state.resolution() != n_) {
    throw std::invalid_argument("ETDRK4: state resolution " +
                                std::to_string(state.resolution()) +
                                " does not match stepper resolution " + std::to_string(n_));
  }
  const Spectrum& v = state.spectrum();
  const std::size_t modes = v.size();
  Spectrum a(modes), b(modes), c(modes), next(modes);

  const Spectrum nv = tendency(v);
  for (std::size_t m = 0; m < modes; ++m) a[m] = e_half_[m] * v[m] + q_[m] * nv[m];
  const Spectrum na = tendency(a);
  for (std::size_t m = 0; m < modes; ++m) b[m] = e_half_[m] * v[m] + q_[m] * na[m];
  const Spectrum nb = tendency(b);
  for (std::size_t m = 0; m < modes; ++m) {
    c[m] = e_half_[m] * a[m] + q_[m] * (2.0 * nb[m] - nv[m]);
  }
  const Spectrum nc = tendency(c);
  for (std::size_t m = 0; m < modes; ++m) {
    next[m] = e_[m] * v[m] + f1_[m] * nv[m] + 2.0 * f2_[m] * (na[m] + nb[m]) + f3_[m] * nc[m];
  }
  next.back() = 0.0;

  const double tau = state.tau() + dt_;
  if (const int bad = first_nonfinite_mode(next); bad >= 0) throw BlowUpError(tau, bad);
  return SurfaceState(std::move(next), n_, tau);
}

SurfaceState step(const SurfaceState& state, double dt, const ModelCoefficients& coeffs,
                  Regime regime, DealiasRule rule) {
  return Etdrk4Stepper(coeffs, regime, state.resolution(), dt, rule).step(state);
}

long step_count(double T, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw std::invalid_argument("T must be >= 0");
  const double ratio = T / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<long>(nearest);
  }
  return static_cast<long>(std::ceil(ratio));
}

Trajectory simulate(const SurfaceState& init, const PhysicalParams& params, Regime regime,
                    double T, double dt, int stride, DealiasRule rule) {
  return simulate(init, model_coefficients(params, regime), params, regime, T, dt, stride,
                  rule);
}

Trajectory simulate(const SurfaceState& init, const ModelCoefficients& coeffs,
                    const PhysicalParams& params, Regime regime, double T, double dt,
                    int stride, DealiasRule rule) {
  if (stride < 1) throw std::invalid_argument("snapshot stride must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const long steps = step_count(T, dt);

  Trajectory traj;
  traj.metadata.params = params;
  traj.metadata.regime = regime;
  traj.metadata.resolution = init.resolution();
  traj.metadata.stride = stride;
  traj.metadata.dealias = rule;
  traj.metadata.steps = steps;
  traj.metadata.dt = steps > 0 ? T / static_cast<double>(steps) : dt;

  SurfaceState current = init;
  current.set_tau(0.0);
  truncate_spectrum(current.spectrum(), dealias_cutoff(current.resolution(), rule));
  traj.snapshots.push_back(current);

  if (steps > 0) {
    const double h = traj.metadata.dt;
    const Etdrk4Stepper stepper(coeffs, regime, init.resolution(), h, rule);
    for (long s = 1; s <= steps; ++s) {
      current = stepper.step(current);
      current.set_tau(static_cast<double>(s) * h);
      if (s % stride == 0 || s == steps) traj.snapshots.push_back(current);
    }
  }
  traj.metadata.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

}  // namespace filmflow
