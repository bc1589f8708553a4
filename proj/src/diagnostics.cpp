#include "filmflow/diagnostics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "filmflow/jet.hpp"

namespace filmflow {

double sobolev_norm(const SurfaceState& state, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  const auto& c = state.spectrum();
  double acc = std::norm(c.front());
  for (std::size_t n = 1; n < c.size(); ++n) {
    const double w = std::pow(1.0 + wavenumber(static_cast<int>(n)), 2.0 * s);
    // Nyquist (last entry) has no separate conjugate partner.
    acc += (n + 1 == c.size() ? 1.0 : 2.0) * w * std::norm(c[n]);
  }
  return std::sqrt(acc);
}

DecayFit decay_fit(const Trajectory& traj, double s, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw std::invalid_argument("decay_fit: window fraction must lie in (0, 1]");
  }
  if (traj.snapshots.empty()) throw std::invalid_argument("decay_fit: empty trajectory");
  DecayFit fit;
  fit.s = s;
  if (traj.metadata.regime == Regime::KdVKS) {
    fit.warnings.push_back("KdV-KS trajectories have a linearly unstable band; a decay fit "
                           "may not be meaningful");
  }
  const double t0 = traj.snapshots.front().tau();
  const double t1 = traj.snapshots.back().tau();
  const double lo = t1 - window_fraction * (t1 - t0);
  const double n0 = std::pow(sobolev_norm(traj.snapshots.front(), s), 2);

  std::vector<double> ts, ls;
  bool truncated = false;
  for (const auto& snap : traj.snapshots) {
    if (snap.tau() < lo - 1e-12 * std::max(1.0, std::abs(lo))) continue;
    const double v = std::pow(sobolev_norm(snap, s), 2);
    if (!(v >= 1e-300)) {
      truncated = true;
      break;
    }
    ts.push_back(snap.tau());
    ls.push_back(std::log(v));
  }
  if (truncated) fit.warnings.push_back("fit window truncated where the norm underflows");
  if (ts.size() < 10) {
    throw std::invalid_argument("decay_fit: need at least 10 usable snapshots in the window, got " +
                                std::to_string(ts.size()));
  }
  const double k = static_cast<double>(ts.size());
  double mt = 0, ml = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += ls[i];
  }
  mt /= k;
  ml /= k;
  double stl = 0, stt = 0, sll = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stl += (ts[i] - mt) * (ls[i] - ml);
    stt += (ts[i] - mt) * (ts[i] - mt);
    sll += (ls[i] - ml) * (ls[i] - ml);
  }
  const double slope = stl / stt;
  fit.c = -slope;
  const double intercept = ml - slope * mt;
  fit.C = n0 > 0.0 ? std::exp(intercept) / n0 : 0.0;
  fit.rsq = sll > 0.0 ? (stl * stl) / (stt * sll) : 1.0;
  fit.tau_lo = ts.front();
  fit.tau_hi = ts.back();
  fit.samples = static_cast<int>(ts.size());
  return fit;
}

SurfaceState cole_hopf(const SurfaceState& init, double nu, double tau, int oversample) {
  if (!(nu > 0.0)) throw std::invalid_argument("cole_hopf: nu must be positive");
  if (!(tau >= 0.0)) throw std::invalid_argument("cole_hopf: tau must be >= 0");
  if (oversample < 1) throw std::invalid_argument("cole_hopf: oversample must be >= 1");
  const int n = init.resolution();
  const int fine = std::max(64, oversample * n);
  const auto& fft = fourier(fine);

  // Phi = antiderivative of 4 zeta (periodic because zeta has zero mean).
  Spectrum phi_hat = resample_spectrum(init.spectrum(), fine);
  phi_hat.front() = 0.0;
  for (std::size_t m = 1; m < phi_hat.size(); ++m) {
    phi_hat[m] = 4.0 * phi_hat[m] / Complex(0.0, wavenumber(static_cast<int>(m)));
  }
  phi_hat.back() = 0.0;
  std::vector<double> phi = fft.inverse(phi_hat);
  const auto [lo_it, hi_it] = std::minmax_element(phi.begin(), phi.end());
  const double phi_min = *lo_it;
  if ((*hi_it - phi_min) / (2.0 * nu) > 700.0) {
    throw UnderflowError("cole_hopf: exp(-Phi/(2 nu)) underflows; reduce the amplitude "
                         "or increase nu");
  }
  std::vector<double> theta(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    theta[j] = std::exp(-(phi[j] - phi_min) / (2.0 * nu));
  }

  Spectrum th = fft.forward(theta);
  for (std::size_t m = 0; m < th.size(); ++m) {
    const double k = wavenumber(static_cast<int>(m));
    th[m] *= std::exp(-nu * k * k * tau);
  }
  theta = fft.inverse(th);
  const std::vector<double> theta_x = fft.inverse(derivative(th, 1));
  std::vector<double> zeta(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (!(theta[j] > 1e-300)) {
      throw UnderflowError("cole_hopf: heat solution lost positivity; rescale the data");
    }
    zeta[j] = -0.5 * nu * theta_x[j] / theta[j];
  }
  Spectrum out = resample_spectrum(fft.forward(zeta), n);
  out.front() = 0.0;
  out.back() = 0.0;
  return SurfaceState(std::move(out), n, tau);
}

namespace {

struct FdModel {
  double advect = 0, steep = 0, cubic = 0;
  double nu = 0, third = 0, fourth = 0;
};

FdModel fd_model(const ModelCoefficients& c, Regime regime) {
  FdModel m;
  m.advect = c.advect;
  m.nu = c.nu;
  switch (regime) {
    case Regime::I: break;
    case Regime::II: m.fourth = c.hyper; break;
    case Regime::III:
      m.steep = c.delta_weight * c.c2;
      m.cubic = c.delta_weight * c.cubic;
      m.third = c.delta_weight * c.c1;
      break;
    case Regime::IV:
      m.steep = c.delta_weight * c.c2;
      m.cubic = c.delta_weight * c.cubic;
      m.third = c.delta_weight * c.c1;
      m.fourth = c.delta_weight * c.hyper;
      break;
    case Regime::KdVBurgers: m.third = c.c1; break;
    case Regime::KdVKS:
      m.third = c.c1;
      m.fourth = c.hyper;
      break;
  }
  return m;
}

// Periodic copy of z with two ghost cells on each side.
void pad(const std::vector<double>& z, std::vector<double>& padded) {
  const std::size_t n = z.size();
  padded.resize(n + 4);
  std::copy(z.begin(), z.end(), padded.begin() + 2);
  padded[0] = z[n - 2];
  padded[1] = z[n - 1];
  padded[n + 2] = z[0];
  padded[n + 3] = z[1];
}

void fd_rhs(const FdModel& m, const std::vector<double>& z, double h,
            std::vector<double>& padded, std::vector<double>& out) {
  pad(z, padded);
  const std::size_t n = z.size();
  const double i1 = 1.0 / (2.0 * h), i2 = 1.0 / (h * h), i3 = 1.0 / (2.0 * h * h * h),
               i4 = 1.0 / (h * h * h * h);
  const double* q = padded.data() + 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double zm2 = q[i - 2], zm1 = q[i - 1], z0 = q[i], zp1 = q[i + 1], zp2 = q[i + 2];
    const double d1 = (zp1 - zm1) * i1;
    const double d2 = (zp1 - 2.0 * z0 + zm1) * i2;
    const double d3 = (zp2 - 2.0 * zp1 + 2.0 * zm1 - zm2) * i3;
    const double d4 = (zp2 - 4.0 * zp1 + 6.0 * z0 - 4.0 * zm1 + zm2) * i4;
    out[i] = -m.advect * z0 * d1 - m.steep * (z0 * d2 + d1 * d1) - m.cubic * z0 * z0 * d1 +
             m.nu * d2 - m.third * d3 - m.fourth * d4;
  }
}

SurfaceState fd_snapshot(const std::vector<double>& z, double tau) {
  const int n = static_cast<int>(z.size());
  Spectrum c = fourier(n).forward(z);
  c.front() = 0.0;
  c.back() = 0.0;
  return SurfaceState(std::move(c), n, tau);
}

}  // namespace

Trajectory fd_reference(const SurfaceState& init, const PhysicalParams& params, Regime regime,
                        int nfd, double dt, double T, int stride) {
  return fd_reference(init, model_coefficients(params, regime), params, regime, nfd, dt, T,
                      stride);
}

Trajectory fd_reference(const SurfaceState& init, const ModelCoefficients& coeffs,
                        const PhysicalParams& params, Regime regime, int nfd, double dt,
                        double T, int stride) {
  if (nfd < 4 * init.resolution()) {
    throw std::invalid_argument("fd_reference: grid must be at least 4x the spectral resolution");
  }
  if (!(dt > 0.0) || !(T >= 0.0)) throw std::invalid_argument("fd_reference: bad dt or T");
  const auto start = std::chrono::steady_clock::now();
  const FdModel model = fd_model(coeffs, regime);
  const double h = 1.0 / nfd;
  const long steps = T > 0.0 ? step_count(T, dt) : 0;
  const double step = steps > 0 ? T / static_cast<double>(steps) : dt;

  std::vector<double> z = fourier(nfd).inverse(resample_spectrum(init.spectrum(), nfd));
  const std::size_t n = z.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n), padded;

  Trajectory traj;
  traj.snapshots.push_back(fd_snapshot(z, init.tau()));
  for (long s = 1; s <= steps; ++s) {
    fd_rhs(model, z, h, padded, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * step * k1[i];
    fd_rhs(model, tmp, h, padded, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * step * k2[i];
    fd_rhs(model, tmp, h, padded, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + step * k3[i];
    fd_rhs(model, tmp, h, padded, k4);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const double tau = init.tau() + step * static_cast<double>(s);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(z[i])) throw BlowUpError(tau, static_cast<int>(i));
    }
    if (s == steps || (stride > 0 && s % stride == 0)) {
      traj.snapshots.push_back(fd_snapshot(z, tau));
    }
  }
  traj.metadata.params = params;
  traj.metadata.regime = regime;
  traj.metadata.resolution = nfd;
  traj.metadata.dt = step;
  traj.metadata.stride = stride;
  traj.metadata.steps = steps;
  traj.metadata.dealias = DealiasRule::None;
  traj.metadata.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

double relative_l2(const SurfaceState& a, const SurfaceState& b) {
  const int n = std::min(a.resolution(), b.resolution());
  const Spectrum ca = resample_spectrum(a.spectrum(), n);
  const Spectrum cb = resample_spectrum(b.spectrum(), n);
  double diff = 0, ref = 0;
  for (std::size_t m = 1; m < ca.size(); ++m) {
    diff += std::norm(ca[m] - cb[m]);
    ref += std::norm(cb[m]);
  }
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

double weighted_strip_norm_sq(const PolyField& f, int k) {
  if (f.coeffs.empty()) return 0.0;
  std::vector<double> nodes, weights;
  gauss_legendre_unit(f.degree() + 1, nodes, weights);
  const auto& fft = fourier(f.n);
  double acc = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    const std::vector<double> row = f.at(nodes[q]);
    const Spectrum c = fft.forward(row);
    double s = std::norm(c.front());
    for (std::size_t m = 1; m < c.size(); ++m) {
      const double w = std::pow(1.0 + wavenumber(static_cast<int>(m)), 2.0 * k);
      s += (m + 1 == c.size() ? 1.0 : 2.0) * w * std::norm(c[m]);
    }
    acc += weights[q] * s;
  }
  return acc;
}

namespace {

PolyField subtract(const PolyField& a, const PolyField& b) {
  PolyField out;
  out.n = a.n;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()),
                    std::vector<double>(static_cast<std::size_t>(a.n), 0.0));
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
    for (std::size_t i = 0; i < a.coeffs[k].size(); ++i) out.coeffs[k][i] += a.coeffs[k][i];
  }
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) {
    for (std::size_t i = 0; i < b.coeffs[k].size(); ++i) out.coeffs[k][i] -= b.coeffs[k][i];
  }
  return out;
}

std::vector<double> subtract(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

FieldGrid fields_for(const SurfaceState& s, const PhysicalParams& params, Regime regime,
                     int grid_m, ClosureVariant variant) {
  const JetRequirement req = closure_jet_requirement(regime);
  const SurfaceJet jet = eta_jet(s, params, regime, req.max_x, req.max_t);
  return reconstruct(jet, params, regime, grid_m, variant);
}

}  // namespace

DifferenceReport field_difference(const SurfaceState& a, const SurfaceState& b,
                                  const PhysicalParams& params, Regime regime_a,
                                  Regime regime_b, int m, int grid_m, ClosureVariant variant) {
  if (a.resolution() != b.resolution()) {
    throw std::invalid_argument("field_difference: resolutions differ");
  }
  if (m < 1) throw std::invalid_argument("field_difference: m must be >= 1");
  const FieldGrid fa = fields_for(a, params, regime_a, grid_m, variant);
  const FieldGrid fb = fields_for(b, params, regime_b, grid_m, variant);

  DifferenceReport r;
  r.tau = a.tau();
  r.m = m;
  r.H = subtract(a.samples(), b.samples());
  r.U = subtract(fa.u, fb.u);
  r.V = subtract(fa.v, fb.v);
  r.P = subtract(fa.p, fb.p);
  r.h_l2 = boundary_l2(r.H);
  r.u_w = weighted_strip_norm_sq(subtract(fa.u_poly, fb.u_poly), m);
  r.v_w = weighted_strip_norm_sq(subtract(fa.v_poly, fb.v_poly), m - 1);
  r.p_w = weighted_strip_norm_sq(subtract(fa.p_poly, fb.p_poly), m - 1);
  r.d_value = r.h_l2 * r.h_l2 + r.u_w + r.v_w + r.p_w;
  return r;
}

std::vector<DifferenceReport> cross_model_difference(const Trajectory& a, const Trajectory& b,
                                                     const PhysicalParams& params,
                                                     Regime regime_a, Regime regime_b, int m,
                                                     int grid_m, ClosureVariant variant) {
  if (a.snapshots.size() != b.snapshots.size()) {
    throw std::invalid_argument("cross_model_difference: snapshot counts differ");
  }
  std::vector<DifferenceReport> out;
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    const double ta = a.snapshots[i].tau(), tb = b.snapshots[i].tau();
    if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta))) {
      throw std::invalid_argument("cross_model_difference: snapshot times differ at index " +
                                  std::to_string(i));
    }
    out.push_back(field_difference(a.snapshots[i], b.snapshots[i], params, regime_a, regime_b,
                                   m, grid_m, variant));
  }
  return out;
}

}  // namespace filmflow
