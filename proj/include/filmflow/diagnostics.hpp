#ifndef FILMFLOW_DIAGNOSTICS_HPP_
#define FILMFLOW_DIAGNOSTICS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "filmflow/closures.hpp"
#include "filmflow/dynamics.hpp"
#include "filmflow/fields.hpp"
#include "filmflow/params.hpp"
#include "filmflow/surface.hpp"

namespace filmflow {

/// (sum_n (1 + 2 pi |n|)^{2s} |zeta_n|^2)^{1/2}. Throws for s < 0.
double sobolev_norm(const SurfaceState& state, double s);

/// Least-squares fit of log |zeta(tau)|_s^2 = log(C |zeta(tau_0)|_s^2) - c tau.
struct DecayFit {
  double s = 0.0;
  double C = 0.0;
  double c = 0.0;
  double rsq = 0.0;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  int samples = 0;
  std::vector<std::string> warnings;
};

/// Fit over the trailing `window_fraction` of the trajectory's time span.
/// Snapshots whose squared norm is below 1e-300 are dropped; fewer than 10
/// usable snapshots is an error.
DecayFit decay_fit(const Trajectory& traj, double s, double window_fraction = 0.5);

class UnderflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact solution of zeta_tau + 4 zeta zeta_x = nu zeta_xx by the Cole-Hopf
/// transform, evaluated on an oversampled grid and returned at the input
/// resolution. Throws UnderflowError when exp(-Phi/(2 nu)) cannot be
/// represented; rescale the amplitude or raise nu.
SurfaceState cole_hopf(const SurfaceState& init, double nu, double tau, int oversample = 4);

/// Second-order central differences on nfd points with classical RK4; no
/// dealiasing. Snapshots are converted back to spectra at resolution nfd.
Trajectory fd_reference(const SurfaceState& init, const PhysicalParams& params, Regime regime,
                        int nfd, double dt, double T, int stride = 0);

/// Same, with explicit coefficients.
Trajectory fd_reference(const SurfaceState& init, const ModelCoefficients& coeffs,
                        const PhysicalParams& params, Regime regime, int nfd, double dt,
                        double T, int stride = 0);

/// Relative L2 distance |a - b| / |b| after bringing both to the smaller
/// resolution.
double relative_l2(const SurfaceState& a, const SurfaceState& b);

/// Weighted difference between two approximate solutions at one time:
///   d = |H|_0^2 + |(1+|D|)^m U|^2 + |(1+|D|)^{m-1} V|^2 + |(1+|D|)^{m-1} P|^2
/// with strip norms exact in y and Parseval in x.
struct DifferenceReport {
  double tau = 0.0;
  int m = 2;
  std::vector<double> H;
  std::vector<double> U, V, P;  // (M+1) x N, y outer
  double h_l2 = 0.0;
  double u_w = 0.0;
  double v_w = 0.0;
  double p_w = 0.0;
  double d_value = 0.0;
};

/// Weighted strip norm squared: int_0^1 sum_n (1+2 pi |n|)^{2k} |f_n(y)|^2 dy.
double weighted_strip_norm_sq(const PolyField& f, int k);

DifferenceReport field_difference(const SurfaceState& a, const SurfaceState& b,
                                  const PhysicalParams& params, Regime regime_a,
                                  Regime regime_b, int m = 2, int grid_m = 32,
                                  ClosureVariant variant = ClosureVariant::Rederived);

/// One report per shared snapshot. Throws if the snapshot times differ.
std::vector<DifferenceReport> cross_model_difference(
    const Trajectory& a, const Trajectory& b, const PhysicalParams& params, Regime regime_a,
    Regime regime_b, int m = 2, int grid_m = 32,
    ClosureVariant variant = ClosureVariant::Rederived);

}  // namespace filmflow

#endif  // FILMFLOW_DIAGNOSTICS_HPP_
