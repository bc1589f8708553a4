#ifndef FILMFLOW_DYNAMICS_HPP_
#define FILMFLOW_DYNAMICS_HPP_

#include <span>
#include <stdexcept>
#include <vector>

#include "filmflow/params.hpp"
#include "filmflow/spectral.hpp"
#include "filmflow/surface.hpp"

namespace filmflow {

/// Growth rate lambda(kappa), kappa = 2 pi n, of the linearised model.
Complex linear_symbol(const ModelCoefficients& coeffs, Regime regime, int n);

/// Weights of the nonlinear terms as they enter the regime's equation
/// (the delta block is folded in for III/IV and absent otherwise).
struct NonlinearWeights {
  double advect = 0.0;      // zeta zeta_x
  double steepening = 0.0;  // zeta zeta_xx + zeta_x^2
  double cubic = 0.0;       // zeta^2 zeta_x
};

NonlinearWeights nonlinear_weights(const ModelCoefficients& coeffs, Regime regime);

/// Spectrum of d/dx(first) + d^2/dx^2(second) from physical-space fluxes,
/// truncated at `cutoff`. The mean of the result is exactly zero.
Spectrum flux_divergence(std::span<const double> first, std::span<const double> second,
                         int cutoff);

/// Fourier coefficients of the nonlinear tendency
///   -advect zeta zeta_x - w {c2 (zeta zeta_xx + zeta_x^2) + cubic zeta^2 zeta_x}
/// evaluated in conservative form on the collocation grid and dealiased.
Spectrum nonlinear_rhs(const SurfaceState& state, const ModelCoefficients& coeffs,
                       Regime regime, DealiasRule rule = DealiasRule::TwoThirds);

/// Non-finite state after a step.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double tau, int mode);
  double tau() const noexcept { return tau_; }
  int mode() const noexcept { return mode_; }

 private:
  double tau_;
  int mode_;
};

/// Fourth-order exponential time differencing (Kassam-Trefethen form) for a
/// fixed model, resolution and step. The phi-function weights are computed
/// once as contour means over 32 points on the unit circle around lambda*dt.
class Etdrk4Stepper {
 public:
  Etdrk4Stepper(const ModelCoefficients& coeffs, Regime regime, int n, double dt,
                DealiasRule rule = DealiasRule::TwoThirds);

  SurfaceState step(const SurfaceState& state) const;
  double dt() const { return dt_; }
  int resolution() const { return n_; }

 private:
  Spectrum tendency(const Spectrum& v) const;

  ModelCoefficients coeffs_;
  Regime regime_;
  int n_;
  double dt_;
  DealiasRule rule_;
  int cutoff_;
  Spectrum e_, e_half_, q_, f1_, f2_, f3_;
};

/// One ETDRK4 step. Prefer Etdrk4Stepper when stepping repeatedly.
SurfaceState step(const SurfaceState& state, double dt, const ModelCoefficients& coeffs,
                  Regime regime, DealiasRule rule = DealiasRule::TwoThirds);

struct TrajectoryMetadata {
  PhysicalParams params;
  Regime regime = Regime::I;
  int resolution = 0;
  double dt = 0.0;
  int stride = 1;
  long steps = 0;
  DealiasRule dealias = DealiasRule::TwoThirds;
  double wall_seconds = 0.0;
};

struct Trajectory {
  std::vector<SurfaceState> snapshots;  // strictly increasing tau
  TrajectoryMetadata metadata;
};

/// Fixed-step integration to T. If T/dt is not an integer the step is
/// shortened uniformly to T/ceil(T/dt); the step used is in metadata.dt.
/// Snapshots every `stride` steps plus the final state.
Trajectory simulate(const SurfaceState& init, const PhysicalParams& params, Regime regime,
                    double T, double dt, int stride = 1,
                    DealiasRule rule = DealiasRule::TwoThirds);

/// Same, with explicit coefficients (used to switch off nonlinear terms).
Trajectory simulate(const SurfaceState& init, const ModelCoefficients& coeffs,
                    const PhysicalParams& params, Regime regime, double T, double dt,
                    int stride = 1, DealiasRule rule = DealiasRule::TwoThirds);

/// Number of uniform steps used to reach T with nominal step dt.
long step_count(double T, double dt);

}  // namespace filmflow

#endif  // FILMFLOW_DYNAMICS_HPP_
