#ifndef FILMFLOW_JET_HPP_
#define FILMFLOW_JET_HPP_

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "filmflow/params.hpp"
#include "filmflow/spectral.hpp"
#include "filmflow/surface.hpp"

namespace filmflow {

/// Derivative multi-index: d^x/dx^x d^t/dt^t eta.
struct JetIndex {
  int x = 0;
  int t = 0;
  auto operator<=>(const JetIndex&) const = default;
};

std::string to_string(JetIndex index);

class MissingJetEntry : public std::out_of_range {
 public:
  explicit MissingJetEntry(JetIndex index);
  JetIndex index() const noexcept { return index_; }

 private:
  JetIndex index_;
};

/// Fixed-frame surface eta with x-derivatives and model-induced
/// t-derivatives, each held as a spectrum and as grid samples.
class SurfaceJet {
 public:
  SurfaceJet(int n, double t, int max_x, int max_t);

  int resolution() const { return n_; }
  /// Fixed-frame time of the jet.
  double time() const { return t_; }
  int max_x_order() const { return max_x_; }
  int max_t_order() const { return max_t_; }

  bool contains(JetIndex index) const;
  const Spectrum& spectrum(JetIndex index) const;
  const std::vector<double>& samples(JetIndex index) const;

  void set(JetIndex index, Spectrum spectrum);

 private:
  struct Entry {
    Spectrum spectrum;
    std::vector<double> samples;
  };
  int n_;
  double t_;
  int max_x_;
  int max_t_;
  std::map<JetIndex, Entry> entries_;
};

/// tau / t: delta for I-IV, delta^2 for the KdV-type models.
double slow_rate(const PhysicalParams& params, Regime regime);

/// Highest t-order the jet supports. The closures need eta_tt; exact time
/// derivatives of the order-2 closures (u_t, v_t in the residuals) need eta_ttt.
inline constexpr int kMaxJetTimeOrder = 3;

/// Build the jet of eta(x, t) = zeta(x - 2t, slow_rate * t) at t = tau/slow_rate.
/// eta_t = -2 eta_x + rate * F(eta), F the moving-frame right-hand side;
/// higher t-derivatives are exact directional derivatives of that map.
SurfaceJet eta_jet(const SurfaceState& state, const PhysicalParams& params, Regime regime,
                   int max_x_order, int max_t_order,
                   DealiasRule rule = DealiasRule::TwoThirds);

/// Same, with explicit model coefficients.
SurfaceJet eta_jet(const SurfaceState& state, const ModelCoefficients& coeffs,
                   const PhysicalParams& params, Regime regime, int max_x_order,
                   int max_t_order, DealiasRule rule = DealiasRule::TwoThirds);

/// Fixed-frame right-hand side G(eta) = -2 eta_x + rate * F(eta).
Spectrum fixed_frame_rhs(const Spectrum& eta, int n, const ModelCoefficients& coeffs,
                         Regime regime, double rate, DealiasRule rule = DealiasRule::TwoThirds);

}  // namespace filmflow

#endif  // FILMFLOW_JET_HPP_
