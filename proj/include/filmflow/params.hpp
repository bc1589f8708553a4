#ifndef FILMFLOW_PARAMS_HPP_
#define FILMFLOW_PARAMS_HPP_

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace filmflow {

/// Model hierarchy for the surface evolution. I-IV carry field closures;
/// the two KdV-type models are surface-only.
enum class Regime { I, II, III, IV, KdVBurgers, KdVKS };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view text);

/// Regimes with explicit (u, v, p) closures.
bool has_field_closures(Regime regime);

/// Highest delta order kept in the field expansion: 1 for I/II, 2 for III/IV.
int closure_order(Regime regime);

/// Nondimensional parameter set. Plain value; invariants are enforced by
/// validate_params and model_coefficients, not by construction.
struct PhysicalParams {
  double R = 0.25;                              // Reynolds number
  double W = 1.0;                               // Weber number
  double alpha = std::numbers::pi / 4.0;        // inclination angle [rad]
  double delta = 0.1;                           // aspect ratio
  double epsilon = 0.1;                         // nonlinearity, == delta
  double W2 = 1.0;                              // regime Weber constant
  double Rtilde = 1.0;                          // Reynolds gap for KdV models

  double cot_alpha() const;
  /// W / sin(alpha), the capillary factor in the closures.
  double weber_factor() const;
};

/// A violated parameter constraint. constraint() names the clause.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string constraint, const std::string& message);
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// Parameter set that does not satisfy the regime's Weber scaling law.
class RegimeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// (5/4) / tan(alpha). Throws std::domain_error outside (0, pi/2).
double critical_reynolds(double alpha);

/// Coefficients of
///   zeta_tau + advect*zeta*zeta_x - nu*zeta_xx
///     + delta_weight*{c1 zeta_xxx + c2 (zeta zeta_xx + zeta_x^2)
///                     + cubic zeta^2 zeta_x + hyper zeta_xxxx} = 0
/// with the regime deciding which of the braced terms are present.
struct ModelCoefficients {
  double advect = 4.0;
  double nu = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double cubic = 0.0;
  double hyper = 0.0;
  double delta_weight = 1.0;

  /// Same linear part, all nonlinear coefficients zeroed.
  ModelCoefficients without_nonlinearity() const;
};

double dispersion_c1(double R, double alpha);
double steepening_c2(double R, double alpha);

/// Throws RegimeError when params violate the regime's Weber law.
void check_regime_consistency(const PhysicalParams& params, Regime regime);

ModelCoefficients model_coefficients(const PhysicalParams& params, Regime regime);

/// Unvalidated user inputs. W and epsilon may be omitted: W then follows
/// the regime law from W2, epsilon defaults to delta.
struct RawParams {
  double R = 0.25;
  double alpha = std::numbers::pi / 4.0;
  double delta = 0.1;
  std::optional<double> epsilon;
  std::optional<double> W;
  double W2 = 1.0;
  double Rtilde = 1.0;
  Regime regime = Regime::I;
};

struct ValidatedParams {
  PhysicalParams params;
  Regime regime = Regime::I;
  std::vector<std::string> warnings;
};

ValidatedParams validate_params(const RawParams& raw);

}  // namespace filmflow

#endif  // FILMFLOW_PARAMS_HPP_
