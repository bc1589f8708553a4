#include "filmflow/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace filmflow {

namespace {

constexpr double kLawTolerance = 1e-12;

bool same_value(double a, double b) {
  return std::abs(a - b) <= kLawTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

bool at_most(double a, double b) {
  return a <= b * (1.0 + kLawTolerance);
}

std::string describe(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::IV: return "IV";
    case Regime::KdVBurgers: return "KdVBurgers";
    case Regime::KdVKS: return "KdVKS";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  for (Regime r : {Regime::I, Regime::II, Regime::III, Regime::IV, Regime::KdVBurgers,
                   Regime::KdVKS}) {
    if (text == to_string(r)) return r;
  }
  if (text == "kdv-burgers" || text == "KdV-Burgers") return Regime::KdVBurgers;
  if (text == "kdv-ks" || text == "KdV-KS") return Regime::KdVKS;
  throw ParameterError("regime", "unknown regime '" + std::string(text) +
                                     "' (expected I, II, III, IV, KdVBurgers, KdVKS)");
}

bool has_field_closures(Regime regime) {
  return regime == Regime::I || regime == Regime::II || regime == Regime::III ||
         regime == Regime::IV;
}

int closure_order(Regime regime) {
  switch (regime) {
    case Regime::I:
    case Regime::II: return 1;
    case Regime::III:
    case Regime::IV: return 2;
    default:
      throw RegimeError("regime", "no field closures for regime " +
                                      std::string(to_string(regime)));
  }
}

double PhysicalParams::cot_alpha() const { return 1.0 / std::tan(alpha); }

double PhysicalParams::weber_factor() const { return W / std::sin(alpha); }

ParameterError::ParameterError(std::string constraint, const std::string& message)
    : std::invalid_argument(message), constraint_(std::move(constraint)) {}

double critical_reynolds(double alpha) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi / 2.0)) {
    throw std::domain_error("critical_reynolds: alpha must lie in (0, pi/2), got " +
                            describe(alpha));
  }
  return 1.25 / std::tan(alpha);
}

ModelCoefficients ModelCoefficients::without_nonlinearity() const {
  ModelCoefficients linear = *this;
  linear.advect = 0.0;
  linear.c2 = 0.0;
  linear.cubic = 0.0;
  return linear;
}

double dispersion_c1(double R, double alpha) {
  return 2.0 + (32.0 / 63.0) * R * R - (40.0 / 63.0) * R / std::tan(alpha);
}

double steepening_c2(double R, double alpha) {
  return (16.0 / 5.0) * R - 2.0 / std::tan(alpha);
}

void check_regime_consistency(const PhysicalParams& p, Regime regime) {
  const double d = p.delta;
  switch (regime) {
    case Regime::I:
      if (!at_most(p.W * d, p.W2)) {
        throw RegimeError("W <= W2/delta", "regime I requires W <= W2/delta; W=" +
                                               describe(p.W) + ", W2/delta=" +
                                               describe(p.W2 / d));
      }
      return;
    case Regime::II:
      if (!same_value(p.W * d * d, p.W2)) {
        throw RegimeError("W = W2/delta^2", "regime II requires W = W2/delta^2; W=" +
                                                describe(p.W) + ", W2/delta^2=" +
                                                describe(p.W2 / (d * d)));
      }
      return;
    case Regime::III:
    case Regime::KdVBurgers:
      if (!at_most(p.W, p.W2)) {
        throw RegimeError("W <= W2", "regime " + std::string(to_string(regime)) +
                                         " requires W <= W2; W=" + describe(p.W) +
                                         ", W2=" + describe(p.W2));
      }
      return;
    case Regime::IV:
    case Regime::KdVKS:
      if (!same_value(p.W * d, p.W2)) {
        throw RegimeError("W = W2/delta", "regime " + std::string(to_string(regime)) +
                                              " requires W = W2/delta; W=" + describe(p.W) +
                                              ", W2/delta=" + describe(p.W2 / d));
      }
      return;
  }
}

ModelCoefficients model_coefficients(const PhysicalParams& p, Regime regime) {
  check_regime_consistency(p, regime);

  ModelCoefficients m;
  m.advect = 4.0;
  m.c1 = dispersion_c1(p.R, p.alpha);
  m.c2 = steepening_c2(p.R, p.alpha);
  const double hyper = (2.0 / 3.0) * p.W2 / std::sin(p.alpha);
  const double gap = critical_reynolds(p.alpha) - p.R;

  switch (regime) {
    case Regime::I:
      m.nu = (8.0 / 15.0) * gap;
      break;
    case Regime::II:
      m.nu = (8.0 / 15.0) * gap;
      m.hyper = hyper;
      break;
    case Regime::III:
      m.nu = (8.0 / 15.0) * gap;
      m.cubic = 2.0;
      m.delta_weight = p.delta;
      break;
    case Regime::IV:
      m.nu = (8.0 / 15.0) * gap;
      m.cubic = 2.0;
      m.hyper = hyper;
      m.delta_weight = p.delta;
      break;
    case Regime::KdVBurgers:
      m.nu = (8.0 / 15.0) * p.Rtilde;
      break;
    case Regime::KdVKS:
      m.nu = -(8.0 / 15.0) * p.Rtilde;
      m.hyper = hyper;
      break;
  }
  return m;
}

ValidatedParams validate_params(const RawParams& raw) {
  ValidatedParams out;
  out.regime = raw.regime;
  PhysicalParams& p = out.params;

  if (!(raw.delta > 0.0 && raw.delta <= 1.0)) {
    throw ParameterError("0 < delta <= 1", "delta must lie in (0, 1], got " +
                                               describe(raw.delta));
  }
  if (!(raw.R > 0.0) || !std::isfinite(raw.R)) {
    throw ParameterError("R > 0", "R must be positive, got " + describe(raw.R));
  }
  if (!(raw.alpha > 0.0 && raw.alpha < std::numbers::pi / 2.0)) {
    throw ParameterError("0 < alpha < pi/2", "alpha must lie in (0, pi/2) radians, got " +
                                                 describe(raw.alpha));
  }
  if (!(raw.W2 > 0.0) || !std::isfinite(raw.W2)) {
    throw ParameterError("W2 > 0", "W2 must be positive, got " + describe(raw.W2));
  }
  if (!std::isfinite(raw.Rtilde)) {
    throw ParameterError("Rtilde finite", "Rtilde must be finite");
  }
  const double eps = raw.epsilon.value_or(raw.delta);
  if (!same_value(eps, raw.delta)) {
    throw ParameterError("epsilon = delta", "epsilon must equal delta; epsilon=" +
                                                describe(eps) + ", delta=" +
                                                describe(raw.delta));
  }

  p.R = raw.R;
  p.alpha = raw.alpha;
  p.delta = raw.delta;
  p.epsilon = raw.delta;
  p.W2 = raw.W2;
  p.Rtilde = raw.Rtilde;

  if (raw.W) {
    p.W = *raw.W;
  } else {
    switch (raw.regime) {
      case Regime::II: p.W = raw.W2 / (raw.delta * raw.delta); break;
      case Regime::IV:
      case Regime::KdVKS: p.W = raw.W2 / raw.delta; break;
      default: p.W = raw.W2; break;
    }
  }
  if (!(p.W > 0.0) || !std::isfinite(p.W)) {
    throw ParameterError("W > 0", "W must be positive, got " + describe(p.W));
  }

  check_regime_consistency(p, raw.regime);

  const double rc = critical_reynolds(p.alpha);
  if (raw.regime != Regime::KdVKS && p.R >= rc) {
    out.warnings.push_back("R=" + describe(p.R) + " >= R_c=" + describe(rc) +
                           ": the flat film is long-wave unstable; decay estimates do not apply");
  }
  return out;
}

}  // namespace filmflow
