#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "filmflow/dynamics.hpp"
#include "filmflow/jet.hpp"
#include "support/generators.hpp"

namespace filmflow {
namespace {

constexpr double kPi = std::numbers::pi;

PhysicalParams params_for(Regime regime, double delta = 0.1) {
  PhysicalParams p;
  p.delta = delta;
  p.epsilon = delta;
  return testing::with_regime_weber(p, regime);
}

Spectrum axpy(const Spectrum& a, double s, const Spectrum& b) {
  Spectrum out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * b[i];
  return out;
}

double rel_diff(const Spectrum& a, const Spectrum& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num / den);
}

TEST(Jet, ZeroStateGivesZeroEntries) {
  for (Regime r : testing::all_regimes()) {
    const SurfaceJet jet = eta_jet(SurfaceState(32), params_for(r), r, 4, 3);
    for (int x = 0; x <= 4; ++x) {
      for (int t = 0; t <= 3; ++t) {
        if (!jet.contains({x, t})) continue;
        for (double v : jet.samples({x, t})) EXPECT_EQ(v, 0.0);
      }
    }
  }
}

TEST(Jet, XDerivativesAreSpectralMultiples) {
  testing::Gen gen(17);
  const SurfaceState s = gen.smooth_state(32, 0.1, 8);
  const SurfaceJet jet = eta_jet(s, params_for(Regime::III), Regime::III, 5, 2);
  for (int t = 0; t <= 2; ++t) {
    for (int x = 1; x <= 5 - t; ++x) {
      if (!jet.contains({x, t})) continue;
      const Spectrum& lo = jet.spectrum({x - 1, t});
      const Spectrum& hi = jet.spectrum({x, t});
      for (std::size_t n = 0; n < lo.size(); ++n) {
        const Complex want = Complex(0.0, 2.0 * kPi * static_cast<double>(n)) * lo[n];
        EXPECT_NEAR(std::abs(hi[n] - want), 0.0, 1e-12 * (1.0 + std::abs(want)));
      }
    }
  }
}

TEST(Jet, LinearSingleModeFixedFrameRate) {
  // With the nonlinearity off, eta_t = (-2 i kappa + rate * lambda) eta.
  for (Regime r : testing::all_regimes()) {
    const PhysicalParams p = params_for(r);
    const ModelCoefficients c = model_coefficients(p, r).without_nonlinearity();
    const SurfaceState s = cosine_profile(32, 0.1, 2);
    const SurfaceJet jet = eta_jet(s, c, p, r, 0, 2);
    const double rate = slow_rate(p, r);
    const Complex g = Complex(0.0, -2.0 * 2.0 * kPi * 2.0) + rate * linear_symbol(c, r, 2);
    const Complex e = jet.spectrum({0, 0})[2];
    EXPECT_NEAR(std::abs(jet.spectrum({0, 1})[2] - g * e), 0.0, 1e-12 * std::abs(g * e));
    EXPECT_NEAR(std::abs(jet.spectrum({0, 2})[2] - g * g * e), 0.0, 1e-12 * std::abs(g * g * e));
  }
}

TEST(Jet, MovingFramePhaseShift) {
  const PhysicalParams p = params_for(Regime::I);
  SurfaceState s = cosine_profile(32, 0.1, 3);
  s.set_tau(0.37);
  const SurfaceJet jet = eta_jet(s, p, Regime::I, 0, 0);
  const double t = 0.37 / p.delta;
  EXPECT_NEAR(jet.time(), t, 1e-15);
  const Complex want = s.coeff(3) * std::polar(1.0, -2.0 * kPi * 3.0 * 2.0 * t);
  EXPECT_NEAR(std::abs(jet.spectrum({0, 0})[3] - want), 0.0, 1e-13);
}

TEST(Jet, SlowRates) {
  EXPECT_EQ(slow_rate(params_for(Regime::III, 0.2), Regime::III), 0.2);
  EXPECT_NEAR(slow_rate(params_for(Regime::KdVKS, 0.2), Regime::KdVKS), 0.04, 1e-17);
}

TEST(JetOracle, SecondTimeDerivativeMatchesFiniteDifference) {
  testing::Gen gen(23);
  for (Regime r : testing::all_regimes()) {
    const PhysicalParams p = params_for(r, 0.2);
    const ModelCoefficients c = model_coefficients(p, r);
    const SurfaceState s = gen.smooth_state(32, 0.2, 6);
    const SurfaceJet jet = eta_jet(s, c, p, r, 0, 3);
    const double rate = slow_rate(p, r);
    const Spectrum& e = jet.spectrum({0, 0});
    const Spectrum& et = jet.spectrum({0, 1});
    const double h = 1e-5;
    const Spectrum gp = fixed_frame_rhs(axpy(e, h, et), 32, c, r, rate);
    const Spectrum gm = fixed_frame_rhs(axpy(e, -h, et), 32, c, r, rate);
    Spectrum fd(gp.size());
    for (std::size_t i = 0; i < fd.size(); ++i) fd[i] = (gp[i] - gm[i]) / (2.0 * h);
    EXPECT_LE(rel_diff(jet.spectrum({0, 2}), fd), 1e-7) << to_string(r);
  }
}

TEST(JetOracle, ThirdTimeDerivativeMatchesFiniteDifference) {
  testing::Gen gen(29);
  for (Regime r : testing::all_regimes()) {
    const PhysicalParams p = params_for(r, 0.2);
    const ModelCoefficients c = model_coefficients(p, r);
    const SurfaceState s = gen.smooth_state(32, 0.2, 6);
    const SurfaceJet jet = eta_jet(s, c, p, r, 0, 3);
    const double rate = slow_rate(p, r);
    const Spectrum& e = jet.spectrum({0, 0});
    const Spectrum& et = jet.spectrum({0, 1});
    const Spectrum& ett = jet.spectrum({0, 2});
    // d^2/ds^2 G(eta + s eta_t + s^2/2 eta_tt) at s = 0 equals eta_ttt. G is a
    // polynomial along that curve, so two Richardson levels remove the step error.
    const Spectrum g0 = fixed_frame_rhs(e, 32, c, r, rate);
    auto second_difference = [&](double h) {
      const Spectrum gp = fixed_frame_rhs(axpy(axpy(e, h, et), 0.5 * h * h, ett), 32, c, r, rate);
      const Spectrum gm = fixed_frame_rhs(axpy(axpy(e, -h, et), 0.5 * h * h, ett), 32, c, r, rate);
      Spectrum d(g0.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = (gp[i] - 2.0 * g0[i] + gm[i]) / (h * h);
      return d;
    };
    const double h = 2e-3;
    const Spectrum d1 = second_difference(h);
    const Spectrum d2 = second_difference(h / 2.0);
    const Spectrum d4 = second_difference(h / 4.0);
    Spectrum fd(g0.size());
    for (std::size_t i = 0; i < fd.size(); ++i) {
      const Complex r1 = (4.0 * d2[i] - d1[i]) / 3.0;
      const Complex r2 = (4.0 * d4[i] - d2[i]) / 3.0;
      fd[i] = (16.0 * r2 - r1) / 15.0;
    }
    EXPECT_LE(rel_diff(jet.spectrum({0, 3}), fd), 1e-7) << to_string(r);
  }
}

TEST(Jet, FirstTimeDerivativeIsFixedFrameRhs) {
  testing::Gen gen(31);
  const PhysicalParams p = params_for(Regime::IV);
  const ModelCoefficients c = model_coefficients(p, Regime::IV);
  const SurfaceJet jet = eta_jet(gen.smooth_state(32, 0.2, 6), c, p, Regime::IV, 0, 1);
  const Spectrum g = fixed_frame_rhs(jet.spectrum({0, 0}), 32, c, Regime::IV, p.delta);
  EXPECT_LE(rel_diff(jet.spectrum({0, 1}), g), 1e-15);
}

TEST(Jet, RequestLimitsAndMissingEntries) {
  const PhysicalParams p = params_for(Regime::I);
  const SurfaceState s = cosine_profile(32, 0.1);
  EXPECT_THROW(eta_jet(s, p, Regime::I, 2, 4), std::invalid_argument);
  EXPECT_THROW(eta_jet(s, p, Regime::I, 17, 0), std::invalid_argument);
  const SurfaceJet jet = eta_jet(s, p, Regime::I, 2, 1);
  EXPECT_FALSE(jet.contains({0, 2}));
  try {
    (void)jet.samples({0, 2});
    FAIL() << "expected MissingJetEntry";
  } catch (const MissingJetEntry& e) {
    EXPECT_EQ(e.index(), (JetIndex{0, 2}));
    EXPECT_NE(std::string(e.what()).find(to_string(JetIndex{0, 2})), std::string::npos);
  }
}

}  // namespace
}  // namespace filmflow
