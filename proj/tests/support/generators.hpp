#ifndef FILMFLOW_TESTS_GENERATORS_HPP_
#define FILMFLOW_TESTS_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "filmflow/params.hpp"
#include "filmflow/surface.hpp"

namespace filmflow::testing {

/// Deterministic draws for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_.uniform() * (hi - lo + 1));
  }
  std::uint64_t seed() { return rng_.next(); }

  /// Mean-zero smooth profile with modes up to max_mode and L2 norm `amp`.
  SurfaceState smooth_state(int n, double amp, int max_mode) {
    SurfaceState s(n);
    double norm2 = 0.0;
    for (int k = 1; k <= max_mode; ++k) {
      const double mag = std::exp(-0.5 * k) * uniform(0.2, 1.0);
      const double phase = uniform(0.0, 2.0 * std::numbers::pi);
      s.set_coeff(k, std::polar(mag, phase));
      norm2 += 2.0 * mag * mag;
    }
    for (auto& c : s.spectrum()) c *= amp / std::sqrt(norm2);
    return s;
  }

  /// Parameters below critical with alpha in (0.2, 1.3).
  PhysicalParams subcritical_params(double delta) {
    PhysicalParams p;
    p.alpha = uniform(0.2, 1.3);
    p.R = uniform(0.05, 0.9) * critical_reynolds(p.alpha);
    p.delta = delta;
    p.epsilon = delta;
    p.W2 = uniform(0.5, 2.0);
    p.W = p.W2;
    return p;
  }

 private:
  SplitMix64 rng_;
};

/// Parameters consistent with the regime's Weber law for W2 = p.W2.
inline PhysicalParams with_regime_weber(PhysicalParams p, Regime regime) {
  switch (regime) {
    case Regime::II: p.W = p.W2 / (p.delta * p.delta); break;
    case Regime::IV:
    case Regime::KdVKS: p.W = p.W2 / p.delta; break;
    default: p.W = p.W2; break;
  }
  return p;
}

inline const std::vector<Regime>& all_regimes() {
  static const std::vector<Regime> r{Regime::I,   Regime::II,         Regime::III,
                                     Regime::IV,  Regime::KdVBurgers, Regime::KdVKS};
  return r;
}

inline const std::vector<Regime>& closure_regimes() {
  static const std::vector<Regime> r{Regime::I, Regime::II, Regime::III, Regime::IV};
  return r;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace filmflow::testing

#endif  // FILMFLOW_TESTS_GENERATORS_HPP_
