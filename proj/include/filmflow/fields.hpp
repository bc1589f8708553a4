#ifndef FILMFLOW_FIELDS_HPP_
#define FILMFLOW_FIELDS_HPP_

#include <memory>
#include <vector>

#include "filmflow/closures.hpp"
#include "filmflow/jet.hpp"
#include "filmflow/params.hpp"
#include "filmflow/symbolic.hpp"

namespace filmflow {

/// A field polynomial in y whose coefficients are x-samples:
/// f(x_i, y) = sum_k coeffs[k][i] y^k.
struct PolyField {
  int n = 0;
  std::vector<std::vector<double>> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// x-samples at height y (Horner).
  std::vector<double> at(double y) const;
  /// sqrt of int_0^1 mean_x f^2 dy, exact in y via Gauss-Legendre.
  double strip_l2() const;
  /// Same integral by the composite trapezoid rule on M uniform y-intervals.
  double strip_l2_trapezoid(int m) const;
};

/// Evaluate an expression on the jet's x-grid. Jet products are formed
/// pointwise from exact samples; each distinct monomial is computed once.
/// Throws MissingJetEntry if the jet lacks a factor.
PolyField evaluate(const SymExpr& expr, const SurfaceJet& jet, const PhysicalParams& params);

/// sqrt(mean_x f^2) for surface profiles.
double boundary_l2(const std::vector<double>& samples);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int count, std::vector<double>& nodes, std::vector<double>& weights);

/// Reconstructed (u, v, p) on x_i = i/N, y_j = j/M (row-major, y outer:
/// index j*N + i), together with their exact y-polynomial forms.
struct FieldGrid {
  int n = 0;
  int m = 0;
  std::vector<double> y;
  std::vector<double> u, v, p;
  PolyField u_poly, v_poly, p_poly;
  SymExpr u_expr, v_expr, p_expr;
  PhysicalParams params;
  Regime regime = Regime::III;
  ClosureVariant variant = ClosureVariant::Rederived;
  int order = 0;
  std::shared_ptr<const SurfaceJet> jet;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(i);
  }
};

/// Jet orders needed to evaluate the regime's closures and their residuals.
struct JetRequirement {
  int max_x = 0;
  int max_t = 0;
};
JetRequirement closure_jet_requirement(Regime regime);

FieldGrid reconstruct(const SurfaceJet& jet, const PhysicalParams& params, Regime regime,
                      int m = 32, ClosureVariant variant = ClosureVariant::Rederived);

/// Reconstruct from an explicit table, keeping orders 0..truncation only.
FieldGrid reconstruct(const SurfaceJet& jet, const PhysicalParams& params,
                      const ClosureTable& table, int m, int truncation);

/// u_x + v_y on the field grid: x-derivatives through the spectral jet,
/// y-derivatives exactly. The two parts are evaluated separately and summed.
std::vector<double> divergence(const FieldGrid& field);

/// Traces at the free surface y = 1.
struct SurfaceTraces {
  std::vector<double> u, v, p, u_y, v_x, v_y;
};

SurfaceTraces surface_traces(const FieldGrid& field, const SurfaceJet& jet,
                             const PhysicalParams& params);

}  // namespace filmflow

#endif  // FILMFLOW_FIELDS_HPP_
