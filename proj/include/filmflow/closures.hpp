#ifndef FILMFLOW_CLOSURES_HPP_
#define FILMFLOW_CLOSURES_HPP_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "filmflow/params.hpp"
#include "filmflow/symbolic.hpp"

namespace filmflow {

enum class FieldComponent { U, V, P };

std::string_view to_string(FieldComponent component);

/// One closure monomial: params * poly(y) * monomial(jet) in the order-k
/// part of one field.
struct ClosureTerm {
  FieldComponent component = FieldComponent::U;
  int order = 0;
  ParamPowers params;
  JetMonomial monomial;
  YPoly poly;
};

/// Which form of the order-2 pressure to use. Literature keeps the standard
/// eta*eta_x coefficient, which does not satisfy the order-2 normal momentum
/// balance for R != 1; Rederived replaces it by the solution of that ODE,
/// -(1 + y). Both agree at y = 1.
enum class ClosureVariant { Literature, Rederived };

std::string_view to_string(ClosureVariant variant);

/// Long-wave closures for (u, v, p) in powers of delta, stored exactly.
/// The order-k parts exclude the delta^k weight; assembled() includes it.
class ClosureTable {
 public:
  ClosureTable(Regime regime, ClosureVariant variant, int truncation_order,
               std::array<std::array<SymExpr, 3>, 3> parts);

  Regime regime() const { return regime_; }
  ClosureVariant variant() const { return variant_; }
  int truncation_order() const { return truncation_order_; }

  const SymExpr& part(FieldComponent component, int order) const;
  /// sum_k delta^k part(component, k) for k <= truncation order.
  SymExpr assembled(FieldComponent component) const;
  std::vector<ClosureTerm> terms() const;

  /// One line per term:
  ///   <u|v|p> <order> <R> <cot> <weber> <delta> | <monomial> | <y coefficients...>
  /// with the monomial as "x,t;x,t" (or "1") and coefficients from y^0 up.
  std::string canonical_text() const;

 private:
  Regime regime_;
  ClosureVariant variant_;
  int truncation_order_;
  std::array<std::array<SymExpr, 3>, 3> parts_;
};

/// Closures for regimes I-IV truncated at closure_order(regime), with the
/// regime's capillary corrections. Throws RegimeError for the KdV models.
ClosureTable build_closure_table(Regime regime,
                                 ClosureVariant variant = ClosureVariant::Rederived);

}  // namespace filmflow

#endif  // FILMFLOW_CLOSURES_HPP_
