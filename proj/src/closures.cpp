#include "filmflow/closures.hpp"

#include <sstream>

namespace filmflow {

std::string_view to_string(FieldComponent component) {
  switch (component) {
    case FieldComponent::U: return "u";
    case FieldComponent::V: return "v";
    case FieldComponent::P: return "p";
  }
  return "?";
}

std::string_view to_string(ClosureVariant variant) {
  return variant == ClosureVariant::Literature ? "literature" : "rederived";
}

namespace {

using Q = Rational;

YPoly Y(std::vector<Rational> c) { return YPoly(std::move(c)); }

SymExpr E(int x, int t = 0) { return SymExpr::eta(x, t); }

constexpr ParamPowers kR{1, 0, 0, 0};
constexpr ParamPowers kR2{2, 0, 0, 0};
constexpr ParamPowers kCot{0, 1, 0, 0};
constexpr ParamPowers kRCot{1, 1, 0, 0};
constexpr ParamPowers kWeber{0, 0, 1, 0};

SymExpr sum(std::initializer_list<SymExpr> parts) {
  SymExpr out;
  for (const auto& p : parts) out += p;
  return out;
}

// Order 0.
SymExpr u0() { return Y({0, 2}) * E(0); }
SymExpr v0() { return Y({0, 0, -1}) * E(1); }
SymExpr p0() { return kCot * E(0); }

// Order 1.
SymExpr u1() {
  return sum({kR * (Y({0, -1, 0, Q(1, 3)}) * E(0, 1)),
              kCot * (Y({0, -2, 1}) * E(1)),
              kR * (Y({0, Q(-2, 3), 0, 0, Q(1, 6)}) * E(1)),
              Y({0, 4}) * (E(0) * E(0))});
}

SymExpr v1() {
  return sum({kR * (Y({0, 0, Q(1, 2), 0, Q(-1, 12)}) * E(1, 1)),
              kCot * (Y({0, 0, 1, Q(-1, 3)}) * E(2)),
              kR * (Y({0, 0, Q(1, 3), 0, 0, Q(-1, 30)}) * E(2)),
              Y({0, 0, -4}) * (E(0) * E(1))});
}

SymExpr p1() { return Y({-1, -1}) * E(1); }

// Order 2.
SymExpr u2() {
  return sum({
      kR2 * (Y({0, Q(5, 12), 0, Q(-1, 6), 0, Q(1, 60)}) * E(0, 2)),
      kRCot * (Y({0, Q(2, 3), 0, Q(-1, 3), Q(1, 12)}) * E(1, 1)),
      kR2 * (Y({0, Q(101, 180), 0, Q(-1, 9), Q(-1, 12), 0, Q(1, 45), Q(-1, 252)}) * E(1, 1)),
      Y({0, 5, -1, Q(-2, 3)}) * E(2),
      kRCot * (Y({0, Q(2, 5), 0, 0, Q(-1, 6), Q(1, 15), Q(-1, 90)}) * E(2)),
      kR2 * (Y({0, Q(121, 630), 0, 0, Q(-1, 18), 0, 0, Q(2, 315), Q(-1, 560)}) * E(2)),
      Y({0, 2}) * (E(0) * E(0) * E(0)),
      kR * (Y({0, -4, 0, Q(4, 3)}) * (E(0) * E(0, 1))),
      kR * (Y({0, -4, 0, 0, 1}) * (E(0) * E(1))),
      kCot * (Y({0, -6, 3}) * (E(0) * E(1))),
  });
}

SymExpr v2() {
  const SymExpr ex2_plus = E(1) * E(1) + E(0) * E(2);
  return sum({
      kR2 * (Y({0, 0, Q(-5, 24), 0, Q(1, 24), 0, Q(-1, 360)}) * E(1, 2)),
      kRCot * (Y({0, 0, Q(-1, 3), 0, Q(1, 12), Q(-1, 60)}) * E(2, 1)),
      kR2 * (Y({0, 0, Q(-101, 360), 0, Q(1, 36), Q(1, 60), 0, Q(-1, 315), Q(1, 2016)}) *
             E(2, 1)),
      Y({0, 0, Q(-5, 2), Q(1, 3), Q(1, 6)}) * E(3),
      kRCot * (Y({0, 0, Q(-1, 5), 0, 0, Q(1, 30), Q(-1, 90), Q(1, 630)}) * E(3)),
      kR2 * (Y({0, 0, Q(-121, 1260), 0, 0, Q(1, 90), 0, 0, Q(-1, 1260), Q(1, 5040)}) * E(3)),
      Y({0, 0, -3}) * (E(0) * E(0) * E(1)),
      kR * (Y({0, 0, 2, 0, Q(-1, 3)}) * (E(1) * E(0, 1) + E(0) * E(1, 1))),
      kR * (Y({0, 0, 2, 0, 0, Q(-1, 5)}) * ex2_plus),
      kCot * (Y({0, 0, 3, -1}) * ex2_plus),
  });
}

SymExpr p2(ClosureVariant variant) {
  SymExpr base = sum({
      kR * (Y({Q(1, 6), Q(1, 2)}) * E(1, 1)),
      kWeber * (Y({-1}) * E(2)),
      kCot * (Y({Q(1, 2), 1, Q(-1, 2)}) * E(2)),
      kR * (Y({Q(1, 10), Q(1, 3), 0, 0, Q(1, 6), Q(-1, 10)}) * E(2)),
  });
  if (variant == ClosureVariant::Literature) {
    base += kR * (Y({-4, 4}) * (E(0) * E(1)));
    base += Y({3, -5}) * (E(0) * E(1));
  } else {
    base += Y({-1, -1}) * (E(0) * E(1));
  }
  return base;
}

// Capillary corrections: -(W/sin a)(y^2 - 2y) eta_xxx in u, its
// divergence-free partner (W/sin a)(y^3/3 - y^2) eta_xxxx in v.
SymExpr capillary_u() { return kWeber * (Y({0, 2, -1}) * E(3)); }
SymExpr capillary_v() { return kWeber * (Y({0, 0, -1, Q(1, 3)}) * E(4)); }
SymExpr capillary_p() { return kWeber * (Y({-1}) * E(2)); }

ParamPowers delta_pow(int k) { return {0, 0, 0, k}; }

}  // namespace

ClosureTable::ClosureTable(Regime regime, ClosureVariant variant, int truncation_order,
                           std::array<std::array<SymExpr, 3>, 3> parts)
    : regime_(regime),
      variant_(variant),
      truncation_order_(truncation_order),
      parts_(std::move(parts)) {}

const SymExpr& ClosureTable::part(FieldComponent component, int order) const {
  if (order < 0 || order > 2) throw std::out_of_range("closure order outside 0..2");
  return parts_[static_cast<std::size_t>(component)][static_cast<std::size_t>(order)];
}

SymExpr ClosureTable::assembled(FieldComponent component) const {
  SymExpr out;
  for (int k = 0; k <= truncation_order_; ++k) out += delta_pow(k) * part(component, k);
  return out;
}

std::vector<ClosureTerm> ClosureTable::terms() const {
  std::vector<ClosureTerm> out;
  for (auto c : {FieldComponent::U, FieldComponent::V, FieldComponent::P}) {
    for (int k = 0; k <= truncation_order_; ++k) {
      for (const auto& [key, poly] : part(c, k).terms()) {
        out.push_back({c, k, key.params, key.monomial, poly});
      }
    }
  }
  return out;
}

std::string ClosureTable::canonical_text() const {
  std::ostringstream out;
  for (const auto& t : terms()) {
    out << to_string(t.component) << ' ' << t.order << ' ' << t.params.R << ' '
        << t.params.cot << ' ' << t.params.weber << ' ' << t.params.delta << " | "
        << to_string(t.monomial) << " |";
    for (const auto& c : t.poly.coeffs()) out << ' ' << c.to_string();
    out << '\n';
  }
  return out.str();
}

ClosureTable build_closure_table(Regime regime, ClosureVariant variant) {
  const int order = closure_order(regime);  // throws for the KdV models
  std::array<std::array<SymExpr, 3>, 3> parts;
  auto& u = parts[0];
  auto& v = parts[1];
  auto& p = parts[2];
  u[0] = u0();
  v[0] = v0();
  p[0] = p0();
  u[1] = u1();
  v[1] = v1();
  p[1] = p1();
  if (order >= 2) {
    u[2] = u2();
    v[2] = v2();
    p[2] = p2(variant);
  }

  switch (regime) {
    case Regime::I:
      p[1] += delta_pow(1) * capillary_p();
      break;
    case Regime::II:
      p[0] += delta_pow(2) * capillary_p();
      u[1] += delta_pow(2) * capillary_u();
      v[1] += delta_pow(2) * capillary_v();
      break;
    case Regime::III:
      break;
    case Regime::IV:
      p[1] += delta_pow(1) * capillary_p();
      u[2] += delta_pow(1) * capillary_u();
      v[2] += delta_pow(1) * capillary_v();
      p[2] -= capillary_p();
      break;
    default:
      break;
  }
  return ClosureTable(regime, variant, order, std::move(parts));
}

}  // namespace filmflow
