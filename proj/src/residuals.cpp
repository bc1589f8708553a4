#include "filmflow/residuals.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace filmflow {

namespace {

using Q = Rational;

constexpr ParamPowers kDelta{0, 0, 0, 1};
constexpr ParamPowers kDelta2{0, 0, 0, 2};
constexpr ParamPowers kInvR{-1, 0, 0, 0};
constexpr ParamPowers kCot{0, 1, 0, 0};
constexpr ParamPowers kWeber{0, 0, 1, 0};
constexpr ParamPowers kDeltaOverR{-1, 0, 0, 1};
constexpr ParamPowers kDelta2Weber{0, 0, 1, 2};

SymExpr E(int x, int t = 0) { return SymExpr::eta(x, t); }
YPoly Y(std::vector<Rational> c) { return YPoly(std::move(c)); }

const Rational kOne(1);

double brace_scale(double delta, int q) { return std::pow(delta, -q); }

}  // namespace

YPoly nusselt_profile() { return Y({0, 2, -1}); }
YPoly nusselt_shear() { return Y({2, -2}); }

SourceTerms source_terms(const SurfaceJet& jet, const FieldGrid& field,
                         const PhysicalParams& params) {
  const SymExpr& u = field.u_expr;
  const SymExpr& v = field.v_expr;
  const SymExpr& p = field.p_expr;
  const SymExpr eta = E(0), eta_x = E(1), eta_t = E(0, 1);
  const SymExpr u_x = u.d_dx(), u_y = u.d_dy(), u_yy = u_y.d_dy();
  const SymExpr p_x = p.d_dx(), p_y = p.d_dy();
  const YPoly y = YPoly::y();

  SourceTerms s;
  s.f1_2_expr =
      kInvR * (Y({3}) * (eta * eta * u_yy) - Y({2}) * (eta * p_x) + Y({0, 2}) * (eta_x * p_y)) +
      eta_t * u + y * (eta_t * u_y) + Y({0, 0, 1}) * (eta_x * u) +
      Y({0, -2, 2}) * (eta * u_x) - Y({0, 0, -2, 1}) * (eta_x * u_y) - u * u_x - v * u_y +
      Y({-2, 4}) * (eta * v);
  s.f2_2_expr = kInvR * (Y({-2}) * (eta * eta * p_y) + Y({2}) * (eta_x * u_y) +
                         Y({2}) * (eta * u_x.d_dy()));
  s.f1_1_expr = Y({-2}) * (kInvR * (eta * u_yy)) + kDelta * s.f1_2_expr;
  s.f2_1_expr = Y({2}) * (kInvR * (eta * p_y)) + kDelta * s.f2_2_expr;
  s.h2_2_expr = (Y({2}) * (eta * eta_x) + eta_x * u + eta * u_x).at_y(kOne);
  s.h3_expr = eta * eta * eta_x;

  s.f1_1 = evaluate(s.f1_1_expr, jet, params);
  s.f2_1 = evaluate(s.f2_1_expr, jet, params);
  s.f1_1.n = s.f2_1.n = jet.resolution();
  PolyField h2 = evaluate(s.h2_2_expr, jet, params);
  h2.n = jet.resolution();
  s.h2_2 = h2.at(1.0);
  PolyField h3 = evaluate(s.h3_expr, jet, params);
  h3.n = jet.resolution();
  s.h3 = h3.at(1.0);
  return s;
}

ResidualBraces residual_braces(const FieldGrid& field, const SourceTerms& sources) {
  const SymExpr& u = field.u_expr;
  const SymExpr& v = field.v_expr;
  const SymExpr& p = field.p_expr;
  const SymExpr eta = E(0);
  const YPoly ubar = nusselt_profile();
  const YPoly ubar_y = nusselt_shear();

  ResidualBraces b;
  b.psi1 = kDelta * (u.d_dt() + ubar * u.d_dx() + ubar_y * v) +
           Y({2}) * (kDeltaOverR * p.d_dx()) -
           kInvR * (kDelta2 * u.d_dx(2) + u.d_dy().d_dy()) - kDelta * sources.f1_1_expr;
  b.psi2 = kDelta2 * (v.d_dt() + ubar * v.d_dx()) + Y({2}) * (kInvR * p.d_dy()) -
           kDeltaOverR * (kDelta2 * v.d_dx(2) + v.d_dy().d_dy()) -
           kDelta * sources.f2_1_expr;

  const SymExpr one_plus = SymExpr::constant(kOne) + kDelta * eta;
  b.phi1 = (kDelta2 * v.d_dx() + u.d_dy() - Y({2}) * (one_plus * one_plus * eta)).at_y(kOne);
  b.phi2 = (p - kDelta * v.d_dy() - kCot * eta + kDelta2Weber * E(2) -
            kDelta2 * sources.h2_2_expr)
               .at_y(kOne);
  b.phi3 = (E(0, 1) + E(1) - v - kDelta2 * sources.h3_expr).at_y(kOne);
  return b;
}

ResidualSet residual_set(const SurfaceJet& jet, const FieldGrid& field,
                         const SourceTerms& sources, const PhysicalParams& params,
                         Regime regime) {
  if (!(params.delta > 0.0)) {
    throw std::invalid_argument("residual_set: delta must be positive");
  }
  if (field.regime != regime) {
    throw std::invalid_argument("residual_set: field was reconstructed for regime " +
                                std::string(to_string(field.regime)));
  }
  const ResidualBraces b = residual_braces(field, sources);
  const int n = jet.resolution();

  ResidualSet r;
  r.delta = params.delta;
  r.q = 3;
  const double scale = brace_scale(params.delta, r.q);

  auto interior = [&](const SymExpr& e, PolyField& out, double& raw) {
    out = evaluate(e, jet, params);
    out.n = n;
    if (out.coeffs.empty()) out.coeffs.assign(1, std::vector<double>(static_cast<std::size_t>(n)));
    raw = out.strip_l2();
    for (auto& row : out.coeffs) {
      for (double& x : row) x *= scale;
    }
  };
  auto boundary = [&](const SymExpr& e, std::vector<double>& out, double& raw) {
    PolyField f = evaluate(e, jet, params);
    f.n = n;
    out = f.at(1.0);
    raw = boundary_l2(out);
    for (double& x : out) x *= scale;
  };
  interior(b.psi1, r.psi1, r.raw_norms.psi1);
  interior(b.psi2, r.psi2, r.raw_norms.psi2);
  boundary(b.phi1, r.phi1, r.raw_norms.phi1);
  boundary(b.phi2, r.phi2, r.raw_norms.phi2);
  boundary(b.phi3, r.phi3, r.raw_norms.phi3);

  r.norms = {r.raw_norms.psi1 * scale, r.raw_norms.psi2 * scale, r.raw_norms.phi1 * scale,
             r.raw_norms.phi2 * scale, r.raw_norms.phi3 * scale};
  return r;
}

SymExpr model_time_derivative(Regime regime) {
  if (!has_field_closures(regime)) {
    throw RegimeError("regime", "no fixed-frame expansion for regime " +
                                    std::string(to_string(regime)));
  }
  const SymExpr eta = E(0);
  // nu = (8/15)(5/4 cot - R)
  const SymExpr nu_term = kCot * (Y({Q(2, 3)}) * E(2)) - ParamPowers{1, 0, 0, 0} *
                                                             (Y({Q(8, 15)}) * E(2));
  SymExpr rhs = Y({-4}) * (eta * E(1)) + nu_term;
  // hyper = (2/3) W2 / sin(alpha), with W2 = delta^2 W (II) or delta W (IV).
  const SymExpr hyper_xxxx = Y({Q(-2, 3)}) * (kWeber * E(4));
  if (regime == Regime::II) rhs += kDelta2 * hyper_xxxx;
  if (regime == Regime::III || regime == Regime::IV) {
    const SymExpr c1_term = Y({-2}) * E(3) +
                            ParamPowers{2, 0, 0, 0} * (Y({Q(-32, 63)}) * E(3)) +
                            ParamPowers{1, 1, 0, 0} * (Y({Q(40, 63)}) * E(3));
    const SymExpr steep = eta * E(2) + E(1) * E(1);
    const SymExpr c2_term = ParamPowers{1, 0, 0, 0} * (Y({Q(-16, 5)}) * steep) +
                            kCot * (Y({2}) * steep);
    SymExpr block = c1_term + c2_term + Y({-2}) * (eta * eta * E(1));
    if (regime == Regime::IV) block += kDelta * hyper_xxxx;
    rhs += kDelta * block;
  }
  return Y({-2}) * E(1) + kDelta * rhs;
}

SymExpr eliminate_time_derivatives(const SymExpr& expr, Regime regime) {
  std::vector<SymExpr> dt{E(0), model_time_derivative(regime)};
  auto rule_upto = [&](std::size_t available) {
    return [&, available](JetIndex j) -> std::optional<SymExpr> {
      if (j.t == 0) return std::nullopt;
      if (static_cast<std::size_t>(j.t) >= available) {
        throw std::logic_error("time derivative order not yet expanded");
      }
      return dt[static_cast<std::size_t>(j.t)].d_dx(j.x);
    };
  };
  const int need = expr.max_t_order();
  while (static_cast<int>(dt.size()) <= need) {
    dt.push_back(dt.back().d_dt().substitute(rule_upto(2)));
  }
  return expr.substitute(rule_upto(dt.size()));
}

double order_target(Regime regime) { return closure_order(regime) == 1 ? 2.0 : 3.0; }

double order_threshold(Regime regime) { return closure_order(regime) == 1 ? 1.8 : 2.7; }

PhysicalParams params_at_delta(const PhysicalParams& base, Regime regime, double delta) {
  PhysicalParams p = base;
  p.delta = delta;
  p.epsilon = delta;
  if (regime == Regime::II) p.W = base.W2 / (delta * delta);
  if (regime == Regime::IV || regime == Regime::KdVKS) p.W = base.W2 / delta;
  return p;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two matching points");
  }
  double mx = 0, my = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= k;
  my /= k;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

OrderReport order_study(const SurfaceState& eta0, const PhysicalParams& base, Regime regime,
                        const std::vector<double>& deltas, int threads, ClosureVariant variant,
                        int m) {
  if (deltas.size() < 3) {
    throw std::invalid_argument("order_study: at least 3 delta values are required, got " +
                                std::to_string(deltas.size()));
  }
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1])) {
      throw std::invalid_argument("order_study: deltas must be strictly decreasing");
    }
  }
  for (double d : deltas) {
    if (!(d > 0.0 && d <= 1.0)) throw ParameterError("0 < delta <= 1", "order_study: bad delta");
  }
  const ClosureTable table = build_closure_table(regime, variant);
  const JetRequirement req = closure_jet_requirement(regime);

  OrderReport report;
  report.regime = regime;
  report.variant = variant;
  report.deltas = deltas;
  report.raw.resize(deltas.size());
  report.reported.resize(deltas.size());

  auto cell = [&](std::size_t i) {
    const PhysicalParams p = params_at_delta(base, regime, deltas[i]);
    check_regime_consistency(p, regime);
    SurfaceState start = eta0;
    start.set_tau(0.0);
    const SurfaceJet jet = eta_jet(start, p, regime, req.max_x, req.max_t);
    const FieldGrid field = reconstruct(jet, p, table, m, table.truncation_order());
    const SourceTerms s = source_terms(jet, field, p);
    const ResidualSet r = residual_set(jet, field, s, p, regime);
    report.raw[i] = r.raw_norms;
    report.reported[i] = r.norms;
  };

  const std::size_t workers =
      std::min<std::size_t>(deltas.size(), static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < deltas.size(); ++i) cell(i);
  } else {
    std::vector<std::exception_ptr> errors(deltas.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < deltas.size(); i += workers) {
          try {
            cell(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::array<std::vector<double>, 5> columns;
  for (const auto& r : report.raw) {
    const auto a = r.as_array();
    for (std::size_t k = 0; k < 5; ++k) columns[k].push_back(a[k]);
  }
  std::array<double, 5> slopes{};
  for (std::size_t k = 0; k < 5; ++k) slopes[k] = loglog_slope(deltas, columns[k]);
  report.slopes = {slopes[0], slopes[1], slopes[2], slopes[3], slopes[4]};
  report.target = order_target(regime);
  report.threshold = order_threshold(regime);
  report.pass = true;
  for (double s : slopes) {
    if (!(s >= report.threshold)) report.pass = false;
  }
  return report;
}

}  // namespace filmflow
