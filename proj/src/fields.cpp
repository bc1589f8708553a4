#include "filmflow/fields.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace filmflow {

std::vector<double> PolyField::at(double y) const {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (auto k = coeffs.rbegin(); k != coeffs.rend(); ++k) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] * y + (*k)[i];
  }
  return out;
}

void gauss_legendre_unit(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw std::invalid_argument("Gauss-Legendre needs at least one node");
  nodes.assign(static_cast<std::size_t>(count), 0.0);
  weights.assign(static_cast<std::size_t>(count), 0.0);
  for (int i = 0; i < count; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= count; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = count * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Map [-1, 1] -> [0, 1].
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
}

namespace {

double mean_square(const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return f.empty() ? 0.0 : s / static_cast<double>(f.size());
}

}  // namespace

double PolyField::strip_l2() const {
  if (coeffs.empty()) return 0.0;
  std::vector<double> nodes, weights;
  gauss_legendre_unit(degree() + 1, nodes, weights);
  double acc = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) acc += weights[q] * mean_square(at(nodes[q]));
  return std::sqrt(acc);
}

double PolyField::strip_l2_trapezoid(int m) const {
  if (m < 1) throw std::invalid_argument("trapezoid needs at least one interval");
  if (coeffs.empty()) return 0.0;
  double acc = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double w = (j == 0 || j == m) ? 0.5 : 1.0;
    acc += w * mean_square(at(static_cast<double>(j) / m));
  }
  return std::sqrt(acc / m);
}

double boundary_l2(const std::vector<double>& samples) { return std::sqrt(mean_square(samples)); }

PolyField evaluate(const SymExpr& expr, const SurfaceJet& jet, const PhysicalParams& params) {
  PolyField out;
  out.n = jet.resolution();
  const std::size_t n = static_cast<std::size_t>(out.n);
  std::map<JetMonomial, std::vector<double>> products;
  for (const auto& [key, poly] : expr.terms()) {
    auto it = products.find(key.monomial);
    if (it == products.end()) {
      std::vector<double> prod(n, 1.0);
      for (JetIndex j : key.monomial) {
        const auto& s = jet.samples(j);
        for (std::size_t i = 0; i < n; ++i) prod[i] *= s[i];
      }
      it = products.emplace(key.monomial, std::move(prod)).first;
    }
    const double scale = key.params.value(params);
    if (static_cast<int>(out.coeffs.size()) <= poly.degree()) {
      out.coeffs.resize(static_cast<std::size_t>(poly.degree()) + 1,
                        std::vector<double>(n, 0.0));
    }
    for (int k = 0; k <= poly.degree(); ++k) {
      const double c = scale * poly.coeff(k).to_double();
      if (c == 0.0) continue;
      auto& row = out.coeffs[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < n; ++i) row[i] += c * it->second[i];
    }
  }
  return out;
}

JetRequirement closure_jet_requirement(Regime regime) {
  const ClosureTable table = build_closure_table(regime);
  JetRequirement req;
  for (auto c : {FieldComponent::U, FieldComponent::V, FieldComponent::P}) {
    const SymExpr e = table.assembled(c);
    // Residuals use up to two more x-derivatives and one t-derivative.
    req.max_x = std::max(req.max_x, e.max_x_order() + 2);
    req.max_t = std::max(req.max_t, e.max_t_order() + 1);
  }
  return req;
}

namespace {

void sample_grid(const PolyField& f, int m, std::vector<double>& out) {
  const std::size_t n = static_cast<std::size_t>(f.n);
  out.assign(n * static_cast<std::size_t>(m + 1), 0.0);
  for (int j = 0; j <= m; ++j) {
    const auto row = f.at(static_cast<double>(j) / m);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
}

}  // namespace

FieldGrid reconstruct(const SurfaceJet& jet, const PhysicalParams& params,
                      const ClosureTable& table, int m, int truncation) {
  if (m < 1) throw std::invalid_argument("reconstruct: M must be >= 1");
  if (truncation < 0 || truncation > table.truncation_order()) {
    throw std::invalid_argument("reconstruct: truncation order outside the table");
  }
  FieldGrid f;
  f.n = jet.resolution();
  f.m = m;
  f.params = params;
  f.regime = table.regime();
  f.variant = table.variant();
  f.order = truncation;
  f.jet = std::make_shared<const SurfaceJet>(jet);
  f.y.resize(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) f.y[static_cast<std::size_t>(j)] = static_cast<double>(j) / m;

  auto assemble = [&](FieldComponent c) {
    SymExpr e;
    for (int k = 0; k <= truncation; ++k) e += ParamPowers{0, 0, 0, k} * table.part(c, k);
    return e;
  };
  f.u_expr = assemble(FieldComponent::U);
  f.v_expr = assemble(FieldComponent::V);
  f.p_expr = assemble(FieldComponent::P);
  f.u_poly = evaluate(f.u_expr, jet, params);
  f.v_poly = evaluate(f.v_expr, jet, params);
  f.p_poly = evaluate(f.p_expr, jet, params);
  for (auto* poly : {&f.u_poly, &f.v_poly, &f.p_poly}) {
    if (poly->coeffs.empty()) poly->coeffs.assign(1, std::vector<double>(jet.resolution(), 0.0));
    poly->n = jet.resolution();
  }
  sample_grid(f.u_poly, m, f.u);
  sample_grid(f.v_poly, m, f.v);
  sample_grid(f.p_poly, m, f.p);
  return f;
}

FieldGrid reconstruct(const SurfaceJet& jet, const PhysicalParams& params, Regime regime,
                      int m, ClosureVariant variant) {
  const ClosureTable table = build_closure_table(regime, variant);
  return reconstruct(jet, params, table, m, table.truncation_order());
}

std::vector<double> divergence(const FieldGrid& field) {
  if (!field.jet) throw std::invalid_argument("divergence: field has no jet");
  PolyField ux = evaluate(field.u_expr.d_dx(), *field.jet, field.params);
  PolyField vy = evaluate(field.v_expr.d_dy(), *field.jet, field.params);
  ux.n = vy.n = field.n;
  std::vector<double> out(field.u.size(), 0.0);
  for (int j = 0; j <= field.m; ++j) {
    const double y = field.y[static_cast<std::size_t>(j)];
    const auto a = ux.at(y);
    const auto b = vy.at(y);
    for (int i = 0; i < field.n; ++i) {
      out[field.index(i, j)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

SurfaceTraces surface_traces(const FieldGrid& field, const SurfaceJet& jet,
                             const PhysicalParams& params) {
  const Rational one(1);
  auto trace = [&](const SymExpr& e) {
    PolyField f = evaluate(e.at_y(one), jet, params);
    f.n = jet.resolution();
    return f.at(1.0);
  };
  SurfaceTraces t;
  t.u = trace(field.u_expr);
  t.v = trace(field.v_expr);
  t.p = trace(field.p_expr);
  t.u_y = trace(field.u_expr.d_dy());
  t.v_x = trace(field.v_expr.d_dx());
  t.v_y = trace(field.v_expr.d_dy());
  return t;
}

}  // namespace filmflow
