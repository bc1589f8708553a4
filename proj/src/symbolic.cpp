#include "filmflow/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace filmflow {

namespace {

__extension__ typedef __int128 Wide;

std::int64_t narrow(Wide value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < -std::numeric_limits<std::int64_t>::max()) {
    throw RationalOverflow("rational arithmetic overflowed 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Rational make_reduced(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    std::int64_t n = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    std::string rest = text.substr(slash + 1);
    std::int64_t d = std::stoll(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make_reduced(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return Wide(a.num_) * b.den_ <=> Wide(b.num_) * a.den_;
}

// ---------------------------------------------------------------- YPoly

YPoly::YPoly(Rational constant) : c_{constant} { trim(); }

YPoly::YPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

YPoly YPoly::monomial(int power, Rational coeff) {
  std::vector<Rational> c(static_cast<std::size_t>(power) + 1);
  c.back() = coeff;
  return YPoly(std::move(c));
}

void YPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational YPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

YPoly YPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    d[k - 1] = c_[k] * Rational(static_cast<std::int64_t>(k));
  }
  return YPoly(std::move(d));
}

double YPoly::evaluate(double y) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + it->to_double();
  return acc;
}

Rational YPoly::evaluate(const Rational& y) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

std::string YPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << c_[k].to_string() << ")";
    if (k > 0) out << "*y^" << k;
  }
  return out.str();
}

YPoly operator+(const YPoly& a, const YPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  }
  return YPoly(std::move(c));
}

YPoly YPoly::operator-() const {
  std::vector<Rational> c(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) c[k] = -c_[k];
  return YPoly(std::move(c));
}

YPoly operator-(const YPoly& a, const YPoly& b) { return a + (-b); }

YPoly operator*(const YPoly& a, const YPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return YPoly(std::move(c));
}

// ---------------------------------------------------------------- ParamPowers

double ParamPowers::value(const PhysicalParams& p) const {
  double v = 1.0;
  auto pw = [&](double base, int e) {
    if (e != 0) v *= std::pow(base, e);
  };
  pw(p.R, R);
  pw(p.cot_alpha(), cot);
  pw(p.weber_factor(), weber);
  pw(p.delta, delta);
  return v;
}

std::string ParamPowers::to_string() const {
  std::ostringstream out;
  out << "R^" << R << " cot^" << cot << " weber^" << weber << " delta^" << delta;
  return out.str();
}

ParamPowers operator+(const ParamPowers& a, const ParamPowers& b) {
  return {a.R + b.R, a.cot + b.cot, a.weber + b.weber, a.delta + b.delta};
}

JetMonomial multiply(const JetMonomial& a, const JetMonomial& b) {
  JetMonomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string to_string(const JetMonomial& monomial) {
  if (monomial.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < monomial.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(monomial[i].x) + "," + std::to_string(monomial[i].t);
  }
  return out;
}

// ---------------------------------------------------------------- SymExpr

void SymExpr::add_term(const Key& key, const YPoly& poly) {
  if (poly.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, poly);
  if (!inserted) {
    it->second += poly;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymExpr SymExpr::jet(JetIndex index, const YPoly& poly) {
  SymExpr e;
  e.add_term({ParamPowers{}, JetMonomial{index}}, poly);
  return e;
}

SymExpr SymExpr::constant(const YPoly& poly) {
  SymExpr e;
  e.add_term({ParamPowers{}, JetMonomial{}}, poly);
  return e;
}

SymExpr SymExpr::term(ParamPowers params, JetMonomial monomial, const YPoly& poly) {
  std::sort(monomial.begin(), monomial.end());
  SymExpr e;
  e.add_term({params, std::move(monomial)}, poly);
  return e;
}

SymExpr& SymExpr::operator+=(const SymExpr& other) {
  for (const auto& [key, poly] : other.terms_) add_term(key, poly);
  return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& other) {
  for (const auto& [key, poly] : other.terms_) add_term(key, -poly);
  return *this;
}

SymExpr SymExpr::operator-() const {
  SymExpr e;
  for (const auto& [key, poly] : terms_) e.terms_.emplace(key, -poly);
  return e;
}

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  SymExpr out;
  for (const auto& [ka, pa] : a.terms_) {
    for (const auto& [kb, pb] : b.terms_) {
      out.add_term({ka.params + kb.params, multiply(ka.monomial, kb.monomial)}, pa * pb);
    }
  }
  return out;
}

SymExpr operator*(const YPoly& p, const SymExpr& e) {
  SymExpr out;
  for (const auto& [key, poly] : e.terms_) out.add_term(key, p * poly);
  return out;
}

SymExpr operator*(const ParamPowers& p, const SymExpr& e) {
  SymExpr out;
  for (const auto& [key, poly] : e.terms_) out.add_term({key.params + p, key.monomial}, poly);
  return out;
}

namespace {

template <class Shift>
SymExpr leibniz(const SymExpr::TermMap& terms, Shift shift) {
  SymExpr out;
  for (const auto& [key, poly] : terms) {
    for (std::size_t i = 0; i < key.monomial.size(); ++i) {
      // Equal neighbours give identical products; weight once per factor.
      JetMonomial m = key.monomial;
      m[i] = shift(m[i]);
      std::sort(m.begin(), m.end());
      out += SymExpr::term(key.params, std::move(m), poly);
    }
  }
  return out;
}

}  // namespace

SymExpr SymExpr::d_dx() const {
  return leibniz(terms_, [](JetIndex j) { return JetIndex{j.x + 1, j.t}; });
}

SymExpr SymExpr::d_dt() const {
  return leibniz(terms_, [](JetIndex j) { return JetIndex{j.x, j.t + 1}; });
}

SymExpr SymExpr::d_dx(int order) const {
  SymExpr e = *this;
  for (int k = 0; k < order; ++k) e = e.d_dx();
  return e;
}

SymExpr SymExpr::d_dy() const {
  SymExpr out;
  for (const auto& [key, poly] : terms_) out.add_term(key, poly.derivative());
  return out;
}

SymExpr SymExpr::at_y(const Rational& y) const {
  SymExpr out;
  for (const auto& [key, poly] : terms_) out.add_term(key, YPoly(poly.evaluate(y)));
  return out;
}

SymExpr SymExpr::delta_coefficient(int k) const {
  SymExpr out;
  for (const auto& [key, poly] : terms_) {
    if (key.params.delta == k) out.terms_.emplace(key, poly);
  }
  return out;
}

int SymExpr::min_delta_power() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [key, poly] : terms_) m = std::min(m, key.params.delta);
  return terms_.empty() ? 0 : m;
}

int SymExpr::max_delta_power() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [key, poly] : terms_) m = std::max(m, key.params.delta);
  return terms_.empty() ? 0 : m;
}

int SymExpr::max_x_order() const {
  int m = 0;
  for (const auto& [key, poly] : terms_) {
    for (JetIndex j : key.monomial) m = std::max(m, j.x);
  }
  return m;
}

int SymExpr::max_t_order() const {
  int m = 0;
  for (const auto& [key, poly] : terms_) {
    for (JetIndex j : key.monomial) m = std::max(m, j.t);
  }
  return m;
}

SymExpr SymExpr::substitute(
    const std::function<std::optional<SymExpr>(JetIndex)>& rule) const {
  SymExpr out;
  for (const auto& [key, poly] : terms_) {
    SymExpr product = SymExpr::term(key.params, {}, poly);
    for (JetIndex j : key.monomial) {
      if (auto replacement = rule(j)) {
        product = product * *replacement;
      } else {
        product = product * SymExpr::jet(j);
      }
    }
    out += product;
  }
  return out;
}

std::string SymExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  for (const auto& [key, poly] : terms_) {
    out << "[" << key.params.to_string() << "] [" << filmflow::to_string(key.monomial)
        << "] " << poly.to_string() << "\n";
  }
  return out.str();
}

}  // namespace filmflow
