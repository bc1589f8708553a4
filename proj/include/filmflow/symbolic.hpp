#ifndef FILMFLOW_SYMBOLIC_HPP_
#define FILMFLOW_SYMBOLIC_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "filmflow/jet.hpp"
#include "filmflow/params.hpp"

namespace filmflow {

class RationalOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact rational with 64-bit numerator and positive denominator, always
/// in lowest terms. Arithmetic throws RationalOverflow instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT: implicit from integers is intended
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  /// "p/q" or "p"; parse accepts the same forms.
  std::string to_string() const;
  static Rational parse(const std::string& text);

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Polynomial in y with rational coefficients; coeff(k) multiplies y^k.
class YPoly {
 public:
  YPoly() = default;
  YPoly(Rational constant);  // NOLINT
  explicit YPoly(std::vector<Rational> coeffs);
  static YPoly monomial(int power, Rational coeff = 1);
  /// y
  static YPoly y() { return monomial(1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  YPoly derivative() const;
  double evaluate(double y) const;
  Rational evaluate(const Rational& y) const;
  std::string to_string() const;

  friend YPoly operator+(const YPoly& a, const YPoly& b);
  friend YPoly operator-(const YPoly& a, const YPoly& b);
  friend YPoly operator*(const YPoly& a, const YPoly& b);
  YPoly operator-() const;
  YPoly& operator+=(const YPoly& o) { return *this = *this + o; }
  friend bool operator==(const YPoly&, const YPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Exponents of the parameter monomial R^a cot(alpha)^b (W/sin alpha)^c delta^d.
struct ParamPowers {
  int R = 0;
  int cot = 0;
  int weber = 0;
  int delta = 0;

  double value(const PhysicalParams& params) const;
  std::string to_string() const;
  friend ParamPowers operator+(const ParamPowers& a, const ParamPowers& b);
  auto operator<=>(const ParamPowers&) const = default;
};

/// Product of jet entries, kept sorted; empty means the constant 1.
using JetMonomial = std::vector<JetIndex>;

JetMonomial multiply(const JetMonomial& a, const JetMonomial& b);
std::string to_string(const JetMonomial& monomial);

/// Exact polynomial expression
///   sum over (params, monomial) of params * YPoly(y) * monomial(jet)
/// in which d/dx and d/dt act on jet monomials by the Leibniz rule
/// (index shifting) and d/dy acts on the y polynomials.
class SymExpr {
 public:
  struct Key {
    ParamPowers params;
    JetMonomial monomial;
    auto operator<=>(const Key&) const = default;
  };
  using TermMap = std::map<Key, YPoly>;

  SymExpr() = default;
  /// poly * jet entry.
  static SymExpr jet(JetIndex index, const YPoly& poly = Rational(1));
  static SymExpr eta(int x_order = 0, int t_order = 0) { return jet({x_order, t_order}); }
  static SymExpr constant(const YPoly& poly);
  static SymExpr term(ParamPowers params, JetMonomial monomial, const YPoly& poly);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  SymExpr& operator+=(const SymExpr& other);
  SymExpr& operator-=(const SymExpr& other);
  friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
  SymExpr operator-() const;
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend SymExpr operator*(const YPoly& p, const SymExpr& e);
  friend SymExpr operator*(const ParamPowers& p, const SymExpr& e);
  friend bool operator==(const SymExpr&, const SymExpr&) = default;

  SymExpr d_dx() const;
  SymExpr d_dt() const;
  SymExpr d_dy() const;
  SymExpr d_dx(int order) const;
  /// Exact evaluation of the y polynomials at y.
  SymExpr at_y(const Rational& y) const;

  /// Terms whose delta exponent equals k.
  SymExpr delta_coefficient(int k) const;
  int min_delta_power() const;
  int max_delta_power() const;

  int max_x_order() const;
  int max_t_order() const;

  /// Replace each jet factor for which `rule` yields an expression.
  SymExpr substitute(const std::function<std::optional<SymExpr>(JetIndex)>& rule) const;

  std::string to_string() const;

 private:
  void add_term(const Key& key, const YPoly& poly);
  TermMap terms_;
};

}  // namespace filmflow

#endif  // FILMFLOW_SYMBOLIC_HPP_
