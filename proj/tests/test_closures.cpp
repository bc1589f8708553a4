#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "filmflow/closures.hpp"
#include "support/generators.hpp"

namespace filmflow {
namespace {

using FC = FieldComponent;

constexpr ParamPowers kCot{0, 1, 0, 0};
constexpr ParamPowers kWeber{0, 0, 1, 0};
constexpr ParamPowers kWeberDelta{0, 0, 1, 1};

std::vector<std::string> sorted_lines(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

/// Parses one golden line back into exact rationals so the comparison does not
/// depend on formatting.
struct GoldenTerm {
  std::string head;
  std::string monomial;
  std::vector<Rational> coeffs;
  auto operator<=>(const GoldenTerm&) const = default;
};

std::vector<GoldenTerm> parse_terms(const std::vector<std::string>& lines) {
  std::vector<GoldenTerm> out;
  for (const auto& line : lines) {
    const auto bar1 = line.find('|');
    const auto bar2 = line.find('|', bar1 + 1);
    GoldenTerm t;
    t.head = line.substr(0, bar1);
    t.monomial = line.substr(bar1 + 1, bar2 - bar1 - 1);
    std::istringstream coeffs(line.substr(bar2 + 1));
    for (std::string c; coeffs >> c;) t.coeffs.push_back(Rational::parse(c));
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

class ClosureGolden : public ::testing::TestWithParam<Regime> {};

TEST_P(ClosureGolden, LiteratureTableMatchesGoldenFile) {
  const Regime r = GetParam();
  const std::string path =
      std::string(FILMFLOW_TEST_DATA_DIR) + "/closure_golden_" + std::string(to_string(r)) + ".txt";
  std::ifstream file(path);
  ASSERT_TRUE(file) << path;
  std::istringstream ours(build_closure_table(r, ClosureVariant::Literature).canonical_text());
  EXPECT_EQ(parse_terms(sorted_lines(ours)), parse_terms(sorted_lines(file)));
}

INSTANTIATE_TEST_SUITE_P(AllRegimes, ClosureGolden,
                         ::testing::Values(Regime::I, Regime::II, Regime::III, Regime::IV),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(ClosureTable, OrderZeroFields) {
  const ClosureTable t = build_closure_table(Regime::III);
  EXPECT_EQ(t.part(FC::U, 0), SymExpr::jet({0, 0}, YPoly(std::vector<Rational>{0, 2})));
  EXPECT_EQ(t.part(FC::V, 0), SymExpr::jet({1, 0}, YPoly(std::vector<Rational>{0, 0, -1})));
  EXPECT_EQ(t.part(FC::P, 0), kCot * SymExpr::eta());
}

TEST(ClosureTable, TruncationOrders) {
  EXPECT_EQ(build_closure_table(Regime::I).truncation_order(), 1);
  EXPECT_EQ(build_closure_table(Regime::II).truncation_order(), 1);
  EXPECT_EQ(build_closure_table(Regime::III).truncation_order(), 2);
  EXPECT_EQ(build_closure_table(Regime::IV).truncation_order(), 2);
  EXPECT_THROW(build_closure_table(Regime::KdVKS), RegimeError);
  EXPECT_THROW(build_closure_table(Regime::KdVBurgers), RegimeError);
}

TEST(ClosureTable, RegimesOneAndThreeDifferOnlyInPressureCapillaryTerm) {
  const ClosureTable a = build_closure_table(Regime::I);
  const ClosureTable b = build_closure_table(Regime::III);
  for (int k = 0; k <= 1; ++k) {
    EXPECT_EQ(a.part(FC::U, k), b.part(FC::U, k));
    EXPECT_EQ(a.part(FC::V, k), b.part(FC::V, k));
  }
  EXPECT_EQ(a.part(FC::P, 0), b.part(FC::P, 0));
  const SymExpr diff = a.part(FC::P, 1) - b.part(FC::P, 1);
  EXPECT_EQ(diff, kWeberDelta * SymExpr::jet({2, 0}, YPoly(Rational(-1))));
}

TEST(ClosureTable, VariantsDifferOnlyInPressureAndAgreeAtSurface) {
  const ClosureTable lit = build_closure_table(Regime::III, ClosureVariant::Literature);
  const ClosureTable red = build_closure_table(Regime::III, ClosureVariant::Rederived);
  for (int k = 0; k <= 2; ++k) {
    EXPECT_EQ(lit.part(FC::U, k), red.part(FC::U, k));
    EXPECT_EQ(lit.part(FC::V, k), red.part(FC::V, k));
  }
  const SymExpr diff = lit.part(FC::P, 2) - red.part(FC::P, 2);
  EXPECT_FALSE(diff.is_zero());
  EXPECT_TRUE(diff.at_y(Rational(1)).is_zero());
}

TEST(ClosureTable, NoSlipIsStructural) {
  for (Regime r : testing::closure_regimes()) {
    for (const auto& term : build_closure_table(r).terms()) {
      if (term.component == FC::P) continue;
      EXPECT_EQ(term.poly.coeff(0), Rational(0)) << to_string(r);
    }
  }
}

TEST(ClosureTable, CoefficientwiseIncompressibility) {
  for (Regime r : testing::closure_regimes()) {
    for (auto variant : {ClosureVariant::Literature, ClosureVariant::Rederived}) {
      const ClosureTable t = build_closure_table(r, variant);
      for (int k = 0; k <= t.truncation_order(); ++k) {
        EXPECT_TRUE((t.part(FC::U, k).d_dx() + t.part(FC::V, k).d_dy()).is_zero())
            << to_string(r) << " order " << k;
      }
    }
  }
}

TEST(ClosureTable, AssembledCarriesDeltaWeights) {
  const ClosureTable t = build_closure_table(Regime::III);
  const SymExpr u = t.assembled(FC::U);
  EXPECT_EQ(u.delta_coefficient(0), t.part(FC::U, 0));
  EXPECT_EQ(u.max_delta_power(), 2);
  EXPECT_EQ(u.max_t_order(), 2);
}

TEST(ClosureTable, OrderOneSurfaceVelocityCoefficient) {
  // Coefficient of R eta_t in u_1 at the surface: 1/3 - 1.
  const SymExpr at1 = build_closure_table(Regime::III).part(FC::U, 1).at_y(Rational(1));
  const auto it = at1.terms().find({ParamPowers{1, 0, 0, 0}, JetMonomial{{0, 1}}});
  ASSERT_NE(it, at1.terms().end());
  EXPECT_EQ(it->second, YPoly(Rational(-2, 3)));
}

// The closures solve the long-wave boundary-value problems order by order. These
// checks rebuild the equations from the base flow 2y - y^2 and the lower orders.

const YPoly kBase(std::vector<Rational>{0, 2, -1});
const ParamPowers kR{1, 0, 0, 0};

TEST(ClosureEquations, OrderOneTangentialMomentum) {
  const ClosureTable t = build_closure_table(Regime::III);
  const SymExpr& u0 = t.part(FC::U, 0);
  const SymExpr& v0 = t.part(FC::V, 0);
  const SymExpr rhs = kR * (u0.d_dt() + kBase * u0.d_dx() + kBase.derivative() * v0) +
                      YPoly(Rational(2)) * t.part(FC::P, 0).d_dx();
  EXPECT_EQ(t.part(FC::U, 1).d_dy().d_dy(), rhs);
}

TEST(ClosureEquations, OrderOneNormalMomentum) {
  const ClosureTable t = build_closure_table(Regime::III);
  EXPECT_EQ(YPoly(Rational(2)) * t.part(FC::P, 1).d_dy(), t.part(FC::V, 0).d_dy().d_dy());
}

TEST(ClosureEquations, TangentialStressAtSurface) {
  const ClosureTable t = build_closure_table(Regime::III);
  const Rational one(1);
  const SymExpr eta = SymExpr::eta();
  EXPECT_EQ(t.part(FC::U, 0).d_dy().at_y(one), YPoly(Rational(2)) * eta);
  EXPECT_EQ(t.part(FC::U, 1).d_dy().at_y(one), YPoly(Rational(4)) * (eta * eta));
  EXPECT_EQ((t.part(FC::U, 2).d_dy() + t.part(FC::V, 0).d_dx()).at_y(one),
            YPoly(Rational(2)) * (eta * eta * eta));
}

TEST(ClosureEquations, NormalStressAtSurface) {
  for (auto variant : {ClosureVariant::Literature, ClosureVariant::Rederived}) {
    const ClosureTable t = build_closure_table(Regime::III, variant);
    const Rational one(1);
    const SymExpr eta = SymExpr::eta();
    EXPECT_EQ(t.part(FC::P, 0).at_y(one), kCot * eta);
    EXPECT_EQ((t.part(FC::P, 1) - t.part(FC::V, 0).d_dy()).at_y(one), SymExpr());
    const SymExpr& u0 = t.part(FC::U, 0);
    const SymExpr h2 = YPoly(Rational(2)) * (eta * SymExpr::eta(1)) + SymExpr::eta(1) * u0 +
                       eta * u0.d_dx();
    const SymExpr capillary = kWeber * SymExpr::eta(2);
    EXPECT_TRUE((t.part(FC::P, 2) - t.part(FC::V, 1).d_dy() + capillary - h2).at_y(one).is_zero())
        << to_string(variant);
  }
}

TEST(ClosureEquations, CapillaryCorrectionsAreDivergenceFree) {
  const SymExpr u = SymExpr::jet({3, 0}, YPoly(std::vector<Rational>{0, 2, -1}));
  const SymExpr v = SymExpr::jet({4, 0}, YPoly(std::vector<Rational>{0, 0, -1, Rational(1, 3)}));
  EXPECT_TRUE((u.d_dx() + v.d_dy()).is_zero());
}

TEST(ClosureTable, CanonicalTextLineFormat) {
  const std::string text = build_closure_table(Regime::I).canonical_text();
  EXPECT_NE(text.find("u 0 0 0 0 0 | 0,0 | 0 2\n"), std::string::npos);
  EXPECT_NE(text.find("p 1 0 0 1 1 | 2,0 | -1\n"), std::string::npos);
}

}  // namespace
}  // namespace filmflow
