#include <gtest/gtest.h>

#include <set>

#include "quadtor/modcurves.hpp"

using namespace quadtor;

namespace {

QuadElem q(long a) { return QuadElem(Rational(a)); }

std::set<std::string> cusp_strings(const std::string& label, long d) {
  std::set<std::string> out;
  for (const auto& P : mc_cusps_over_K(mc_entry(label), d).points) out.insert(P.str());
  return out;
}

std::vector<long> squarefree_range(long lo, long hi) {
  std::vector<long> out;
  for (long d = lo; d < hi; ++d)
    if (is_squarefree(d)) out.push_back(d);
  return out;
}

}  // namespace

TEST(ModCurves, CatalogHasEightEntries) {
  const auto& c = mc_catalog();
  ASSERT_EQ(c.size(), 8u);
  EXPECT_EQ(mc_entry("X1_11").equation, "y^2 - y = x^3 - x^2");
  EXPECT_EQ(mc_entry("X1_11").kind, ModelKind::Elliptic);
  EXPECT_EQ(mc_entry("X1_16").kind, ModelKind::Hyperelliptic);
  EXPECT_EQ(mc_entry("X1_16").screen, Screen::None);
  EXPECT_EQ(mc_entry("X1_16").f, poly_q({0, 1}) * poly_q({1, 0, 1}) * poly_q({-1, 2, 1}));
  EXPECT_EQ(mc_entry("X1_13").screen, Screen::Screen13);
  EXPECT_EQ(mc_entry("X1_18").screen, Screen::Screen18);
  EXPECT_THROW(mc_entry("X1_17"), std::invalid_argument);
  EXPECT_EQ(mc_entry_for({2, 12})->label, "X1_2_12");
  EXPECT_EQ(mc_entry_for({1, 7}), nullptr);
}

TEST(ModCurves, ModelsMatchEquations) {
  EllipticCurveK E = mc_entry("X1_14").elliptic();
  // y^2 + xy + y = x^3 - x at (1, 0)
  EXPECT_TRUE(E.on_curve(ECPointK::affine(q(1), q(0))));
  EllipticCurveK F = mc_entry("X1_2_12").elliptic();
  EXPECT_TRUE(F.on_curve(ECPointK::affine(q(1), q(1))));
  EXPECT_THROW(mc_entry("X1_13").elliptic(), std::logic_error);
  EXPECT_EQ(mc_entry("X1_18").hyper().infinity_points(), 2);
}

TEST(ModCurves, TwentySixGroups) {
  EXPECT_EQ(torsion_groups().size(), 26u);
  EXPECT_EQ(parse_group("Z/2 + Z/10"), (TorsionGroupId{2, 10}));
  EXPECT_EQ(parse_group("2x12"), (TorsionGroupId{2, 12}));
  EXPECT_EQ(parse_group("16"), (TorsionGroupId{1, 16}));
  EXPECT_THROW(parse_group("17"), std::invalid_argument);
  EXPECT_EQ((TorsionGroupId{3, 6}).str(), "Z/3 + Z/6");
}

TEST(ModCurves, CuspSetsOverQsqrt17) {
  EXPECT_EQ(cusp_strings("X1_15", 17), (std::set<std::string>{"inf", "(0, 0)", "(0, -1)", "(-1, 0)"}));
  EXPECT_EQ(cusp_strings("X1_16", 17),
            (std::set<std::string>{"inf", "(0, 0)", "(1, 2)", "(1, -2)", "(-1, 2)", "(-1, -2)"}));
  EXPECT_EQ(cusp_strings("X1_18", 17),
            (std::set<std::string>{"inf+", "inf-", "(0, 1)", "(0, -1)", "(-1, 1)", "(-1, -1)"}));
  EXPECT_EQ(cusp_strings("X1_13", 17),
            (std::set<std::string>{"inf+", "inf-", "(0, 1)", "(0, -1)", "(1, 1)", "(1, -1)"}));
}

TEST(ModCurves, IrrationalCusps) {
  // x^2 - 2x - 1 and x^2 + 2x - 1 split over Q(sqrt 2)
  auto S = mc_cusps_over_K(mc_entry("X1_16"), 2);
  EXPECT_GT(S.size(), 6u);
  auto T = mc_cusps_over_K(mc_entry("X1_2_10"), 5);
  EXPECT_EQ(T.size(), 12u);
  auto U = mc_cusps_over_K(mc_entry("X1_2_12"), 3);
  EXPECT_EQ(U.size(), 8u);
}

TEST(ModCurves, CuspsLieOnModelsAndGrowWithField) {
  for (const auto& e : mc_catalog()) {
    auto base = mc_cusps_over_K(e, 0);
    for (long d : squarefree_range(2, 40)) {
      auto S = mc_cusps_over_K(e, d);
      for (const auto& P : base.points) {
        CuspPoint Pd = P;
        Pd.x = P.x.in_field(d);
        Pd.y = P.y.in_field(d);
        EXPECT_TRUE(S.contains(Pd)) << e.label << " " << d << " " << P.str();
      }
      for (const auto& P : S.points) {
        if (P.kind != CuspPoint::Kind::Affine) continue;
        EXPECT_TRUE(e.cusp_x.eval(P.x).is_zero());
        if (e.kind == ModelKind::Elliptic) {
          EXPECT_TRUE(e.elliptic(d).on_curve(ECPointK::affine(P.x, P.y)));
        } else {
          EXPECT_TRUE(e.hyper().on_curve(P.x, P.y));
        }
      }
    }
  }
}

TEST(ModCurves, EllipticCuspsAreTorsion) {
  for (const auto& e : mc_catalog()) {
    if (e.kind != ModelKind::Elliptic) continue;
    for (long d : {2L, 3L, 5L, 17L}) {
      EllipticCurveK E = e.elliptic(d);
      for (const auto& P : mc_cusps_over_K(e, d).points) {
        ECPointK Q = P.kind == CuspPoint::Kind::Affine ? ECPointK::affine(P.x, P.y) : ECPointK::infinity();
        EXPECT_TRUE(ec_point_order(E, Q, 24).has_value()) << e.label << " " << P.str();
      }
    }
  }
}

TEST(ModCurves, Screens) {
  const auto& s13 = mc_entry("X1_13");
  const auto& s18 = mc_entry("X1_18");
  std::vector<long> pass13, pass18;
  for (long d : squarefree_range(2, 100)) {
    if (mc_screen(s13, d).pass) pass13.push_back(d);
    if (mc_screen(s18, d).pass) pass18.push_back(d);
  }
  EXPECT_EQ(pass13, (std::vector<long>{17, 33, 41, 57, 65, 73, 89, 97}));
  EXPECT_EQ(pass18, (std::vector<long>{33, 57, 73, 97}));
  EXPECT_FALSE(mc_screen(s13, 15).pass);
  EXPECT_TRUE(mc_screen(s18, -3).pass);
  EXPECT_FALSE(mc_screen(s18, -7).pass);
  EXPECT_TRUE(mc_screen(mc_entry("X1_11"), 2).pass);
  EXPECT_THROW(mc_screen(s13, 1), std::invalid_argument);
  EXPECT_THROW(mc_screen(s13, 12), std::invalid_argument);
  for (long d : squarefree_range(2, 100))
    if (is_squarefree(d + 24)) EXPECT_EQ(mc_screen(s18, d).pass, mc_screen(s18, d + 24).pass) << d;
}
