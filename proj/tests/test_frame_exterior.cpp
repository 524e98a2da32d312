#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace torsionlab;
using namespace torsionlab::testing;

namespace {

FrameForm basis_form(IndexSet s) {
  FrameForm f(set_degree(s));
  f.set(s, 1.0);
  return f;
}

/// Random smooth coefficient built from a few fixed shapes.
ScalarField random_coefficient(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const ScalarField th = theta_field(), ph = phi_field(), x = x_field(), y = y_field();
  return u(rng) + u(rng) * sin(th) + u(rng) * cos(ph) * x + u(rng) * y * y + u(rng) * cos(th) * sin(x + y) +
         u(rng) * sin(2.0 * th) * cos(ph);
}

FrameForm random_form(int degree, std::mt19937& rng) {
  FrameForm f(degree);
  for (IndexSet s : f.slots()) f.set(s, random_coefficient(rng));
  return f;
}

}  // namespace

TEST(FrameExterior, WedgeOfCoframeElements) {
  const FrameForm e12 = wedge(FrameForm::basis({0}), FrameForm::basis({1}));
  EXPECT_EQ(e12.degree(), 2);
  EXPECT_EQ(e12[0b0011].constant_value(), 1.0);
  const FrameForm e21 = wedge(FrameForm::basis({1}), FrameForm::basis({0}));
  EXPECT_EQ(e21[0b0011].constant_value(), -1.0);
  EXPECT_TRUE(wedge(FrameForm::basis({2}), FrameForm::basis({2})).is_structurally_zero());
  EXPECT_TRUE(FrameForm::basis({0, 2, 0}).is_structurally_zero());
  EXPECT_EQ(FrameForm::basis({2, 0, 1})[0b0111].constant_value(), 1.0);
  EXPECT_EQ(FrameForm::basis({1, 0, 2})[0b0111].constant_value(), -1.0);
}

TEST(FrameExterior, Errors) {
  EXPECT_THROW(FrameForm(5), std::invalid_argument);
  EXPECT_THROW(wedge(FrameForm::basis({0, 1, 2}), FrameForm::basis({0, 1})), std::invalid_argument);
  EXPECT_THROW(FrameForm::basis({4}), std::invalid_argument);
  FrameForm two(2);
  EXPECT_THROW(two.set(0b0111, 1.0), std::invalid_argument);
  EXPECT_THROW(two + FrameForm(1), std::invalid_argument);
  const FrameSpec frame = build_s2xt2();
  EXPECT_THROW(exterior_derivative(FrameForm::basis({0, 1, 2, 3}), frame), std::invalid_argument);
  EXPECT_THROW(codifferential(FrameForm(0), frame), std::invalid_argument);
  GridSpec empty = default_grid();
  empty.axes[1].count = 0;
  EXPECT_THROW(check_harmonic(FrameForm::basis({0}), frame, empty), std::invalid_argument);
}

TEST(FrameExterior, HodgeOrientation) {
  const FrameForm s = hodge_star(FrameForm::basis({0, 1, 2}));
  EXPECT_EQ(s.degree(), 1);
  EXPECT_EQ(s[0b1000].constant_value(), 1.0);
  EXPECT_EQ(hodge_star(FrameForm::basis({0, 1, 3}))[0b0100].constant_value(), -1.0);
  FrameForm one(0);
  one.set(0, 1.0);
  EXPECT_EQ(hodge_star(one)[kVolumeSet].constant_value(), 1.0);
}

TEST(FrameExterior, DoubleStarSignLaw) {
  for (IndexSet s = 0; s <= kVolumeSet; ++s) {
    const int k = set_degree(s);
    const FrameForm ss = hodge_star(hodge_star(basis_form(s)));
    const double expected = (k * (4 - k)) % 2 ? -1.0 : 1.0;
    for (IndexSet t : ss.slots()) EXPECT_EQ(ss[t].constant_value(), t == s ? expected : 0.0) << set_label(s);
  }
}

TEST(FrameExterior, InnerProductAgainstStar) {
  for (IndexSet s = 0; s <= kVolumeSet; ++s)
    for (IndexSet t = 0; t <= kVolumeSet; ++t) {
      if (set_degree(s) != set_degree(t)) continue;
      const FrameForm a = basis_form(s), b = basis_form(t);
      const FrameForm lhs = wedge(a, hodge_star(b));
      EXPECT_EQ(lhs[kVolumeSet].constant_value(), inner_product(a, b).constant_value());
    }
}

TEST(FrameExterior, CoframeDerivatives) {
  const FrameSpec frame = build_s2xt2();
  const ChartPoint p(kPi / 3, 0.5, 0.5, 0.5);
  EXPECT_TRUE(exterior_derivative(FrameForm::basis({0}), frame).is_structurally_zero());
  // e2 = sin(theta) dphi, so d e2 = cot(theta) e1 ^ e2
  const FrameForm de2 = exterior_derivative(FrameForm::basis({1}), frame);
  EXPECT_NEAR(de2[0b0011].value(p), kCotPi3, 1e-15);
  EXPECT_TRUE(exterior_derivative(FrameForm::basis({2}), frame).is_structurally_zero());
}

TEST(FrameExterior, CodifferentialExamples) {
  const FrameSpec frame = build_s2xt2();
  const ChartPoint p(kPi / 4, 0.0, 0.0, 0.0);
  EXPECT_LT(codifferential(FrameForm::basis({2}), frame).max_abs(p), 1e-15);
  // delta e1 = -cot(theta) with delta = -*d*
  EXPECT_NEAR(codifferential(FrameForm::basis({0}), frame)[0].value(p), -1.0, 1e-15);
}

TEST(FrameExterior, HarmonicityExamples) {
  const FrameSpec frame = build_s2xt2();
  const GridSpec grid = default_grid();
  FrameForm omega(3);
  omega.set(0b0111, 1.0);
  omega.set(0b1011, 1.0);
  const auto h = check_harmonic(omega, frame, grid);
  EXPECT_LT(h.d_residual, 1e-9);
  EXPECT_LT(h.delta_residual, 1e-9);
  EXPECT_TRUE(h.harmonic(1e-9));

  const FrameForm alpha = FrameForm::basis({0, 2}, cos(theta_field()));
  const auto ha = check_harmonic(alpha, frame, grid);
  EXPECT_LT(ha.d_residual, 1e-9);
  EXPECT_GT(ha.delta_residual, 0.1);

  const auto he1 = check_harmonic(FrameForm::basis({0}), frame, grid);
  EXPECT_EQ(he1.d_residual, 0.0);
  EXPECT_NEAR(he1.delta_residual, cot(0.1), 1e-12);  // sup of |cot theta| on the clipped grid
}

TEST(FrameExteriorProperty, LeibnizRule) {
  const FrameSpec frame = build_s2xt2();
  std::mt19937 rng(2024);
  const auto pts = random_points(4, 11);
  int cases = 0;
  for (int ka = 0; ka <= 3; ++ka)
    for (int kb = 0; ka + kb <= 3; ++kb) {
      for (int trial = 0; trial < 3; ++trial) {
        const FrameForm a = random_form(ka, rng), b = random_form(kb, rng);
        const FrameForm lhs = exterior_derivative(wedge(a, b), frame);
        const FrameForm da_b = wedge(exterior_derivative(a, frame), b);
        const FrameForm a_db = wedge(a, exterior_derivative(b, frame));
        const FrameForm rhs = (ka % 2) ? da_b - a_db : da_b + a_db;
        for (const auto& p : pts) ASSERT_LT((lhs - rhs).max_abs(p), 1e-9) << ka << " " << kb;
        ++cases;
      }
    }
  EXPECT_EQ(cases, 30);
}

TEST(FrameExteriorProperty, DSquaredAndDeltaSquaredVanish) {
  const FrameSpec frame = build_s2xt2();
  std::mt19937 rng(77);
  const auto pts = default_grid().points();
  for (int k = 0; k <= 2; ++k) {
    for (int trial = 0; trial < 2; ++trial) {
      const FrameForm a = random_form(k, rng);
      const FrameForm dd = exterior_derivative(exterior_derivative(a, frame), frame);
      ASSERT_LT(sup_norm(dd, pts), 1e-9) << "degree " << k;
    }
  }
  for (int k = 2; k <= 4; ++k) {
    for (int trial = 0; trial < 2; ++trial) {
      const FrameForm a = random_form(k, rng);
      const FrameForm dd = codifferential(codifferential(a, frame), frame);
      ASSERT_LT(sup_norm(dd, pts), 1e-9) << "degree " << k;
    }
  }
}
