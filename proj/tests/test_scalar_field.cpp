#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace torsionlab;
using torsionlab::testing::random_points;

TEST(ChartPoint, RejectsPolesAndNonFinite) {
  EXPECT_THROW(ChartPoint(0.0, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(ChartPoint(kPi, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(ChartPoint(-0.5, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(ChartPoint(1.0, std::nan(""), 0, 0), std::invalid_argument);
  EXPECT_THROW(ChartPoint(1.0, 0, INFINITY, 0), std::invalid_argument);
  EXPECT_NO_THROW(ChartPoint(1e-9, 0, 0, 0));
}

TEST(ChartPoint, ShiftedValidatesToo) {
  const ChartPoint p(0.1, 0, 0, 0);
  EXPECT_THROW((void)p.shifted(0, -0.2), std::invalid_argument);
  EXPECT_DOUBLE_EQ(p.shifted(2, 0.5).x(), 0.5);
}

TEST(GridSpec, DefaultGridShape) {
  const GridSpec g = default_grid();
  EXPECT_EQ(g.size(), 5u * 4u * 3u * 3u);
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 180u);
  EXPECT_DOUBLE_EQ(pts.front().theta(), 0.1);
  EXPECT_DOUBLE_EQ(pts.back().theta(), kPi - 0.1);
  for (const auto& p : pts) {
    EXPECT_LT(p.phi(), kTwoPi);
    EXPECT_LT(p.x(), kTwoPi);
  }
}

TEST(GridAxis, SingleSampleUsesMin) {
  GridAxis ax{0.3, 2.0, 1, true};
  ASSERT_EQ(ax.samples().size(), 1u);
  EXPECT_DOUBLE_EQ(ax.samples()[0], 0.3);
}

TEST(ScalarField, CotAtQuarterPi) {
  const ScalarField f = cot(theta_field());
  const ChartPoint p(kPi / 4, 0.3, 0.2, 0.1);
  EXPECT_NEAR(f.value(p), 1.0, 1e-15);
  EXPECT_NEAR(f.derivative(p, 0), -2.0, 1e-14);
  EXPECT_EQ(f.derivative(p, 1), 0.0);
}

TEST(ScalarField, ConstantHasZeroDerivative) {
  const ScalarField f = 5.0;
  const ChartPoint p = default_point();
  for (int m = 0; m < kDim; ++m) EXPECT_EQ(f.derivative(p, m), 0.0);
  EXPECT_TRUE(f.is_constant());
  EXPECT_TRUE(f.partial(0).is_zero());
}

TEST(ScalarField, SinDerivative) {
  const ScalarField f = sin(theta_field());
  EXPECT_NEAR(f.derivative(default_point(), 0), 0.5403023058681398, 1e-12);
}

TEST(ScalarField, RejectsBadAxis) {
  const ScalarField f = theta_field();
  EXPECT_THROW((void)f.derivative(default_point(), 4), std::invalid_argument);
  EXPECT_THROW((void)f.derivative(default_point(), -1), std::invalid_argument);
  EXPECT_THROW((void)ScalarField::coordinate(7), std::invalid_argument);
}

TEST(ScalarField, NestedPartials) {
  const ScalarField th = theta_field();
  const ScalarField f = sin(th) * x_field() * x_field();
  const ChartPoint p(0.7, 0.1, 1.5, 0.2);
  // d/dtheta d/dx of sin(theta) x^2 = 2 x cos(theta)
  EXPECT_NEAR(f.partial(2).partial(0).value(p), 2 * 1.5 * std::cos(0.7), 1e-14);
  // third theta derivative of sin is -cos
  EXPECT_NEAR(sin(th).partial(0).partial(0).partial(0).value(p), -std::cos(0.7), 1e-14);
  EXPECT_NEAR(sin(th).partial(0).partial(0).derivative(p, 0), -std::cos(0.7), 1e-14);
}

TEST(ScalarField, DependencyTracking) {
  const ScalarField f = sin(theta_field()) + 2.0 * y_field();
  EXPECT_TRUE(f.depends_on(0));
  EXPECT_FALSE(f.depends_on(1));
  EXPECT_FALSE(f.depends_on(2));
  EXPECT_TRUE(f.depends_on(3));
  EXPECT_TRUE(f.partial(1).is_zero());
}

TEST(ScalarField, ElementaryFunctionsMatchLibm) {
  const ChartPoint p(1.2, 0.4, 0.9, 2.5);
  const ScalarField th = theta_field(), y = y_field();
  EXPECT_NEAR(exp(th).value(p), std::exp(1.2), 1e-13);
  EXPECT_NEAR(log(y).value(p), std::log(2.5), 1e-15);
  EXPECT_NEAR(sqrt(y).derivative(p, 3), 0.5 / std::sqrt(2.5), 1e-15);
  EXPECT_NEAR((th / y).derivative(p, 3), -1.2 / (2.5 * 2.5), 1e-15);
  EXPECT_NEAR(cos(th).derivative(p, 0), -std::sin(1.2), 1e-15);
  EXPECT_NEAR((-th).value(p), -1.2, 0.0);
}

// AD against central differences for every field the built-in frame uses.
TEST(ScalarFieldProperty, FrameFieldsMatchFiniteDifferences) {
  const FrameSpec frame = build_s2xt2();
  const ConnectionCoeffs lc = levi_civita(frame);
  std::vector<ScalarField> fields;
  for (int i = 0; i < kDim; ++i)
    for (int m = 0; m < kDim; ++m) {
      fields.push_back(frame.vector_component(i, m));
      fields.push_back(frame.coframe_component(i, m));
    }
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        fields.push_back(frame.structure(k, i, j));
        fields.push_back(lc.levi_civita_part(k, i, j));
      }
  const double h = 1e-5;
  std::size_t cases = 0;
  for (const auto& p : random_points(100, 1234)) {
    for (const auto& f : fields) {
      for (int m = 0; m < kDim; ++m) {
        const double ad = f.derivative(p, m);
        const double fd = (f.value(p.shifted(m, h)) - f.value(p.shifted(m, -h))) / (2 * h);
        const double scale = std::max(1.0, std::abs(ad));
        ASSERT_LE(std::abs(ad - fd) / scale, 1e-6) << "axis " << m << " at " << p.to_string();
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 100u * fields.size() * 4u);
}
