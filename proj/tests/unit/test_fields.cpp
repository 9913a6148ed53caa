#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lagmesh/fields.hpp"

namespace lagmesh {
namespace {

TEST(IsentropicVortex, PointValues) {
  EXPECT_EQ(isentropic_vortex_velocity(0, 0), (Vec2{0, 0}));
  const Vec2 u = isentropic_vortex_velocity(1, 0);
  EXPECT_EQ(u.x, 0.0);
  EXPECT_NEAR(u.y, 5.0 / (2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(u.y, 0.7957747, 1e-7);
  EXPECT_LT(norm(isentropic_vortex_velocity(10, 10)), 1e-40);
}

TEST(IsentropicVortex, OddSymmetry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 500; ++i) {
    const double x = d(rng), y = d(rng);
    EXPECT_EQ(isentropic_vortex_velocity(-x, -y), -isentropic_vortex_velocity(x, y));
  }
}

TEST(TaylorGreen, PointValues) {
  const Vec2 c = taylor_green_velocity(0.5, 0.5);
  EXPECT_NEAR(c.x, 0.0, 1e-16);
  EXPECT_NEAR(c.y, 0.0, 1e-16);
  const Vec2 q = taylor_green_velocity(0.25, 0.25);
  EXPECT_NEAR(q.x, 0.5, 1e-15);
  EXPECT_NEAR(q.y, -0.5, 1e-15);
  for (double y : {0.0, 0.1, 0.37, 0.5, 0.9}) {
    const Vec2 w = taylor_green_velocity(0.0, y);
    EXPECT_EQ(w.x, 0.0);
    EXPECT_NEAR(w.y, -std::sin(std::numbers::pi * y), 1e-15);
  }
}

TEST(VelocityField, VariantsDispatch) {
  EXPECT_EQ(VelocityField::constant({1, 2})(3, 4), (Vec2{1, 2}));
  EXPECT_EQ(VelocityField::rotation()(1, 0), (Vec2{0, 1}));
  EXPECT_EQ(VelocityField::affine({{1, 2}, 3, 4, 5, 6})(1, 1), (Vec2{8, 13}));
  EXPECT_EQ(VelocityField::custom([](const Vec2& p) { return 2.0 * p; })(1, 2), (Vec2{2, 4}));
  EXPECT_EQ(VelocityField::taylor_green()(0.25, 0.25), taylor_green_velocity(0.25, 0.25));
  EXPECT_EQ(VelocityField::isentropic_vortex().name(), "isentropic");
}

TEST(NumericalDivergence, SimpleFields) {
  EXPECT_EQ(numerical_divergence(VelocityField::constant({3, -1}), 0.3, 0.4, 1e-5), 0.0);
  const auto radial = VelocityField::custom([](const Vec2& p) { return p; });
  EXPECT_NEAR(numerical_divergence(radial, 0.7, -0.2, 1e-5), 2.0, 1e-9);
}

TEST(NumericalDivergence, VortexFieldsAreSolenoidal) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> big(-10, 10), unit(0, 1);
  const auto iv = VelocityField::isentropic_vortex();
  const auto tg = VelocityField::taylor_green();
  for (int i = 0; i < 100; ++i) {
    EXPECT_LT(std::abs(numerical_divergence(iv, big(rng), big(rng), 1e-5)), 1e-8);
    EXPECT_LT(std::abs(numerical_divergence(tg, unit(rng), unit(rng), 1e-5)), 1e-8);
  }
}

}  // namespace
}  // namespace lagmesh
