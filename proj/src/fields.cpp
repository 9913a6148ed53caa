#include "lagmesh/fields.hpp"

#include <cmath>
#include <numbers>

namespace lagmesh {

Vec2 isentropic_vortex_velocity(double x, double y) {
  const double f = 5.0 / (2.0 * std::numbers::pi) * std::exp(0.5 * (1.0 - x * x - y * y));
  return {-y * f, x * f};
}

Vec2 taylor_green_velocity(double x, double y) {
  const double px = std::numbers::pi * x;
  const double py = std::numbers::pi * y;
  return {std::sin(px) * std::cos(py), -std::cos(px) * std::sin(py)};
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Vec2 VelocityField::operator()(const Vec2& p) const {
  return std::visit(
      Overloaded{
          [&](const IsentropicVortex&) { return isentropic_vortex_velocity(p.x, p.y); },
          [&](const TaylorGreen&) { return taylor_green_velocity(p.x, p.y); },
          [&](const Constant& c) { return c.value; },
          [&](const Rotation&) { return Vec2{-p.y, p.x}; },
          [&](const Affine& a) {
            return Vec2{a.offset.x + a.ux_x * p.x + a.ux_y * p.y,
                        a.offset.y + a.uy_x * p.x + a.uy_y * p.y};
          },
          [&](const Custom& c) { return c.sampler(p); },
      },
      v_);
}

std::string VelocityField::name() const {
  return std::visit(Overloaded{
                        [](const IsentropicVortex&) { return std::string("isentropic"); },
                        [](const TaylorGreen&) { return std::string("taylor-green"); },
                        [](const Constant&) { return std::string("constant"); },
                        [](const Rotation&) { return std::string("rotation"); },
                        [](const Affine&) { return std::string("affine"); },
                        [](const Custom&) { return std::string("custom"); },
                    },
                    v_);
}

double numerical_divergence(const VelocityField& field, double x, double y, double eps) {
  const double dux = field(x + eps, y).x - field(x - eps, y).x;
  const double duy = field(x, y + eps).y - field(x, y - eps).y;
  return dux / (2.0 * eps) + duy / (2.0 * eps);
}

}  // namespace lagmesh
