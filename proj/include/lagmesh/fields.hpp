#pragma once

#include <functional>
#include <string>
#include <variant>

#include "lagmesh/mesh.hpp"
#include "lagmesh/vec2.hpp"

namespace lagmesh {

/// u(x,y) = 5/(2 pi) (-y, x) exp((1 - x^2 - y^2)/2), on [-10,10]^2.
Vec2 isentropic_vortex_velocity(double x, double y);

/// u(x,y) = (sin(pi x) cos(pi y), -cos(pi x) sin(pi y)), on [0,1]^2.
Vec2 taylor_green_velocity(double x, double y);

/// Time-independent analytic velocity field. Cheap to copy.
class VelocityField {
 public:
  struct IsentropicVortex {};
  struct TaylorGreen {};
  struct Constant {
    Vec2 value;
  };
  /// Solid-body rotation (-y, x) about the origin.
  struct Rotation {};
  /// u = offset + [[ux_x, ux_y], [uy_x, uy_y]] * (x, y).
  struct Affine {
    Vec2 offset;
    double ux_x = 0.0, ux_y = 0.0, uy_x = 0.0, uy_y = 0.0;
  };
  struct Custom {
    std::function<Vec2(const Vec2&)> sampler;
  };

  using Variant = std::variant<IsentropicVortex, TaylorGreen, Constant, Rotation, Affine, Custom>;

  VelocityField(Variant v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static VelocityField isentropic_vortex() { return {IsentropicVortex{}}; }
  static VelocityField taylor_green() { return {TaylorGreen{}}; }
  static VelocityField constant(Vec2 c) { return {Constant{c}}; }
  static VelocityField rotation() { return {Rotation{}}; }
  static VelocityField affine(Affine a) { return {a}; }
  static VelocityField custom(std::function<Vec2(const Vec2&)> f) { return {Custom{std::move(f)}}; }

  Vec2 operator()(const Vec2& p) const;
  Vec2 operator()(double x, double y) const { return (*this)({x, y}); }

  std::string name() const;
  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

/// Central-difference divergence with step `eps`.
double numerical_divergence(const VelocityField& field, double x, double y, double eps);

/// Domain on which each of the two vortex test problems is posed.
inline Rect isentropic_vortex_domain() { return {-10.0, 10.0, -10.0, 10.0}; }
inline Rect taylor_green_domain() { return {0.0, 1.0, 0.0, 1.0}; }

}  // namespace lagmesh
