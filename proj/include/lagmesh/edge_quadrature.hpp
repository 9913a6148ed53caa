#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include "lagmesh/errors.hpp"
#include "lagmesh/fields.hpp"
#include "lagmesh/vec2.hpp"

namespace lagmesh {

/// Segment quadratures of algebraic precision 3.
enum class QuadratureRule {
  Lobatto3,   ///< a, (a+b)/2, b with weights 1/6, 4/6, 1/6
  Legendre2,  ///< two Gauss points with weights 1/2, 1/2
};

std::string_view to_string(QuadratureRule rule);
/// Accepts "lobatto" / "legendre" (case-sensitive). Throws InvalidConfiguration.
QuadratureRule parse_quadrature_rule(std::string_view s);

/// Linear profile on [a,b] with the secant slope of v and integral S_target.
/// Both endpoints move by the same shift `delta_s`.
struct ConservativeLinearization {
  double va_prime = 0.0;
  double vb_prime = 0.0;
  double delta_s = 0.0;
  double s_target = 0.0;
};

/// Throws DegenerateGeometry when b <= a.
ConservativeLinearization linearize_conservative(double va, double vb, double s_target, double a,
                                                 double b);

namespace detail {
inline constexpr double kInvTwoSqrt3 = 0.28867513459481288225;  // 1/(2 sqrt 3)

inline void require_interval(double a, double b) {
  if (!(b > a)) throw DegenerateGeometry("quadrature interval is empty or reversed");
}
}  // namespace detail

/// Integral of `f` over [a,b] by `rule`.
template <class F>
  requires std::invocable<F, double>
double segment_integral(QuadratureRule rule, F&& f, double a, double b) {
  detail::require_interval(a, b);
  const double len = b - a;
  const double mid = 0.5 * (a + b);
  switch (rule) {
    case QuadratureRule::Lobatto3:
      return len * (f(a) + 4.0 * f(mid) + f(b)) / 6.0;
    case QuadratureRule::Legendre2: {
      const double off = len * detail::kInvTwoSqrt3;
      return len * 0.5 * (f(mid - off) + f(mid + off));
    }
  }
  return 0.0;
}

/// Endpoint value at `from` of the area-conservative linearization of `u`
/// along the chord from -> to, evaluated componentwise with the closed-form
/// weights of `rule`:
///   Lobatto3:  2/3 u(a) + 2/3 u(mid) - 1/3 u(b)
///   Legendre2: 1/2 u(a) + 1/2 u(t1) + 1/2 u(t2) - 1/2 u(b)
/// Throws DegenerateGeometry when the endpoints coincide.
Vec2 corrected_endpoint_velocity(QuadratureRule rule, const VelocityField& u, const Vec2& from,
                                 const Vec2& to);

}  // namespace lagmesh
