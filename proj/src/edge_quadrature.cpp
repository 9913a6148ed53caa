#include "lagmesh/edge_quadrature.hpp"

namespace lagmesh {

std::string_view to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::Lobatto3:
      return "lobatto";
    case QuadratureRule::Legendre2:
      return "legendre";
  }
  return "unknown";
}

QuadratureRule parse_quadrature_rule(std::string_view s) {
  if (s == "lobatto") return QuadratureRule::Lobatto3;
  if (s == "legendre") return QuadratureRule::Legendre2;
  throw InvalidConfiguration("unknown quadrature rule '" + std::string(s) + "'");
}

ConservativeLinearization linearize_conservative(double va, double vb, double s_target, double a,
                                                 double b) {
  detail::require_interval(a, b);
  const double delta = s_target / (b - a) - 0.5 * (va + vb);
  return {va + delta, vb + delta, delta, s_target};
}

Vec2 corrected_endpoint_velocity(QuadratureRule rule, const VelocityField& u, const Vec2& from,
                                 const Vec2& to) {
  const Vec2 e = to - from;
  if (e.x == 0.0 && e.y == 0.0) throw DegenerateGeometry("edge endpoints coincide");
  const Vec2 mid = 0.5 * (from + to);
  switch (rule) {
    case QuadratureRule::Lobatto3:
      return (2.0 / 3.0) * u(from) + (2.0 / 3.0) * u(mid) - (1.0 / 3.0) * u(to);
    case QuadratureRule::Legendre2: {
      const Vec2 off = detail::kInvTwoSqrt3 * e;
      return 0.5 * (u(from) + u(mid - off) + u(mid + off) - u(to));
    }
  }
  return u(from);
}

}  // namespace lagmesh
