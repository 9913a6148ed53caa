#include "lagmesh/nodal_solver.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "lagmesh/errors.hpp"

namespace lagmesh {

std::string_view to_string(BoundaryMode mode) {
  switch (mode) {
    case BoundaryMode::Free:
      return "free";
    case BoundaryMode::Slide:
      return "slide";
    case BoundaryMode::Pin:
      return "pin";
    case BoundaryMode::Periodic:
      return "periodic";
  }
  return "unknown";
}

BoundaryMode parse_boundary_mode(std::string_view s) {
  if (s == "free") return BoundaryMode::Free;
  if (s == "slide") return BoundaryMode::Slide;
  if (s == "pin") return BoundaryMode::Pin;
  if (s == "periodic") return BoundaryMode::Periodic;
  throw InvalidConfiguration("unknown boundary mode '" + std::string(s) + "'");
}

std::size_t node_stencil(const QuadMesh& mesh, NodeId q, Stencil stencil,
                         std::array<Vec2, 4>& neighbor_positions) {
  std::size_t count = 0;
  for (NodeId p : mesh.node_neighbors(q)) neighbor_positions[count++] = mesh.position(p);
  if (stencil == Stencil::Bounded) return count;

  const BoundarySides sides = mesh.boundary(q);
  if (!sides.on_boundary()) return count;
  const std::size_t nnx = mesh.nx() + 1;
  const std::size_t i = q % nnx;
  const std::size_t j = q / nnx;
  const Rect& dom = mesh.domain();
  // A side of a single-cell axis would wrap onto the node itself.
  if (mesh.nx() > 1) {
    if (sides.left()) neighbor_positions[count++] = mesh.position(mesh.node_index(mesh.nx() - 1, j)) - Vec2{dom.width(), 0.0};
    if (sides.right()) neighbor_positions[count++] = mesh.position(mesh.node_index(1, j)) + Vec2{dom.width(), 0.0};
  }
  if (mesh.ny() > 1) {
    if (sides.bottom()) neighbor_positions[count++] = mesh.position(mesh.node_index(i, mesh.ny() - 1)) - Vec2{0.0, dom.height()};
    if (sides.top()) neighbor_positions[count++] = mesh.position(mesh.node_index(i, 1)) + Vec2{0.0, dom.height()};
  }
  return count;
}

NodalSystem assemble_nodal_system(const Vec2& x_q, std::span<const Vec2> neighbor_positions,
                                  std::span<const Vec2> edge_velocities, double edge_weight) {
  if (neighbor_positions.size() != edge_velocities.size()) {
    throw ContractViolation("nodal system: " + std::to_string(edge_velocities.size()) +
                            " edge velocities for " + std::to_string(neighbor_positions.size()) +
                            " incident edges");
  }
  NodalSystem sys;
  for (std::size_t k = 0; k < neighbor_positions.size(); ++k) {
    const EdgeGeom g = edge_geometry(x_q, neighbor_positions[k]);
    const double w = edge_weight * g.length;
    const Vec2& n = g.normal;
    sys.m.xx += w * n.x * n.x;
    sys.m.xy += w * n.x * n.y;
    sys.m.yy += w * n.y * n.y;
    sys.b += (w * dot(n, edge_velocities[k])) * n;
  }
  return sys;
}

NodalSystem assemble_nodal_system(const QuadMesh& mesh, NodeId q,
                                  std::span<const Vec2> edge_velocities) {
  std::array<Vec2, 4> pos{};
  const std::size_t count = node_stencil(mesh, q, Stencil::Bounded, pos);
  return assemble_nodal_system(mesh.position(q), std::span<const Vec2>(pos.data(), count),
                               edge_velocities);
}

Vec2 solve_nodal_system(const NodalSystem& sys, NodeId node) {
  const double det = sys.m.det();
  const double half_trace = 0.5 * sys.m.trace();
  if (!(det >= 1e-14 * half_trace * half_trace) || !(half_trace > 0.0)) {
    std::ostringstream msg;
    msg << "singular nodal system at node " << node << " (det=" << det
        << ", trace=" << sys.m.trace() << "): incident normals do not span the plane";
    throw SingularSystem(node, msg.str());
  }
  const double inv = 1.0 / det;
  return {inv * (sys.m.yy * sys.b.x - sys.m.xy * sys.b.y),
          inv * (sys.m.xx * sys.b.y - sys.m.xy * sys.b.x)};
}

double normal_equation_residual(const NodalSystem& sys, const Vec2& u) {
  const double m_norm =
      std::sqrt(sys.m.xx * sys.m.xx + 2.0 * sys.m.xy * sys.m.xy + sys.m.yy * sys.m.yy);
  const double scale = m_norm * norm(u) + norm(sys.b);
  if (scale == 0.0) return 0.0;
  return norm(sys.m * u - sys.b) / scale;
}

double least_squares_objective(const Vec2& x_q, std::span<const Vec2> neighbor_positions,
                               std::span<const Vec2> edge_velocities, const Vec2& u) {
  double f = 0.0;
  for (std::size_t k = 0; k < neighbor_positions.size(); ++k) {
    const EdgeGeom g = edge_geometry(x_q, neighbor_positions[k]);
    const double r = dot(u, g.normal) - dot(g.normal, edge_velocities[k]);
    f += g.length * r * r;
  }
  return f;
}

NodalVelocityField reconstruct_velocities(const QuadMesh& mesh, const VelocityField& u,
                                          QuadratureRule rule, Stencil stencil) {
  const std::size_t n = mesh.num_nodes();
  NodalVelocityField out;
  out.velocity.resize(n);
  out.correction.resize(n);

  std::array<Vec2, 4> pos{};
  std::array<Vec2, 4> vel{};
  for (NodeId q = 0; q < n; ++q) {
    const Vec2& xq = mesh.position(q);
    const std::size_t count = node_stencil(mesh, q, stencil, pos);
    for (std::size_t k = 0; k < count; ++k) vel[k] = corrected_endpoint_velocity(rule, u, xq, pos[k]);
    const NodalSystem sys = assemble_nodal_system(xq, std::span<const Vec2>(pos.data(), count),
                                                  std::span<const Vec2>(vel.data(), count));
    try {
      out.velocity[q] = solve_nodal_system(sys, q);
    } catch (const SingularSystem& e) {
      std::ostringstream msg;
      msg << e.what() << " at (" << xq.x << ", " << xq.y << ")";
      throw SingularSystem(q, msg.str());
    }
    out.correction[q] = out.velocity[q] - u(xq);
  }
  return out;
}

NodalVelocityField apply_boundary_constraint(const QuadMesh& mesh, NodalVelocityField field,
                                             BoundaryMode mode) {
  if (mode == BoundaryMode::Free || mode == BoundaryMode::Periodic) return field;
  for (NodeId q = 0; q < mesh.num_nodes(); ++q) {
    const BoundarySides s = mesh.boundary(q);
    if (!s.on_boundary()) continue;
    const Vec2 before = field.velocity[q];
    Vec2 after = before;
    if (mode == BoundaryMode::Pin || s.kind() == NodeKind::Corner) {
      after = {0.0, 0.0};
    } else {
      if (s.left() || s.right()) after.x = 0.0;
      if (s.bottom() || s.top()) after.y = 0.0;
    }
    field.velocity[q] = after;
    if (q < field.correction.size()) field.correction[q] += after - before;
  }
  return field;
}

}  // namespace lagmesh
