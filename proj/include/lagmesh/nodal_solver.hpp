#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lagmesh/edge_quadrature.hpp"
#include "lagmesh/fields.hpp"
#include "lagmesh/mesh.hpp"

namespace lagmesh {

/// Symmetric 2x2 matrix.
struct Mat2Sym {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  Vec2 operator*(const Vec2& v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
  double trace() const { return xx + yy; }
  double det() const { return xx * yy - xy * xy; }
};

/// Per-node weighted least-squares system M u = b with
/// M = sum_k w l_k n_k n_k^T and b = sum_k w l_k n_k (n_k . v_k).
struct NodalSystem {
  Mat2Sym m;
  Vec2 b;
};

/// Nodal velocities u*_q and their deviation from the field at the node,
/// correction_q = u*_q - u(x_q).
struct NodalVelocityField {
  std::vector<Vec2> velocity;
  std::vector<Vec2> correction;
};

/// How boundary nodes are treated after the nodal solve.
enum class BoundaryMode {
  Free,      ///< solved velocity used as-is
  Slide,     ///< normal component removed on sides, corners held fixed
  Pin,       ///< boundary nodes held fixed
  Periodic,  ///< experimental: stencils wrap across opposite sides
};

std::string_view to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(std::string_view s);

/// Which neighbors take part in a node's least-squares stencil.
enum class Stencil {
  Bounded,       ///< mesh neighbors only (2-4 edges)
  PeriodicWrap,  ///< boundary nodes also see the node one row/column in
                 ///< from the opposite side, shifted by the domain extent
};

inline Stencil stencil_for(BoundaryMode mode) {
  return mode == BoundaryMode::Periodic ? Stencil::PeriodicWrap : Stencil::Bounded;
}

/// Neighbor positions of node q under `stencil`. Returns the count written.
std::size_t node_stencil(const QuadMesh& mesh, NodeId q, Stencil stencil,
                         std::array<Vec2, 4>& neighbor_positions);

/// `edge_weight` is the per-edge impedance factor; it is 1 for every
/// kinematic problem handled here. Throws ContractViolation when the span
/// sizes differ, DegenerateGeometry on a zero-length edge.
NodalSystem assemble_nodal_system(const Vec2& x_q, std::span<const Vec2> neighbor_positions,
                                  std::span<const Vec2> edge_velocities, double edge_weight = 1.0);

/// Mesh-neighbor overload; edge_velocities[k] belongs to node_neighbors(q)[k].
NodalSystem assemble_nodal_system(const QuadMesh& mesh, NodeId q,
                                  std::span<const Vec2> edge_velocities);

/// Closed-form 2x2 solve. Throws SingularSystem (carrying `node`) when
/// det(M) < 1e-14 (trace(M)/2)^2, i.e. the incident normals do not span the
/// plane.
Vec2 solve_nodal_system(const NodalSystem& sys, NodeId node = 0);

/// |M u - b| / (|M| |u| + |b|), with |M| the Frobenius norm. Zero for an
/// all-zero system.
double normal_equation_residual(const NodalSystem& sys, const Vec2& u);

/// sum_k l_k (u . n_k - n_k . v_k)^2, the functional minimized by the solve.
double least_squares_objective(const Vec2& x_q, std::span<const Vec2> neighbor_positions,
                               std::span<const Vec2> edge_velocities, const Vec2& u);

/// Corrected nodal velocities for every node: edge velocities from
/// corrected_endpoint_velocity (node first), then assemble and solve.
/// Singular systems are rethrown with the node position in the message.
NodalVelocityField reconstruct_velocities(const QuadMesh& mesh, const VelocityField& u,
                                          QuadratureRule rule,
                                          Stencil stencil = Stencil::Bounded);

/// Interior nodes are never modified.
NodalVelocityField apply_boundary_constraint(const QuadMesh& mesh, NodalVelocityField field,
                                             BoundaryMode mode);

}  // namespace lagmesh
