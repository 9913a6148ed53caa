#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "lagmesh/vec2.hpp"

namespace lagmesh {

using NodeId = std::size_t;
using CellId = std::size_t;

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0;
  double x1 = 1.0;
  double y0 = 0.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
};

enum class NodeKind : std::uint8_t { Interior, Edge, Corner };

/// Sides of the domain a node lies on, as a bit set.
struct BoundarySides {
  static constexpr std::uint8_t kLeft = 1;
  static constexpr std::uint8_t kRight = 2;
  static constexpr std::uint8_t kBottom = 4;
  static constexpr std::uint8_t kTop = 8;

  std::uint8_t bits = 0;

  bool left() const { return (bits & kLeft) != 0; }
  bool right() const { return (bits & kRight) != 0; }
  bool bottom() const { return (bits & kBottom) != 0; }
  bool top() const { return (bits & kTop) != 0; }
  bool on_boundary() const { return bits != 0; }
  NodeKind kind() const;
};

/// Length and unit normal of a directed edge q -> q'. The normal is the edge
/// direction turned a quarter counterclockwise; reversing the endpoints
/// negates it.
struct EdgeGeom {
  double length = 0.0;
  Vec2 normal;
};

/// Structured quadrilateral mesh. Topology (cell->node, node->neighbor,
/// boundary tags) is shared and immutable; coordinates are per-instance, so
/// copying a mesh or calling `with_coords` is cheap relative to rebuilding.
///
/// Node (i,j) has index j*(nx+1)+i. Cell (i,j) has index j*nx+i and nodes
/// (i,j), (i+1,j), (i+1,j+1), (i,j+1), counterclockwise. Neighbors of a node
/// are listed east, north, west, south, skipping those outside the grid.
class QuadMesh {
 public:
  std::size_t nx() const { return topo_->nx; }
  std::size_t ny() const { return topo_->ny; }
  std::size_t num_nodes() const { return coords_.size(); }
  std::size_t num_cells() const { return topo_->nx * topo_->ny; }
  const Rect& domain() const { return topo_->domain; }

  /// Nominal spacing of the generating uniform grid along x and y.
  double hx() const { return domain().width() / static_cast<double>(nx()); }
  double hy() const { return domain().height() / static_cast<double>(ny()); }

  NodeId node_index(std::size_t i, std::size_t j) const { return j * (nx() + 1) + i; }
  CellId cell_index(std::size_t i, std::size_t j) const { return j * nx() + i; }

  const Vec2& position(NodeId q) const { return coords_[q]; }
  std::span<const Vec2> coords() const { return coords_; }

  /// Counterclockwise node list of cell `c`. Throws std::out_of_range.
  std::array<NodeId, 4> cell_nodes(CellId c) const;
  /// Edge-connected neighbors of node `q`. Throws std::out_of_range.
  std::span<const NodeId> node_neighbors(NodeId q) const;
  BoundarySides boundary(NodeId q) const;

  std::array<Vec2, 4> cell_vertices(CellId c) const;

  /// Each mesh edge once, as (lower index, higher index).
  std::span<const std::array<NodeId, 2>> edges() const { return topo_->edges; }

  /// Same topology with new coordinates. Size must match num_nodes().
  QuadMesh with_coords(std::vector<Vec2> coords) const;

  /// True when both meshes share the same connectivity object or have equal
  /// grid dimensions.
  bool same_topology(const QuadMesh& other) const;

  friend QuadMesh build_uniform_mesh(const Rect& domain, std::size_t nx, std::size_t ny);

 private:
  struct Topology {
    std::size_t nx = 0;
    std::size_t ny = 0;
    Rect domain;
    std::vector<std::size_t> neighbor_offsets;  // CSR, size num_nodes+1
    std::vector<NodeId> neighbors;
    std::vector<BoundarySides> sides;
    std::vector<std::array<NodeId, 2>> edges;
  };

  QuadMesh(std::shared_ptr<const Topology> topo, std::vector<Vec2> coords)
      : topo_(std::move(topo)), coords_(std::move(coords)) {}

  std::shared_ptr<const Topology> topo_;
  std::vector<Vec2> coords_;
};

/// Uniform nx-by-ny grid over `domain`. Throws InvalidConfiguration on zero
/// counts or a degenerate rectangle.
QuadMesh build_uniform_mesh(const Rect& domain, std::size_t nx, std::size_t ny);

/// Signed shoelace area of a quadrilateral; positive when counterclockwise.
double quad_signed_area(const std::array<Vec2, 4>& v);

/// Signed area of cell `c`. A nonpositive value means the cell is inverted.
double cell_area(const QuadMesh& mesh, CellId c);

/// Sum of signed cell areas.
double total_area(const QuadMesh& mesh);

/// Throws DegenerateGeometry when the endpoints coincide.
EdgeGeom edge_geometry(const Vec2& from, const Vec2& to);

double min_edge_length(const QuadMesh& mesh);

/// Largest distance between any two of the cell's four vertices.
double cell_diameter(const QuadMesh& mesh, CellId c);

/// Index of the first cell with nonpositive area, or num_cells() if none.
CellId find_inverted_cell(const QuadMesh& mesh);

/// Legacy-viewer-compatible text snapshot: "POINTS n", n lines "x y" with 17
/// significant digits, then "CELLS m" with four CCW node indices per line.
void write_snapshot(std::ostream& os, const QuadMesh& mesh);

/// Node coordinates and cell connectivity read back from a snapshot.
struct Snapshot {
  std::vector<Vec2> points;
  std::vector<std::array<NodeId, 4>> cells;
};

Snapshot read_snapshot(std::istream& is);

}  // namespace lagmesh
