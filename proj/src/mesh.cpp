#include "lagmesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lagmesh/errors.hpp"

namespace lagmesh {

NodeKind BoundarySides::kind() const {
  const bool x_side = left() || right();
  const bool y_side = bottom() || top();
  if (x_side && y_side) return NodeKind::Corner;
  if (x_side || y_side) return NodeKind::Edge;
  return NodeKind::Interior;
}

std::array<NodeId, 4> QuadMesh::cell_nodes(CellId c) const {
  if (c >= num_cells()) throw std::out_of_range("cell index " + std::to_string(c) + " out of range");
  const std::size_t i = c % nx();
  const std::size_t j = c / nx();
  return {node_index(i, j), node_index(i + 1, j), node_index(i + 1, j + 1), node_index(i, j + 1)};
}

std::span<const NodeId> QuadMesh::node_neighbors(NodeId q) const {
  if (q >= num_nodes()) throw std::out_of_range("node index " + std::to_string(q) + " out of range");
  const auto begin = topo_->neighbor_offsets[q];
  const auto end = topo_->neighbor_offsets[q + 1];
  return std::span<const NodeId>(topo_->neighbors).subspan(begin, end - begin);
}

BoundarySides QuadMesh::boundary(NodeId q) const {
  if (q >= num_nodes()) throw std::out_of_range("node index " + std::to_string(q) + " out of range");
  return topo_->sides[q];
}

std::array<Vec2, 4> QuadMesh::cell_vertices(CellId c) const {
  const auto n = cell_nodes(c);
  return {coords_[n[0]], coords_[n[1]], coords_[n[2]], coords_[n[3]]};
}

QuadMesh QuadMesh::with_coords(std::vector<Vec2> coords) const {
  if (coords.size() != coords_.size()) {
    throw ContractViolation("coordinate array has " + std::to_string(coords.size()) +
                            " entries, mesh has " + std::to_string(coords_.size()) + " nodes");
  }
  return QuadMesh(topo_, std::move(coords));
}

bool QuadMesh::same_topology(const QuadMesh& other) const {
  return topo_ == other.topo_ || (nx() == other.nx() && ny() == other.ny());
}

QuadMesh build_uniform_mesh(const Rect& domain, std::size_t nx, std::size_t ny) {
  if (nx == 0 || ny == 0) {
    throw InvalidConfiguration("mesh needs at least one cell per axis (got " + std::to_string(nx) +
                               "x" + std::to_string(ny) + ")");
  }
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0)) {
    throw InvalidConfiguration("degenerate domain rectangle");
  }

  auto topo = std::make_shared<QuadMesh::Topology>();
  topo->nx = nx;
  topo->ny = ny;
  topo->domain = domain;

  const std::size_t nnx = nx + 1;
  const std::size_t nny = ny + 1;
  const std::size_t n_nodes = nnx * nny;
  const double hx = domain.width() / static_cast<double>(nx);
  const double hy = domain.height() / static_cast<double>(ny);

  std::vector<Vec2> coords(n_nodes);
  topo->sides.resize(n_nodes);
  topo->neighbor_offsets.reserve(n_nodes + 1);
  topo->neighbors.reserve(4 * n_nodes);
  topo->neighbor_offsets.push_back(0);

  for (std::size_t j = 0; j < nny; ++j) {
    for (std::size_t i = 0; i < nnx; ++i) {
      const NodeId q = j * nnx + i;
      // Pin the last row/column to the rectangle so it is reproduced exactly.
      coords[q].x = (i == nx) ? domain.x1 : domain.x0 + static_cast<double>(i) * hx;
      coords[q].y = (j == ny) ? domain.y1 : domain.y0 + static_cast<double>(j) * hy;

      BoundarySides s;
      if (i == 0) s.bits |= BoundarySides::kLeft;
      if (i == nx) s.bits |= BoundarySides::kRight;
      if (j == 0) s.bits |= BoundarySides::kBottom;
      if (j == ny) s.bits |= BoundarySides::kTop;
      topo->sides[q] = s;

      if (i < nx) topo->neighbors.push_back(q + 1);
      if (j < ny) topo->neighbors.push_back(q + nnx);
      if (i > 0) topo->neighbors.push_back(q - 1);
      if (j > 0) topo->neighbors.push_back(q - nnx);
      topo->neighbor_offsets.push_back(topo->neighbors.size());

      if (i < nx) topo->edges.push_back({q, q + 1});
      if (j < ny) topo->edges.push_back({q, q + nnx});
    }
  }

  return QuadMesh(std::move(topo), std::move(coords));
}

// Shoelace sum written as the cross product of the diagonals. It only sees
// coordinate differences, so translating a cell does not cost precision.
double quad_signed_area(const std::array<Vec2, 4>& v) { return 0.5 * cross(v[2] - v[0], v[3] - v[1]); }

double cell_area(const QuadMesh& mesh, CellId c) { return quad_signed_area(mesh.cell_vertices(c)); }

double total_area(const QuadMesh& mesh) {
  double sum = 0.0;
  for (CellId c = 0; c < mesh.num_cells(); ++c) sum += cell_area(mesh, c);
  return sum;
}

EdgeGeom edge_geometry(const Vec2& from, const Vec2& to) {
  const Vec2 e = to - from;
  const double l = norm(e);
  if (!(l > 0.0)) throw DegenerateGeometry("edge endpoints coincide");
  return {l, (1.0 / l) * rotate_left(e)};
}

double min_edge_length(const QuadMesh& mesh) {
  double h = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : mesh.edges()) h = std::min(h, norm(mesh.position(b) - mesh.position(a)));
  return h;
}

double cell_diameter(const QuadMesh& mesh, CellId c) {
  const auto v = mesh.cell_vertices(c);
  double d = 0.0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) d = std::max(d, norm(v[b] - v[a]));
  return d;
}

CellId find_inverted_cell(const QuadMesh& mesh) {
  for (CellId c = 0; c < mesh.num_cells(); ++c) {
    if (!(cell_area(mesh, c) > 0.0)) return c;
  }
  return mesh.num_cells();
}

void write_snapshot(std::ostream& os, const QuadMesh& mesh) {
  const auto old_flags = os.flags();
  const auto old_prec = os.precision();
  os << std::setprecision(17);
  os << "POINTS " << mesh.num_nodes() << '\n';
  for (const auto& p : mesh.coords()) os << p.x << ' ' << p.y << '\n';
  os << "CELLS " << mesh.num_cells() << '\n';
  for (CellId c = 0; c < mesh.num_cells(); ++c) {
    const auto n = mesh.cell_nodes(c);
    os << n[0] << ' ' << n[1] << ' ' << n[2] << ' ' << n[3] << '\n';
  }
  os.flags(old_flags);
  os.precision(old_prec);
}

namespace {

std::size_t read_section_header(std::istream& is, const std::string& expected) {
  std::string tag;
  std::size_t count = 0;
  if (!(is >> tag >> count) || tag != expected) {
    throw IoError("snapshot: expected section '" + expected + "'");
  }
  return count;
}

}  // namespace

Snapshot read_snapshot(std::istream& is) {
  Snapshot snap;
  const std::size_t n_points = read_section_header(is, "POINTS");
  snap.points.resize(n_points);
  for (auto& p : snap.points) {
    if (!(is >> p.x >> p.y)) throw IoError("snapshot: truncated POINTS section");
  }
  const std::size_t n_cells = read_section_header(is, "CELLS");
  snap.cells.resize(n_cells);
  for (auto& cell : snap.cells) {
    for (auto& q : cell) {
      if (!(is >> q)) throw IoError("snapshot: truncated CELLS section");
      if (q >= n_points) throw IoError("snapshot: cell references missing point");
    }
  }
  return snap;
}

}  // namespace lagmesh
