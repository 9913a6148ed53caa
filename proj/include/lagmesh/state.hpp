#pragma once

#include <cstddef>
#include <vector>

#include "lagmesh/mesh.hpp"

namespace lagmesh {

/// Lagrangian cell quantities. `mass` is set once at initialization and never
/// rewritten; the rest follow from the current coordinates.
struct CellState {
  double mass = 0.0;
  double area = 0.0;
  double density = 0.0;
  double specific_volume = 0.0;
};

struct SimulationState {
  QuadMesh mesh;
  std::vector<CellState> cells;
  double t = 0.0;
  std::size_t step_count = 0;
  double dt_prev = 0.0;
};

/// Cells get mass density0 * |cell| from the given coordinates.
/// Throws TanglingError if any cell is inverted.
SimulationState make_initial_state(QuadMesh mesh, double density0 = 1.0, double dt_initial = 1e-8);

/// Recomputes area, density and specific volume from the current
/// coordinates. Throws TanglingError (tagged with `stage`) on a nonpositive
/// area.
void refresh_cell_states(SimulationState& state, int stage = 0);

double total_mass(const SimulationState& state);

}  // namespace lagmesh
