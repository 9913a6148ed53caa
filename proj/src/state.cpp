#include "lagmesh/state.hpp"

#include <sstream>

#include "lagmesh/errors.hpp"

namespace lagmesh {

SimulationState make_initial_state(QuadMesh mesh, double density0, double dt_initial) {
  SimulationState state{std::move(mesh), {}, 0.0, 0, dt_initial};
  state.cells.resize(state.mesh.num_cells());
  refresh_cell_states(state);
  for (auto& c : state.cells) {
    c.mass = density0 * c.area;
    c.density = c.mass / c.area;
    c.specific_volume = 1.0 / c.density;
  }
  return state;
}

void refresh_cell_states(SimulationState& state, int stage) {
  for (CellId c = 0; c < state.mesh.num_cells(); ++c) {
    const double a = cell_area(state.mesh, c);
    if (!(a > 0.0)) {
      std::ostringstream msg;
      msg << "cell " << c << " inverted (signed area " << a << ")";
      if (stage > 0) msg << " in RK stage " << stage;
      throw TanglingError(c, stage, msg.str());
    }
    auto& cs = state.cells[c];
    cs.area = a;
    cs.density = cs.mass / a;
    cs.specific_volume = a / cs.mass;
  }
}

double total_mass(const SimulationState& state) {
  double m = 0.0;
  for (const auto& c : state.cells) m += c.mass;
  return m;
}

}  // namespace lagmesh
