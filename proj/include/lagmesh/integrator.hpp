#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "lagmesh/diagnostics.hpp"
#include "lagmesh/edge_quadrature.hpp"
#include "lagmesh/fields.hpp"
#include "lagmesh/nodal_solver.hpp"
#include "lagmesh/state.hpp"

namespace lagmesh {

enum class StepMode {
  Simple,  ///< min(cfl h_min / v_max, T - t)
  Full,    ///< min(dt_E, dt_V, dt_M, T - t)
};

enum class IntegratorKind { Rk4, Euler };

std::string_view to_string(StepMode mode);
std::string_view to_string(IntegratorKind kind);
StepMode parse_step_mode(std::string_view s);
IntegratorKind parse_integrator(std::string_view s);

struct TimeStepControl {
  double cfl = 0.5;
  double c_e = 0.5;
  double c_v = 0.1;
  double c_m = 1.01;
  double dt_initial = 1e-8;
  StepMode mode = StepMode::Simple;

  /// Throws InvalidConfiguration unless cfl in (0,1], dt_initial > 0, c_m > 1.
  void validate() const;
};

/// Next step size, clipped so that t never passes t_final.
/// In full mode the edge-speed bound uses the largest nodal speed in place of
/// an acoustic speed and the volume bound uses gcl_area_rate.
/// Throws TimeStepCollapse on a nonpositive or non-finite result.
double compute_time_step(const SimulationState& state, const NodalVelocityField& velocities,
                         const TimeStepControl& ctl, double t_final);

/// x_q += dt u_q for every node, then cell states are refreshed.
/// Throws TanglingError naming the first inverted cell.
SimulationState euler_step(const SimulationState& state, const NodalVelocityField& velocities,
                           double dt);

/// Supplies nodal velocities for a given (staged) mesh.
using StageVelocity = std::function<NodalVelocityField(const QuadMesh&)>;
/// Called once per RK stage with the stage mesh and the velocities computed on it.
using StageObserver = std::function<void(int stage, const QuadMesh&, const NodalVelocityField&)>;

/// Reconstruction followed by the boundary constraint.
StageVelocity corrected_stage_velocity(VelocityField u, QuadratureRule rule, BoundaryMode mode);
/// The field sampled at the nodes, without reconstruction.
StageVelocity exact_stage_velocity(VelocityField u);

/// Classical RK4 on node positions. `k1`, when given, is used in place of the
/// first stage evaluation. Stage meshes are checked for inversion and a
/// TanglingError names the offending stage (2-4), or 0 for the final update.
SimulationState rk4_advance(const SimulationState& state, const StageVelocity& velocity, double dt,
                            const NodalVelocityField* k1 = nullptr,
                            const StageObserver& observer = {});

SimulationState rk4_step(const SimulationState& state, const VelocityField& u, QuadratureRule rule,
                         double dt, BoundaryMode mode, const StageObserver& observer = {});

struct SimulationSettings {
  Rect domain;
  std::size_t nx = 50;
  std::size_t ny = 50;
  VelocityField field = VelocityField::isentropic_vortex();
  QuadratureRule rule = QuadratureRule::Lobatto3;
  double t_final = 0.1;
  TimeStepControl step;
  IntegratorKind integrator = IntegratorKind::Rk4;
  BoundaryMode boundary = BoundaryMode::Free;
  std::size_t snapshot_every = 0;
  std::size_t max_steps = 10'000'000;
  bool record_errors = false;
};

struct StepRecord {
  std::size_t step = 0;
  double t = 0.0;
  double dt = 0.0;
  double h_min = 0.0;
  std::optional<ErrorReport> errors;
};

struct RunResult {
  SimulationState state;
  std::vector<StepRecord> steps;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  ErrorReport errors;
};

/// Receives the initial state and every `snapshot_every`-th step.
using SnapshotSink = std::function<void(const SimulationState&)>;

/// Steps from t = 0 to exactly t_final. Throws RunawayError past max_steps.
RunResult run_simulation(const SimulationSettings& settings, const SnapshotSink& sink = {});

}  // namespace lagmesh
