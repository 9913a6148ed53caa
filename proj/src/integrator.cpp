#include "lagmesh/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "lagmesh/errors.hpp"

namespace lagmesh {

std::string_view to_string(StepMode mode) { return mode == StepMode::Simple ? "simple" : "full"; }
std::string_view to_string(IntegratorKind kind) { return kind == IntegratorKind::Rk4 ? "rk4" : "euler"; }

StepMode parse_step_mode(std::string_view s) {
  if (s == "simple") return StepMode::Simple;
  if (s == "full") return StepMode::Full;
  throw InvalidConfiguration("unknown step mode '" + std::string(s) + "'");
}

IntegratorKind parse_integrator(std::string_view s) {
  if (s == "rk4") return IntegratorKind::Rk4;
  if (s == "euler") return IntegratorKind::Euler;
  throw InvalidConfiguration("unknown integrator '" + std::string(s) + "'");
}

void TimeStepControl::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw InvalidConfiguration("cfl must lie in (0, 1]");
  if (!(dt_initial > 0.0)) throw InvalidConfiguration("initial time step must be positive");
  if (!(c_m > 1.0)) throw InvalidConfiguration("step growth factor must exceed 1");
  if (!(c_e > 0.0) || !(c_v > 0.0)) throw InvalidConfiguration("step coefficients must be positive");
}

double compute_time_step(const SimulationState& state, const NodalVelocityField& velocities,
                         const TimeStepControl& ctl, double t_final) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const QuadMesh& mesh = state.mesh;

  double v_max = 0.0;
  for (const Vec2& v : velocities.velocity) v_max = std::max(v_max, norm(v));

  double dt = t_final - state.t;
  if (ctl.mode == StepMode::Simple) {
    if (v_max > 0.0) dt = std::min(dt, ctl.cfl * min_edge_length(mesh) / v_max);
  } else {
    double dt_e = kInf;
    if (v_max > 0.0) {
      double lambda = kInf;
      for (CellId c = 0; c < mesh.num_cells(); ++c) lambda = std::min(lambda, cell_diameter(mesh, c));
      dt_e = ctl.c_e * lambda / v_max;
    }
    double dt_v = kInf;
    const auto rate = gcl_area_rate(mesh, velocities.velocity);
    for (CellId c = 0; c < mesh.num_cells(); ++c) {
      if (rate[c] != 0.0) dt_v = std::min(dt_v, ctl.c_v * cell_area(mesh, c) / std::abs(rate[c]));
    }
    const double dt_m = ctl.c_m * state.dt_prev;
    dt = std::min({dt, dt_e, dt_v, dt_m});
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream msg;
    msg << "time step collapsed to " << dt << " at t=" << state.t;
    throw TimeStepCollapse(msg.str());
  }
  return dt;
}

namespace {

std::vector<Vec2> displaced(std::span<const Vec2> x, std::span<const Vec2> v, double s) {
  std::vector<Vec2> out(x.begin(), x.end());
  for (std::size_t q = 0; q < out.size(); ++q) out[q] += s * v[q];
  return out;
}

QuadMesh checked_stage_mesh(const QuadMesh& base, std::vector<Vec2> coords, int stage) {
  QuadMesh m = base.with_coords(std::move(coords));
  const CellId bad = find_inverted_cell(m);
  if (bad != m.num_cells()) {
    throw TanglingError(bad, stage,
                        "cell " + std::to_string(bad) + " inverted in RK stage " + std::to_string(stage));
  }
  return m;
}

void require_coverage(const NodalVelocityField& v, const QuadMesh& mesh) {
  if (v.velocity.size() != mesh.num_nodes()) throw ContractViolation("velocity field does not cover every node");
}

}  // namespace

SimulationState euler_step(const SimulationState& state, const NodalVelocityField& velocities,
                           double dt) {
  if (!(dt > 0.0)) throw ContractViolation("time step must be positive");
  require_coverage(velocities, state.mesh);
  SimulationState next = state;
  next.mesh = state.mesh.with_coords(displaced(state.mesh.coords(), velocities.velocity, dt));
  refresh_cell_states(next);
  return next;
}

StageVelocity corrected_stage_velocity(VelocityField u, QuadratureRule rule, BoundaryMode mode) {
  return [u = std::move(u), rule, mode](const QuadMesh& mesh) {
    return apply_boundary_constraint(mesh, reconstruct_velocities(mesh, u, rule, stencil_for(mode)), mode);
  };
}

StageVelocity exact_stage_velocity(VelocityField u) {
  return [u = std::move(u)](const QuadMesh& mesh) {
    NodalVelocityField f;
    f.velocity.reserve(mesh.num_nodes());
    for (const Vec2& x : mesh.coords()) f.velocity.push_back(u(x));
    f.correction.assign(mesh.num_nodes(), Vec2{});
    return f;
  };
}

SimulationState rk4_advance(const SimulationState& state, const StageVelocity& velocity, double dt,
                            const NodalVelocityField* k1, const StageObserver& observer) {
  if (!(dt > 0.0)) throw ContractViolation("time step must be positive");
  const QuadMesh& mesh = state.mesh;
  const auto x0 = mesh.coords();

  const NodalVelocityField s1 = k1 ? *k1 : velocity(mesh);
  require_coverage(s1, mesh);
  if (observer) observer(1, mesh, s1);

  const QuadMesh m2 = checked_stage_mesh(mesh, displaced(x0, s1.velocity, 0.5 * dt), 2);
  const NodalVelocityField s2 = velocity(m2);
  require_coverage(s2, mesh);
  if (observer) observer(2, m2, s2);

  const QuadMesh m3 = checked_stage_mesh(mesh, displaced(x0, s2.velocity, 0.5 * dt), 3);
  const NodalVelocityField s3 = velocity(m3);
  require_coverage(s3, mesh);
  if (observer) observer(3, m3, s3);

  const QuadMesh m4 = checked_stage_mesh(mesh, displaced(x0, s3.velocity, dt), 4);
  const NodalVelocityField s4 = velocity(m4);
  require_coverage(s4, mesh);
  if (observer) observer(4, m4, s4);

  std::vector<Vec2> x(x0.begin(), x0.end());
  const double w = dt / 6.0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    x[q] += w * (s1.velocity[q] + 2.0 * s2.velocity[q] + 2.0 * s3.velocity[q] + s4.velocity[q]);
  }

  SimulationState next = state;
  next.mesh = mesh.with_coords(std::move(x));
  refresh_cell_states(next);
  return next;
}

SimulationState rk4_step(const SimulationState& state, const VelocityField& u, QuadratureRule rule,
                         double dt, BoundaryMode mode, const StageObserver& observer) {
  return rk4_advance(state, corrected_stage_velocity(u, rule, mode), dt, nullptr, observer);
}

RunResult run_simulation(const SimulationSettings& settings, const SnapshotSink& sink) {
  settings.step.validate();
  if (!(settings.t_final >= 0.0)) throw InvalidConfiguration("final time must be nonnegative");

  RunResult result{make_initial_state(build_uniform_mesh(settings.domain, settings.nx, settings.ny), 1.0,
                                      settings.step.dt_initial),
                   {}, 0.0, 0.0, {}};
  SimulationState& state = result.state;
  result.initial_mass = total_mass(state);
  if (sink) sink(state);

  const StageVelocity velocity = corrected_stage_velocity(settings.field, settings.rule, settings.boundary);

  while (state.t < settings.t_final) {
    if (state.step_count >= settings.max_steps) {
      throw RunawayError("exceeded " + std::to_string(settings.max_steps) + " steps before t_final");
    }
    const NodalVelocityField k1 = velocity(state.mesh);
    const double dt = compute_time_step(state, k1, settings.step, settings.t_final);
    const double h_min = min_edge_length(state.mesh);

    SimulationState next = settings.integrator == IntegratorKind::Rk4
                               ? rk4_advance(state, velocity, dt, &k1)
                               : euler_step(state, k1, dt);
    const bool last = dt >= settings.t_final - state.t;
    next.t = last ? settings.t_final : state.t + dt;
    next.step_count = state.step_count + 1;
    next.dt_prev = dt;
    state = std::move(next);

    StepRecord rec{state.step_count, state.t, dt, h_min, std::nullopt};
    if (settings.record_errors) {
      rec.errors = density_errors(state);
      rec.errors->rule = settings.rule;
    }
    result.steps.push_back(rec);

    if (sink && settings.snapshot_every > 0 && state.step_count % settings.snapshot_every == 0) sink(state);
  }

  result.final_mass = total_mass(state);
  result.errors = density_errors(state);
  result.errors.rule = settings.rule;
  return result;
}

}  // namespace lagmesh
