#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lagmesh/edge_quadrature.hpp"
#include "lagmesh/fields.hpp"
#include "lagmesh/nodal_solver.hpp"
#include "lagmesh/state.hpp"

namespace lagmesh {

/// Density errors against the exact density 1.
///   l_inf = max_c |rho_c - 1|
///   l2    = sqrt(sum_c (rho_c - 1)^2 |cell_c|)
///   l2_normalized = l2 / sqrt(sum_c |cell_c|)   (the tabulated L2)
struct ErrorReport {
  double l_inf = 0.0;
  double l2 = 0.0;
  double l2_normalized = 0.0;
  double h = 0.0;
  double t = 0.0;
  std::optional<QuadratureRule> rule;
};

/// Uses the stored cell states; `h` is the nominal x spacing of the mesh.
/// Throws TanglingError on a nonpositive cell area.
ErrorReport density_errors(const SimulationState& state);

/// order_i = log2(e_{i-1} / e_i). `hs` must halve from entry to entry.
/// Throws OrderUndefined on a nonpositive error, InvalidConfiguration on a
/// malformed sequence.
std::vector<double> convergence_orders(std::span<const double> errors, std::span<const double> hs);

struct ConvergenceRow {
  double h = 0.0;
  double l_inf = 0.0;
  std::optional<double> order_inf;
  double l2 = 0.0;
  std::optional<double> order_2;
};

struct ConvergenceTable {
  QuadratureRule rule = QuadratureRule::Lobatto3;
  std::vector<ConvergenceRow> rows;
};

/// Rows from per-resolution reports (coarsest first), using l2_normalized for
/// the L2 column.
ConvergenceTable make_convergence_table(QuadratureRule rule, std::span<const ErrorReport> reports);

/// "h,Linf,order_inf,L2,order_2,rule" header, errors with 6 significant
/// digits, orders with 2 decimals, blank orders on the first row.
std::string to_csv(const ConvergenceTable& table);
/// Column-aligned rendering for terminals.
std::string render(const ConvergenceTable& table);

/// Rate of change of every cell area, 1/2 sum_q (l n_{q q+} + l n_{q- q}) . u_q,
/// with cell-outward normals of the two cell edges meeting at q.
std::vector<double> gcl_area_rate(const QuadMesh& mesh, std::span<const Vec2> velocities);

/// R_c = (|cell^{n+1}| - |cell^n|) - dt * gcl_area_rate(mesh^n, u)_c.
/// Throws ContractViolation if the two states have different topology.
std::vector<double> gcl_residual(const SimulationState& before, const SimulationState& after,
                                 const NodalVelocityField& velocities, double dt);

/// Least-squares slope of log(value) against log(h). `exact_zero` is set
/// (and value left 0) when every value is zero.
struct SlopeFit {
  double value = 0.0;
  bool exact_zero = false;
};

SlopeFit fit_loglog_slope(std::span<const double> hs, std::span<const double> values);

/// Maxima of the three correction quantities on one mesh:
///   max_correction      max over interior nodes of |du_q|
///   max_correction_jump max over interior edges of |du_q - du_q'|
///   max_edge_defect     max over interior edges of |1/2 n.(du_q + du_q') - dS_{k,q}|
/// where du = u* - u(x_q) and dS_{k,q} = n_k . (Q_{q,q'}[u] - u(x_q)).
/// An interior edge joins two interior nodes. Values at roundoff level
/// (below 1e-13 times the largest nodal speed, floor 1) are reported as 0.
struct CorrectionSample {
  double h = 0.0;
  double max_correction = 0.0;
  double max_correction_jump = 0.0;
  double max_edge_defect = 0.0;
};

CorrectionSample correction_quantities(const QuadMesh& mesh, const VelocityField& u,
                                       QuadratureRule rule);

struct CorrectionSlopes {
  std::vector<CorrectionSample> samples;
  SlopeFit magnitude;
  SlopeFit smoothness;
  SlopeFit high_order;
};

/// Runs correction_quantities on uniform meshes of `domain` with the given
/// per-axis cell counts and fits the three slopes. Needs at least 3 sizes.
CorrectionSlopes correction_slopes(const VelocityField& u, QuadratureRule rule, const Rect& domain,
                                   std::span<const std::size_t> resolutions);

}  // namespace lagmesh
