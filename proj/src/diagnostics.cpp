#include "lagmesh/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "lagmesh/errors.hpp"

namespace lagmesh {

ErrorReport density_errors(const SimulationState& state) {
  ErrorReport r;
  double sum_sq = 0.0;
  double sum_area = 0.0;
  for (CellId c = 0; c < state.cells.size(); ++c) {
    const auto& cs = state.cells[c];
    if (!(cs.area > 0.0)) {
      throw TanglingError(c, 0, "cell " + std::to_string(c) + " has nonpositive area");
    }
    const double err = cs.mass / cs.area - 1.0;
    r.l_inf = std::max(r.l_inf, std::abs(err));
    sum_sq += err * err * cs.area;
    sum_area += cs.area;
  }
  r.l2 = std::sqrt(sum_sq);
  r.l2_normalized = sum_area > 0.0 ? std::sqrt(sum_sq / sum_area) : 0.0;
  r.h = state.mesh.hx();
  r.t = state.t;
  return r;
}

std::vector<double> convergence_orders(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size()) throw InvalidConfiguration("errors and mesh sizes differ in length");
  if (errors.size() < 2) throw InvalidConfiguration("need at least two mesh sizes for an order");
  for (std::size_t i = 1; i < hs.size(); ++i) {
    if (std::abs(hs[i - 1] / hs[i] - 2.0) > 1e-9) {
      throw InvalidConfiguration("mesh sizes must halve between consecutive entries");
    }
  }
  std::vector<double> orders;
  orders.reserve(errors.size() - 1);
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i - 1] > 0.0) || !(errors[i] > 0.0)) {
      throw OrderUndefined("order undefined for zero error at entry " + std::to_string(i));
    }
    orders.push_back(std::log2(errors[i - 1] / errors[i]));
  }
  return orders;
}

ConvergenceTable make_convergence_table(QuadratureRule rule, std::span<const ErrorReport> reports) {
  ConvergenceTable table{rule, {}};
  std::vector<double> hs, linf, l2;
  for (const auto& r : reports) {
    table.rows.push_back({r.h, r.l_inf, std::nullopt, r.l2_normalized, std::nullopt});
    hs.push_back(r.h);
    linf.push_back(r.l_inf);
    l2.push_back(r.l2_normalized);
  }
  if (reports.size() >= 2) {
    const auto oi = convergence_orders(linf, hs);
    const auto o2 = convergence_orders(l2, hs);
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      table.rows[i].order_inf = oi[i - 1];
      table.rows[i].order_2 = o2[i - 1];
    }
  }
  return table;
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_order(const std::optional<double>& o) { return o ? fmt("%.2f", *o) : std::string(); }

}  // namespace

std::string to_csv(const ConvergenceTable& table) {
  std::string out = "h,Linf,order_inf,L2,order_2,rule\n";
  const std::string rule(to_string(table.rule));
  for (const auto& r : table.rows) {
    out += fmt("%.6g", r.h) + ',' + fmt("%.5E", r.l_inf) + ',' + fmt_order(r.order_inf) + ',' +
           fmt("%.5E", r.l2) + ',' + fmt_order(r.order_2) + ',' + rule + '\n';
  }
  return out;
}

std::string render(const ConvergenceTable& table) {
  char line[160];
  std::string out = "rule: " + std::string(to_string(table.rule)) + '\n';
  std::snprintf(line, sizeof line, "%-10s %-13s %-6s %-13s %-6s\n", "h", "Linf", "Order", "L2", "Order");
  out += line;
  for (const auto& r : table.rows) {
    const std::string oi = r.order_inf ? fmt("%.2f", *r.order_inf) : "---";
    const std::string o2 = r.order_2 ? fmt("%.2f", *r.order_2) : "---";
    std::snprintf(line, sizeof line, "%-10.6g %-13.4E %-6s %-13.4E %-6s\n", r.h, r.l_inf, oi.c_str(),
                  r.l2, o2.c_str());
    out += line;
  }
  return out;
}

std::vector<double> gcl_area_rate(const QuadMesh& mesh, std::span<const Vec2> velocities) {
  if (velocities.size() != mesh.num_nodes()) {
    throw ContractViolation("velocity field does not cover every node");
  }
  std::vector<double> rate(mesh.num_cells(), 0.0);
  for (CellId c = 0; c < mesh.num_cells(); ++c) {
    const auto nodes = mesh.cell_nodes(c);
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const Vec2& prev = mesh.position(nodes[(k + 3) % 4]);
      const Vec2& here = mesh.position(nodes[k]);
      const Vec2& next = mesh.position(nodes[(k + 1) % 4]);
      // l n for a CCW edge a->b with outward normal is -rotate_left(b - a).
      const Vec2 ln_next = -rotate_left(next - here);
      const Vec2 ln_prev = -rotate_left(here - prev);
      sum += dot(ln_next + ln_prev, velocities[nodes[k]]);
    }
    rate[c] = 0.5 * sum;
  }
  return rate;
}

std::vector<double> gcl_residual(const SimulationState& before, const SimulationState& after,
                                 const NodalVelocityField& velocities, double dt) {
  if (!before.mesh.same_topology(after.mesh) || before.cells.size() != after.cells.size()) {
    throw ContractViolation("gcl residual: states have different topology");
  }
  const auto rate = gcl_area_rate(before.mesh, velocities.velocity);
  std::vector<double> r(rate.size());
  for (CellId c = 0; c < r.size(); ++c) {
    r[c] = (cell_area(after.mesh, c) - cell_area(before.mesh, c)) - dt * rate[c];
  }
  return r;
}

SlopeFit fit_loglog_slope(std::span<const double> hs, std::span<const double> values) {
  if (hs.size() != values.size() || hs.size() < 2) {
    throw InvalidConfiguration("slope fit needs matching spans with at least two entries");
  }
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
    return {0.0, true};
  }
  const double n = static_cast<double>(hs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(values[i] > 0.0) || !(hs[i] > 0.0)) {
      throw OrderUndefined("slope fit on nonpositive data at entry " + std::to_string(i));
    }
    const double x = std::log(hs[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InvalidConfiguration("slope fit needs distinct mesh sizes");
  return {(n * sxy - sx * sy) / denom, false};
}

CorrectionSample correction_quantities(const QuadMesh& mesh, const VelocityField& u,
                                       QuadratureRule rule) {
  const auto field = reconstruct_velocities(mesh, u, rule);
  const auto& du = field.correction;

  double speed_scale = 1.0;
  for (NodeId q = 0; q < mesh.num_nodes(); ++q) speed_scale = std::max(speed_scale, norm(u(mesh.position(q))));
  const double floor = 1e-13 * speed_scale;
  auto flush = [floor](double v) { return v <= floor ? 0.0 : v; };

  CorrectionSample s;
  s.h = mesh.hx();
  for (NodeId q = 0; q < mesh.num_nodes(); ++q) {
    if (mesh.boundary(q).on_boundary()) continue;
    s.max_correction = std::max(s.max_correction, norm(du[q]));
  }
  for (const auto& [a, b] : mesh.edges()) {
    if (mesh.boundary(a).on_boundary() || mesh.boundary(b).on_boundary()) continue;
    s.max_correction_jump = std::max(s.max_correction_jump, norm(du[a] - du[b]));
    for (const auto& [q, p] : {std::pair{a, b}, std::pair{b, a}}) {
      const Vec2& xq = mesh.position(q);
      const EdgeGeom g = edge_geometry(xq, mesh.position(p));
      const double delta_s = dot(g.normal, corrected_endpoint_velocity(rule, u, xq, mesh.position(p)) - u(xq));
      const double defect = std::abs(0.5 * dot(g.normal, du[q] + du[p]) - delta_s);
      s.max_edge_defect = std::max(s.max_edge_defect, defect);
    }
  }
  s.max_correction = flush(s.max_correction);
  s.max_correction_jump = flush(s.max_correction_jump);
  s.max_edge_defect = flush(s.max_edge_defect);
  return s;
}

CorrectionSlopes correction_slopes(const VelocityField& u, QuadratureRule rule, const Rect& domain,
                                   std::span<const std::size_t> resolutions) {
  if (resolutions.size() < 3) throw InvalidConfiguration("correction slopes need at least 3 mesh sizes");
  CorrectionSlopes out;
  std::vector<double> hs, mag, jump, defect;
  for (std::size_t n : resolutions) {
    const auto s = correction_quantities(build_uniform_mesh(domain, n, n), u, rule);
    out.samples.push_back(s);
    hs.push_back(s.h);
    mag.push_back(s.max_correction);
    jump.push_back(s.max_correction_jump);
    defect.push_back(s.max_edge_defect);
  }
  out.magnitude = fit_loglog_slope(hs, mag);
  out.smoothness = fit_loglog_slope(hs, jump);
  out.high_order = fit_loglog_slope(hs, defect);
  return out;
}

}  // namespace lagmesh
