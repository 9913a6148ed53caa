#include "lagmesh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>

#include "lagmesh/errors.hpp"

namespace lagmesh::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(TestCase c) {
  switch (c) {
    case TestCase::Isentropic:
      return "isentropic";
    case TestCase::TaylorGreen:
      return "taylor-green";
    case TestCase::Custom:
      return "custom";
  }
  return "unknown";
}

namespace {

Rect parse_domain(const std::vector<double>& v) {
  if (v.size() != 4) throw UsageError("--domain expects x0,x1,y0,y1");
  return {v[0], v[1], v[2], v[3]};
}

bool same_rect(const Rect& a, const Rect& b) {
  return a.x0 == b.x0 && a.x1 == b.x1 && a.y0 == b.y0 && a.y1 == b.y1;
}

std::optional<Rect> case_domain(TestCase c) {
  switch (c) {
    case TestCase::Isentropic:
      return isentropic_vortex_domain();
    case TestCase::TaylorGreen:
      return taylor_green_domain();
    case TestCase::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

VelocityField field_from_spec(const std::string& spec) {
  if (spec == "isentropic") return VelocityField::isentropic_vortex();
  if (spec == "taylor-green") return VelocityField::taylor_green();
  if (spec == "rotation") return VelocityField::rotation();
  if (spec == "zero") return VelocityField::constant({0.0, 0.0});
  const std::string prefix = "constant:";
  if (spec.rfind(prefix, 0) == 0) {
    std::istringstream is(spec.substr(prefix.size()));
    Vec2 c;
    char comma = 0;
    if (is >> c.x >> comma >> c.y && comma == ',' && is.peek() == std::char_traits<char>::eof()) {
      return VelocityField::constant(c);
    }
  }
  throw InvalidConfiguration("unknown field '" + spec + "'");
}

// Re-raises enum parse failures as usage errors naming the option.
template <class F>
void keyed(const char* key, F&& f) {
  try {
    f();
  } catch (const InvalidConfiguration& e) {
    throw UsageError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_config(std::span<const std::string> args) {
  RunConfig cfg;
  CLI::App app{"Lagrangian mesh motion with area-conservative corrected nodal velocities", "lagmesh"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Flat key=value configuration file");

  const std::map<std::string, TestCase> cases{{"isentropic", TestCase::Isentropic},
                                              {"taylor-green", TestCase::TaylorGreen},
                                              {"custom", TestCase::Custom}};
  std::string rule = "lobatto";
  std::string integrator = "rk4";
  std::string boundary;
  std::string step_mode = "simple";
  std::string out;
  std::vector<double> domain;
  std::string field;

  std::string test_case = "isentropic";
  app.add_option("--case", test_case, "isentropic, taylor-green or custom");
  app.add_option("--nx", cfg.nx, "Cells per axis (square meshes)");
  app.add_option("--rule", rule, "Edge quadrature: lobatto, legendre or both");
  app.add_option("--t-final", cfg.t_final, "Final time");
  app.add_option("--cfl", cfg.cfl, "CFL number in (0,1]");
  app.add_option("--integrator", integrator, "rk4 or euler");
  app.add_option("--boundary", boundary, "free, slide, pin or periodic (experimental)");
  app.add_option("--step-mode", step_mode, "simple or full");
  app.add_option("--study", cfg.study, "Comma-separated cells-per-axis list, each double the last")
      ->delimiter(',');
  app.add_option("--snapshot-every", cfg.snapshot_every, "Write a mesh snapshot every N steps (0: off)");
  app.add_option("--out", out, "Output directory")->envname("LAGMESH_OUT");
  app.add_flag("--verify-theorem1", cfg.verify_theorem1,
               "Fit growth rates of the nodal correction quantities over the study meshes");
  app.add_option("--domain", domain, "x0,x1,y0,y1 (custom case)")->delimiter(',');
  app.add_option("--field", field, "Velocity field for the custom case");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::Success&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto it = cases.find(test_case);
  if (it == cases.end()) throw UsageError("--case: unknown test case '" + test_case + "'");
  cfg.test_case = it->second;
  keyed("--rule", [&] {
    if (rule == "both") {
      cfg.rules = {QuadratureRule::Lobatto3, QuadratureRule::Legendre2};
    } else {
      cfg.rules = {parse_quadrature_rule(rule)};
    }
  });
  keyed("--integrator", [&] { cfg.integrator = parse_integrator(integrator); });
  keyed("--boundary", [&] {
    if (!boundary.empty()) cfg.boundary = parse_boundary_mode(boundary);
  });
  keyed("--step-mode", [&] { cfg.step_mode = parse_step_mode(step_mode); });
  if (!out.empty()) cfg.output_dir = out;
  if (!domain.empty()) cfg.domain = parse_domain(domain);
  if (!field.empty()) cfg.field = field;

  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.nx < 1) throw InvalidConfiguration("nx must be at least 1");
  if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final)) throw InvalidConfiguration("t-final must be >= 0");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw InvalidConfiguration("cfl must lie in (0, 1]");
  if (cfg.rules.empty()) throw InvalidConfiguration("no quadrature rule selected");
  if (!cfg.study.empty()) {
    if (cfg.study.size() < 2 && !cfg.verify_theorem1) {
      throw InvalidConfiguration("a study needs at least two resolutions");
    }
    for (std::size_t i = 0; i < cfg.study.size(); ++i) {
      if (cfg.study[i] < 1) throw InvalidConfiguration("study resolutions must be >= 1");
      if (i > 0 && cfg.study[i] != 2 * cfg.study[i - 1]) {
        throw InvalidConfiguration("study resolutions must double from entry to entry");
      }
    }
  }
  const auto fixed = case_domain(cfg.test_case);
  if (fixed && cfg.domain && !same_rect(*fixed, *cfg.domain)) {
    throw InvalidConfiguration("domain conflicts with case '" + std::string(to_string(cfg.test_case)) + "'");
  }
  if (fixed && cfg.field) {
    throw InvalidConfiguration("field can only be chosen for the custom case");
  }
  if (cfg.test_case == TestCase::Custom) {
    if (!cfg.domain) throw InvalidConfiguration("custom case requires --domain");
    if (!cfg.domain->area() || !(cfg.domain->x1 > cfg.domain->x0) || !(cfg.domain->y1 > cfg.domain->y0)) {
      throw InvalidConfiguration("degenerate domain rectangle");
    }
    if (!cfg.field) throw InvalidConfiguration("custom case requires --field");
    field_from_spec(*cfg.field);
  }
}

Rect resolved_domain(const RunConfig& cfg) {
  if (auto d = case_domain(cfg.test_case)) return *d;
  return cfg.domain.value();
}

VelocityField resolved_field(const RunConfig& cfg) {
  switch (cfg.test_case) {
    case TestCase::Isentropic:
      return VelocityField::isentropic_vortex();
    case TestCase::TaylorGreen:
      return VelocityField::taylor_green();
    case TestCase::Custom:
      break;
  }
  return field_from_spec(cfg.field.value());
}

BoundaryMode resolved_boundary(const RunConfig& cfg) {
  if (cfg.boundary) return *cfg.boundary;
  return cfg.test_case == TestCase::Isentropic ? BoundaryMode::Free : BoundaryMode::Slide;
}

SimulationSettings make_settings(const RunConfig& cfg, std::size_t nx, QuadratureRule rule) {
  SimulationSettings s;
  s.domain = resolved_domain(cfg);
  s.nx = nx;
  s.ny = nx;
  s.field = resolved_field(cfg);
  s.rule = rule;
  s.t_final = cfg.t_final;
  s.step.cfl = cfg.cfl;
  s.step.mode = cfg.step_mode;
  s.integrator = cfg.integrator;
  s.boundary = resolved_boundary(cfg);
  s.snapshot_every = cfg.snapshot_every;
  return s;
}

std::string run_stamp(const RunConfig& cfg, std::size_t nx, QuadratureRule rule) {
  return std::string(to_string(cfg.test_case)) + "_n" + std::to_string(nx) + "_" + std::string(to_string(rule));
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os << content;
  if (!os.flush()) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

json report_json(const ErrorReport& r) {
  return {{"h", r.h}, {"t", r.t}, {"l_inf", r.l_inf}, {"l2", r.l2}, {"l2_normalized", r.l2_normalized}};
}

json slope_json(const SlopeFit& s) {
  if (s.exact_zero) return "exact";
  return s.value;
}

}  // namespace

fs::path write_summary(const RunConfig& cfg, const RunResult& result, QuadratureRule rule) {
  const auto& s = result.state;
  json j;
  j["case"] = to_string(cfg.test_case);
  j["nx"] = s.mesh.nx();
  j["rule"] = to_string(rule);
  j["integrator"] = to_string(cfg.integrator);
  j["boundary"] = to_string(resolved_boundary(cfg));
  j["step_mode"] = to_string(cfg.step_mode);
  j["cfl"] = cfg.cfl;
  j["t_final"] = s.t;
  j["steps"] = s.step_count;
  j["initial_mass"] = result.initial_mass;
  j["final_mass"] = result.final_mass;
  j["errors"] = report_json(result.errors);
  json steps = json::array();
  for (const auto& st : result.steps) steps.push_back({{"step", st.step}, {"t", st.t}, {"dt", st.dt}, {"h_min", st.h_min}});
  j["step_log"] = steps;
  const fs::path path = cfg.output_dir / (run_stamp(cfg, s.mesh.nx(), rule) + "_summary.json");
  write_text_file(path, j.dump(2) + "\n");
  return path;
}

fs::path write_snapshot_file(const RunConfig& cfg, const SimulationState& state, QuadratureRule rule) {
  std::ostringstream name;
  name << run_stamp(cfg, state.mesh.nx(), rule) << "_step" << std::setw(6) << std::setfill('0')
       << state.step_count << ".snap";
  std::ostringstream body;
  write_snapshot(body, state.mesh);
  const fs::path path = cfg.output_dir / name.str();
  write_text_file(path, body.str());
  return path;
}

std::vector<fs::path> write_tables(const RunConfig& cfg, std::span<const ConvergenceTable> tables) {
  std::vector<fs::path> paths;
  for (const auto& t : tables) {
    const std::string stem = std::string(to_string(cfg.test_case)) + "_study_" + std::string(to_string(t.rule));
    paths.push_back(cfg.output_dir / (stem + ".csv"));
    write_text_file(paths.back(), to_csv(t));
    paths.push_back(cfg.output_dir / (stem + ".txt"));
    write_text_file(paths.back(), render(t));
  }
  return paths;
}

std::vector<ConvergenceTable> run_convergence_study(const RunConfig& cfg) {
  if (cfg.study.size() < 2) throw InvalidConfiguration("a study needs at least two resolutions");
  std::vector<ConvergenceTable> tables;
  for (QuadratureRule rule : cfg.rules) {
    std::vector<std::future<ErrorReport>> jobs;
    for (std::size_t n : cfg.study) {
      jobs.push_back(std::async(std::launch::async, [&cfg, n, rule] {
        try {
          return run_simulation(make_settings(cfg, n, rule)).errors;
        } catch (const Error& e) {
          throw Error(e.kind(), "resolution " + std::to_string(n) + ": " + e.what());
        }
      }));
    }
    std::vector<ErrorReport> reports;
    for (auto& j : jobs) reports.push_back(j.get());
    tables.push_back(make_convergence_table(rule, reports));
  }
  write_tables(cfg, tables);
  return tables;
}

std::vector<RunResult> run_single(const RunConfig& cfg) {
  std::vector<RunResult> results;
  for (QuadratureRule rule : cfg.rules) {
    SnapshotSink sink;
    if (cfg.snapshot_every > 0) {
      sink = [&cfg, rule](const SimulationState& s) { write_snapshot_file(cfg, s, rule); };
    }
    results.push_back(run_simulation(make_settings(cfg, cfg.nx, rule), sink));
    write_summary(cfg, results.back(), rule);
  }
  return results;
}

std::vector<CorrectionSlopes> run_correction_check(const RunConfig& cfg) {
  std::vector<std::size_t> sizes = cfg.study;
  if (sizes.empty()) {
    sizes = cfg.test_case == TestCase::Isentropic ? std::vector<std::size_t>{50, 100, 200, 400}
                                                  : std::vector<std::size_t>{25, 50, 100};
  }
  std::vector<CorrectionSlopes> out;
  for (QuadratureRule rule : cfg.rules) {
    out.push_back(correction_slopes(resolved_field(cfg), rule, resolved_domain(cfg), sizes));
    const auto& r = out.back();
    json j;
    j["case"] = to_string(cfg.test_case);
    j["rule"] = to_string(rule);
    json samples = json::array();
    for (const auto& s : r.samples) {
      samples.push_back({{"h", s.h},
                         {"max_correction", s.max_correction},
                         {"max_correction_jump", s.max_correction_jump},
                         {"max_edge_defect", s.max_edge_defect}});
    }
    j["samples"] = samples;
    j["slopes"] = {{"magnitude", slope_json(r.magnitude)},
                   {"smoothness", slope_json(r.smoothness)},
                   {"high_order", slope_json(r.high_order)}};
    write_text_file(cfg.output_dir / (std::string(to_string(cfg.test_case)) + "_" + std::string(to_string(rule)) +
                                      "_correction_slopes.json"),
                    j.dump(2) + "\n");
  }
  return out;
}

std::string error_record(std::string_view kind, std::string_view message) {
  return json{{"error", kind}, {"message", message}}.dump();
}

}  // namespace lagmesh::cli
