#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lagmesh/diagnostics.hpp"
#include "lagmesh/integrator.hpp"

namespace lagmesh::cli {

enum class TestCase { Isentropic, TaylorGreen, Custom };

std::string_view to_string(TestCase c);

struct RunConfig {
  TestCase test_case = TestCase::Isentropic;
  std::size_t nx = 50;
  std::vector<QuadratureRule> rules{QuadratureRule::Lobatto3};
  double t_final = 0.1;
  double cfl = 0.5;
  IntegratorKind integrator = IntegratorKind::Rk4;
  /// Unset means the case default: free for the isentropic vortex, slide otherwise.
  std::optional<BoundaryMode> boundary;
  StepMode step_mode = StepMode::Simple;
  std::vector<std::size_t> study;
  std::size_t snapshot_every = 0;
  std::filesystem::path output_dir = ".";
  bool verify_theorem1 = false;
  std::optional<Rect> domain;
  /// Field spec for the custom case: isentropic, taylor-green, rotation,
  /// zero, or constant:<ux>,<uy>.
  std::optional<std::string> field;
};

/// Thrown by parse_config for --help; carries the usage text.
struct HelpRequested {
  std::string text;
};

/// Flags override config-file values, which override LAGMESH_OUT for the
/// output directory, which overrides defaults. Unknown config keys are
/// rejected. Throws UsageError on malformed input and InvalidConfiguration
/// on values that parse but do not validate.
RunConfig parse_config(std::span<const std::string> args);

/// Throws InvalidConfiguration. Called by parse_config.
void validate(const RunConfig& cfg);

Rect resolved_domain(const RunConfig& cfg);
VelocityField resolved_field(const RunConfig& cfg);
BoundaryMode resolved_boundary(const RunConfig& cfg);

SimulationSettings make_settings(const RunConfig& cfg, std::size_t nx, QuadratureRule rule);

/// Run name used as the file stem, e.g. "isentropic_n50_lobatto".
std::string run_stamp(const RunConfig& cfg, std::size_t nx, QuadratureRule rule);

/// One table per rule over cfg.study. Writes <case>_study_<rule>.csv and
/// .txt into cfg.output_dir. Errors name the failing resolution.
std::vector<ConvergenceTable> run_convergence_study(const RunConfig& cfg);

/// Single run per rule; writes the summary record and any snapshots.
std::vector<RunResult> run_single(const RunConfig& cfg);

/// Correction-slope verification over cfg.study (or a case default) for each
/// rule; writes <case>_<rule>_correction_slopes.json.
std::vector<CorrectionSlopes> run_correction_check(const RunConfig& cfg);

/// File emission. All throw IoError when the path cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::filesystem::path write_summary(const RunConfig& cfg, const RunResult& result, QuadratureRule rule);
std::filesystem::path write_snapshot_file(const RunConfig& cfg, const SimulationState& state,
                                          QuadratureRule rule);
std::vector<std::filesystem::path> write_tables(const RunConfig& cfg,
                                                std::span<const ConvergenceTable> tables);

/// Single-line JSON error record: {"error":"<kind>","message":"..."}.
std::string error_record(std::string_view kind, std::string_view message);

}  // namespace lagmesh::cli
