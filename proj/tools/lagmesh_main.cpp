#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "lagmesh/cli.hpp"
#include "lagmesh/errors.hpp"

namespace {

void print_slope(const char* label, const lagmesh::SlopeFit& s) {
  std::cout << "  " << label << ": ";
  if (s.exact_zero) {
    std::cout << "exact (all zero)\n";
  } else {
    std::cout << s.value << '\n';
  }
}

int run(const std::vector<std::string>& args) {
  using namespace lagmesh;
  const cli::RunConfig cfg = cli::parse_config(args);

  if (cfg.verify_theorem1) {
    const auto results = cli::run_correction_check(cfg);
    for (std::size_t i = 0; i < results.size(); ++i) {
      std::cout << "correction slopes (" << to_string(cfg.rules[i]) << ")\n";
      for (const auto& s : results[i].samples) {
        std::cout << "  h=" << s.h << "  |du|=" << s.max_correction << "  |du-du'|=" << s.max_correction_jump
                  << "  edge defect=" << s.max_edge_defect << '\n';
      }
      print_slope("magnitude  (expect ~2)", results[i].magnitude);
      print_slope("smoothness (expect ~3)", results[i].smoothness);
      print_slope("high order (expect ~4)", results[i].high_order);
    }
    return 0;
  }

  if (!cfg.study.empty()) {
    for (const auto& t : cli::run_convergence_study(cfg)) std::cout << render(t) << '\n';
    return 0;
  }

  const auto results = cli::run_single(cfg);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    std::cout << cli::run_stamp(cfg, cfg.nx, cfg.rules[i]) << ": t=" << r.state.t << " steps=" << r.state.step_count
              << " Linf=" << r.errors.l_inf << " L2=" << r.errors.l2_normalized << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const lagmesh::cli::HelpRequested& h) {
    std::cout << h.text;
    return 0;
  } catch (const lagmesh::Error& e) {
    std::cerr << lagmesh::cli::error_record(e.kind(), e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << lagmesh::cli::error_record("internal", e.what()) << '\n';
    return 1;
  }
}
