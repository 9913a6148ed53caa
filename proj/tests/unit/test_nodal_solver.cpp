#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lagmesh/diagnostics.hpp"
#include "lagmesh/nodal_solver.hpp"

namespace lagmesh {
namespace {

QuadMesh jittered_mesh(const Rect& dom, std::size_t n, double amplitude, unsigned seed) {
  auto m = build_uniform_mesh(dom, n, n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-amplitude, amplitude);
  std::vector<Vec2> x(m.coords().begin(), m.coords().end());
  for (NodeId q = 0; q < x.size(); ++q) {
    if (!m.boundary(q).on_boundary()) x[q] += Vec2{d(rng) * m.hx(), d(rng) * m.hy()};
  }
  return m.with_coords(std::move(x));
}

TEST(AssembleNodalSystem, InteriorNodeOfUniformMesh) {
  const double h = 0.25;
  const auto m = build_uniform_mesh({0, 1, 0, 1}, 4, 4);
  const NodeId q = m.node_index(2, 2);
  const std::vector<Vec2> v(4, Vec2{1, 0});
  const auto sys = assemble_nodal_system(m, q, v);
  EXPECT_NEAR(sys.m.xx, 2 * h, 1e-15);
  EXPECT_NEAR(sys.m.yy, 2 * h, 1e-15);
  EXPECT_NEAR(sys.m.xy, 0.0, 1e-15);
  const Vec2 mb = sys.m * Vec2{1, 0};
  EXPECT_NEAR(sys.b.x, mb.x, 1e-15);
  EXPECT_NEAR(sys.b.y, mb.y, 1e-15);
}

TEST(AssembleNodalSystem, CornerNode) {
  const double h = 0.25;
  const auto m = build_uniform_mesh({0, 1, 0, 1}, 4, 4);
  const std::vector<Vec2> v(2, Vec2{0.5, -2});
  const auto sys = assemble_nodal_system(m, m.node_index(0, 0), v);
  EXPECT_NEAR(sys.m.xx, h, 1e-15);
  EXPECT_NEAR(sys.m.yy, h, 1e-15);
  EXPECT_NEAR(sys.m.xy, 0.0, 1e-15);
  EXPECT_NEAR(sys.b.x, h * 0.5, 1e-15);
  EXPECT_NEAR(sys.b.y, h * -2.0, 1e-15);
}

TEST(AssembleNodalSystem, SampleCountMismatch) {
  const auto m = build_uniform_mesh({0, 1, 0, 1}, 2, 2);
  const std::vector<Vec2> v(3);
  EXPECT_THROW(assemble_nodal_system(m, m.node_index(1, 1), v), ContractViolation);
}

TEST(AssembleNodalSystem, SymmetricPositiveSemidefinite) {
  const auto m = jittered_mesh({0, 1, 0, 1}, 8, 0.3, 1);
  std::vector<Vec2> v(4, Vec2{0.3, 0.1});
  for (NodeId q = 0; q < m.num_nodes(); ++q) {
    const auto sys = assemble_nodal_system(m, q, std::span<const Vec2>(v.data(), m.node_neighbors(q).size()));
    EXPECT_GE(sys.m.xx, 0.0);
    EXPECT_GE(sys.m.yy, 0.0);
    EXPECT_GT(sys.m.det(), 0.0);
  }
}

TEST(SolveNodalSystem, Examples) {
  const double h = 0.1;
  Vec2 u = solve_nodal_system({{2 * h, 0, 2 * h}, {2 * h, 0}});
  EXPECT_NEAR(u.x, 1.0, 1e-15);
  EXPECT_NEAR(u.y, 0.0, 1e-15);
  u = solve_nodal_system({{h, 0, h}, {h * 3.0, h * -7.0}});
  EXPECT_NEAR(u.x, 3.0, 1e-14);
  EXPECT_NEAR(u.y, -7.0, 1e-14);
}

TEST(SolveNodalSystem, SingularNamesNode) {
  try {
    solve_nodal_system({{0, 0, 0.2}, {0, 1}}, 17);
    FAIL() << "expected SingularSystem";
  } catch (const SingularSystem& e) {
    EXPECT_EQ(e.node(), 17u);
    EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
  }
  EXPECT_THROW(solve_nodal_system({}), SingularSystem);
}

TEST(SolveNodalSystem, ParallelEdgesAreSingular) {
  const std::vector<Vec2> nb{{1, 0}, {-1, 0}};
  const std::vector<Vec2> v{{1, 1}, {1, 1}};
  const auto sys = assemble_nodal_system({0, 0}, nb, v);
  EXPECT_THROW(solve_nodal_system(sys), SingularSystem);
}

TEST(Reconstruct, SingularNodeReportedWithLocation) {
  auto m = build_uniform_mesh({0, 1, 0, 1}, 2, 2);
  std::vector<Vec2> x(m.coords().begin(), m.coords().end());
  x[m.node_index(0, 1)] = {-0.5, 0.0};  // corner edges now collinear
  m = m.with_coords(std::move(x));
  try {
    reconstruct_velocities(m, VelocityField::rotation(), QuadratureRule::Lobatto3);
    FAIL() << "expected SingularSystem";
  } catch (const SingularSystem& e) {
    EXPECT_EQ(e.node(), 0u);
    EXPECT_NE(std::string(e.what()).find("(0, 0)"), std::string::npos);
  }
}

TEST(Reconstruct, AffineFieldIsExactOnDistortedMeshes) {
  const auto u = VelocityField::affine({{0.3, -1.2}, 0.7, -0.4, 1.9, 0.25});
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto m = jittered_mesh({-2, 3, -1, 4}, 12, 0.3, seed);
    for (auto rule : {QuadratureRule::Lobatto3, QuadratureRule::Legendre2}) {
      for (auto st : {Stencil::Bounded, Stencil::PeriodicWrap}) {
        const auto f = reconstruct_velocities(m, u, rule, st);
        for (NodeId q = 0; q < m.num_nodes(); ++q) {
          const Vec2 exact = u(m.position(q));
          EXPECT_NEAR(f.velocity[q].x, exact.x, 1e-12 * (1 + norm(exact)));
          EXPECT_NEAR(f.velocity[q].y, exact.y, 1e-12 * (1 + norm(exact)));
        }
      }
    }
  }
}

TEST(Reconstruct, RigidTranslation) {
  const auto m = jittered_mesh({0, 1, 0, 1}, 6, 0.2, 9);
  const auto f = reconstruct_velocities(m, VelocityField::constant({1, 0}), QuadratureRule::Lobatto3);
  for (const auto& v : f.velocity) {
    EXPECT_NEAR(v.x, 1.0, 1e-14);
    EXPECT_NEAR(v.y, 0.0, 1e-14);
  }
}

TEST(Reconstruct, PeriodicStencilGivesBoundaryNodesFourEdges) {
  const auto m = build_uniform_mesh({0, 1, 0, 1}, 4, 4);
  std::array<Vec2, 4> pos{};
  EXPECT_EQ(node_stencil(m, m.node_index(0, 0), Stencil::PeriodicWrap, pos), 4u);
  EXPECT_NEAR(pos[2].x, -0.25, 1e-15);
  EXPECT_NEAR(pos[3].y, -0.25, 1e-15);
  EXPECT_EQ(node_stencil(m, m.node_index(4, 2), Stencil::PeriodicWrap, pos), 4u);
  EXPECT_NEAR(pos[3].x, 1.25, 1e-15);
  EXPECT_EQ(node_stencil(m, m.node_index(2, 2), Stencil::PeriodicWrap, pos), 4u);
  EXPECT_EQ(node_stencil(m, m.node_index(0, 0), Stencil::Bounded, pos), 2u);
}

TEST(Reconstruct, NormalEquationResidualAndOptimality) {
  const auto m = jittered_mesh({-3, 3, -3, 3}, 16, 0.25, 5);
  const auto u = VelocityField::isentropic_vortex();
  const auto rule = QuadratureRule::Lobatto3;
  const auto f = reconstruct_velocities(m, u, rule);
  std::array<Vec2, 4> pos{}, vel{};
  const double step = 1e-6;
  for (NodeId q = 0; q < m.num_nodes(); ++q) {
    const Vec2 xq = m.position(q);
    const std::size_t k = node_stencil(m, q, Stencil::Bounded, pos);
    for (std::size_t i = 0; i < k; ++i) vel[i] = corrected_endpoint_velocity(rule, u, xq, pos[i]);
    const std::span<const Vec2> p(pos.data(), k), v(vel.data(), k);
    const auto sys = assemble_nodal_system(xq, p, v);
    EXPECT_LE(normal_equation_residual(sys, f.velocity[q]), 1e-12);
    const double f0 = least_squares_objective(xq, p, v, f.velocity[q]);
    for (int dir = 0; dir < 8; ++dir) {
      const double ang = dir * M_PI / 4;
      const Vec2 du{step * std::cos(ang), step * std::sin(ang)};
      EXPECT_GE(least_squares_objective(xq, p, v, f.velocity[q] + du), f0);
    }
  }
}

TEST(Reconstruct, VortexCorrectionIsSecondOrder) {
  const std::vector<std::size_t> ns{50, 100, 200, 400};
  std::vector<double> hs, mags;
  for (std::size_t n : ns) {
    const auto m = build_uniform_mesh(isentropic_vortex_domain(), n, n);
    const auto f = reconstruct_velocities(m, VelocityField::isentropic_vortex(), QuadratureRule::Lobatto3);
    double mx = 0.0;
    for (const auto& c : f.correction) {
      ASSERT_TRUE(std::isfinite(c.x) && std::isfinite(c.y));
      mx = std::max(mx, norm(c));
    }
    hs.push_back(m.hx());
    mags.push_back(mx);
  }
  EXPECT_GE(fit_loglog_slope(hs, mags).value, 1.9);
  EXPECT_GE(std::log2(mags[1] / mags[2]), 1.9);
  EXPECT_GE(std::log2(mags[2] / mags[3]), 1.9);
}

TEST(Reconstruct, CorrectionSmoothnessAndEdgeDefectOrders) {
  const std::vector<std::size_t> ns{100, 200, 400, 800};
  const auto r = correction_slopes(VelocityField::isentropic_vortex(), QuadratureRule::Lobatto3,
                                   isentropic_vortex_domain(), ns);
  EXPECT_GE(r.smoothness.value, 2.9);
  EXPECT_GE(r.high_order.value, 3.8);
}

TEST(Reconstruct, RuleChoiceDiffersAtFourthOrder) {
  std::vector<double> hs, diffs;
  for (std::size_t n : {50, 100, 200, 400}) {
    const auto m = build_uniform_mesh(isentropic_vortex_domain(), n, n);
    const auto u = VelocityField::isentropic_vortex();
    const auto a = reconstruct_velocities(m, u, QuadratureRule::Lobatto3);
    const auto b = reconstruct_velocities(m, u, QuadratureRule::Legendre2);
    double mx = 0.0;
    for (NodeId q = 0; q < m.num_nodes(); ++q) mx = std::max(mx, norm(a.velocity[q] - b.velocity[q]));
    hs.push_back(m.hx());
    diffs.push_back(mx);
  }
  EXPECT_GE(fit_loglog_slope(hs, diffs).value, 3.8);
}

TEST(BoundaryConstraint, Modes) {
  const auto m = build_uniform_mesh({0, 1, 0, 1}, 3, 3);
  NodalVelocityField f;
  f.velocity.assign(m.num_nodes(), Vec2{0.4, -0.7});
  f.correction.assign(m.num_nodes(), Vec2{});

  const auto free = apply_boundary_constraint(m, f, BoundaryMode::Free);
  EXPECT_EQ(free.velocity, f.velocity);

  const auto slide = apply_boundary_constraint(m, f, BoundaryMode::Slide);
  const auto pin = apply_boundary_constraint(m, f, BoundaryMode::Pin);
  for (NodeId q = 0; q < m.num_nodes(); ++q) {
    const auto s = m.boundary(q);
    if (!s.on_boundary()) {
      EXPECT_EQ(slide.velocity[q], f.velocity[q]);
      EXPECT_EQ(pin.velocity[q], f.velocity[q]);
      continue;
    }
    EXPECT_EQ(pin.velocity[q], (Vec2{0, 0}));
    if (s.kind() == NodeKind::Corner) {
      EXPECT_EQ(slide.velocity[q], (Vec2{0, 0}));
    } else if (s.bottom() || s.top()) {
      EXPECT_EQ(slide.velocity[q], (Vec2{0.4, 0.0}));
    } else {
      EXPECT_EQ(slide.velocity[q], (Vec2{0.0, -0.7}));
    }
    EXPECT_EQ(slide.correction[q], slide.velocity[q] - f.velocity[q]);
  }
}

TEST(BoundaryModeNames, RoundTrip) {
  for (auto mode : {BoundaryMode::Free, BoundaryMode::Slide, BoundaryMode::Pin, BoundaryMode::Periodic}) {
    EXPECT_EQ(parse_boundary_mode(to_string(mode)), mode);
  }
  EXPECT_THROW(parse_boundary_mode("reflect"), InvalidConfiguration);
}

}  // namespace
}  // namespace lagmesh
