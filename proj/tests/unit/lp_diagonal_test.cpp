#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wiretap/linalg.hpp"
#include "wiretap/lp_diagonal.hpp"

namespace {

using namespace wiretap;

WiretapProblem single_user(std::initializer_list<double> gains, double budget) {
  WiretapProblem p;
  p.antennas = gains.size();
  p.power_budget = budget;
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.antennas), static_cast<Eigen::Index>(p.antennas));
  Eigen::Index i = 0;
  for (double g : gains) h(i, i) = g, ++i;
  p.user_cov.push_back(h);
  return p;
}

ConstraintThresholds floor_only(double a) { return {a, std::numeric_limits<double>::infinity(), 1.0}; }

TEST(SolveDiagonal, SingleConstraintBinds) {
  const auto alloc = solve_diagonal(single_user({1.0}, 10.0), floor_only(5.0));
  ASSERT_TRUE(alloc);
  ASSERT_EQ(alloc->power.size(), 1u);
  EXPECT_NEAR(alloc->power[0], 5.0, 1e-12);
  EXPECT_NEAR(alloc->total, 5.0, 1e-12);
}

TEST(SolveDiagonal, StrongestAntennaWins) {
  const WiretapProblem p = single_user({2.0, 1.0}, 10.0);
  const auto alloc = solve_diagonal(p, floor_only(6.0));
  ASSERT_TRUE(alloc);
  EXPECT_NEAR(alloc->power[0], 3.0, 1e-12);
  EXPECT_NEAR(alloc->power[1], 0.0, 1e-12);
  EXPECT_NEAR(alloc->total, 3.0, 1e-12);

  const auto v = oracle::lp_vertices({1.0, 1.0}, {{1.0, 1.0}, {2.0, 1.0}}, {-1, 1}, {10.0, 6.0});
  ASSERT_TRUE(v);
  EXPECT_NEAR(alloc->total, v->objective, 1e-12);
}

TEST(SolveDiagonal, FloorAboveBudgetIsInfeasible) {
  EXPECT_FALSE(solve_diagonal(single_user({1.0}, 4.0), floor_only(5.0)));
}

TEST(SolveDiagonal, RejectsCorrelatedCovariances) {
  EXPECT_THROW(solve_diagonal(reference_problem(1), thresholds_gaussian(reference_problem(1), {0.5, 0.1})),
               NotDiagonal);
  EXPECT_FALSE(all_diagonal(reference_problem(1)));
  EXPECT_TRUE(all_diagonal(reference_problem(3, true)));
}

TEST(SolveDiagonal, ReferenceDiagonalInstancesMatchVertexEnumeration) {
  for (std::size_t j = 1; j <= 3; ++j) {
    const WiretapProblem p = reference_problem(j, true);
    for (double rd = 0.2; rd <= 1.4; rd += 0.3) {
      for (double frac : {0.0, 0.3, 0.6, 0.9}) {
        const auto t = thresholds_gaussian(p, {rd, frac * rd});
        std::vector<std::vector<double>> rows{{1.0, 1.0, 1.0}};
        std::vector<int> sense{-1};
        std::vector<double> rhs{p.power_budget};
        for (const auto& h : p.user_cov) {
          rows.push_back({h(0, 0).real(), h(1, 1).real(), h(2, 2).real()});
          sense.push_back(1);
          rhs.push_back(t.floor);
        }
        for (const auto& z : p.eve_cov) {
          rows.push_back({z(0, 0).real(), z(1, 1).real(), z(2, 2).real()});
          sense.push_back(-1);
          rhs.push_back(t.ceiling);
        }
        const auto v = oracle::lp_vertices({1.0, 1.0, 1.0}, rows, sense, rhs);
        const auto alloc = solve_diagonal(p, t);
        ASSERT_EQ(v.has_value(), alloc.has_value()) << "J=" << j << " rd=" << rd << " frac=" << frac;
        if (v) EXPECT_NEAR(alloc->total, v->objective, 1e-9 * v->objective);
      }
    }
  }
}

TEST(AllocationToBeamformer, SquareRoots) {
  const ComplexVector w = allocation_to_beamformer({{4.0, 0.0, 1.0}, 5.0});
  ASSERT_EQ(w.size(), 3);
  EXPECT_DOUBLE_EQ(w(0).real(), 2.0);
  EXPECT_DOUBLE_EQ(w(1).real(), 0.0);
  EXPECT_DOUBLE_EQ(w(2).real(), 1.0);
  EXPECT_EQ(w.imag().norm(), 0.0);

  const ComplexVector zero = allocation_to_beamformer({{0.0, 0.0, 0.0, 0.0}, 0.0});
  EXPECT_EQ(zero.norm(), 0.0);
}

TEST(AllocationToBeamformer, QuadFormIsWeightedPowerSum) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    PowerAllocation alloc;
    ComplexMatrix h = ComplexMatrix::Zero(4, 4);
    double expected = 0.0;
    for (int m = 0; m < 4; ++m) {
      alloc.power.push_back(u(rng));
      h(m, m) = u(rng);
      expected += alloc.power[m] * h(m, m).real();
      alloc.total += alloc.power[m];
    }
    const double q = linalg::quad_form(allocation_to_beamformer(alloc), h);
    EXPECT_NEAR(q, expected, 1e-12 * std::max(1.0, expected));
  }
}

}  // namespace
