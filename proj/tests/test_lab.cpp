#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mdlcausa/lab.hpp"
#include "oracles.hpp"

namespace mdlcausa {
namespace {

JointTable random_joint(std::uint64_t seed, std::size_t kx, std::size_t ky) {
  Rng rng = make_rng(seed);
  const auto cells = draw_dirichlet(kx * ky, 1.0, rng);
  return JointTable(kx, ky, {cells.probs().begin(), cells.probs().end()});
}

PairedSample deterministic_fixture(std::uint64_t seed) {
  Rng rng = make_rng(seed);
  const auto px = draw_dirichlet(8, 1.0, rng);
  const std::vector<int> parity{0, 1, 0, 1, 0, 1, 0, 1};
  const auto j = discrete_anm(8, 2, parity, CategoricalDistribution::point_mass(2, 0), px);
  return sample(j, 2000, substream(seed, 1));
}

TEST(ExpectedOracleCodelength, Examples) {
  const JointTable uniform(2, 2, {0.25, 0.25, 0.25, 0.25});
  EXPECT_DOUBLE_EQ(expected_oracle_codelength(uniform, Direction::XtoY), 2.0);
  EXPECT_DOUBLE_EQ(expected_oracle_codelength(uniform, Direction::YtoX), 2.0);
  const auto diag = JointTable::from_rows({{0.25, 0.0}, {0.0, 0.75}});
  EXPECT_NEAR(expected_oracle_codelength(diag, Direction::XtoY), 0.8112781244591328, 1e-12);
  EXPECT_NEAR(expected_oracle_codelength(diag, Direction::YtoX), 0.8112781244591328, 1e-12);
  EXPECT_THROW(expected_oracle_codelength(uniform, Direction::Undecided), InvalidArgument);
}

TEST(ExpectedOracleCodelength, EqualsJointEntropyBothWays) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const JointTable j = random_joint(seed, 1 + seed % 8, 1 + (seed / 8) % 8);
    std::vector<double> cells(j.flat().begin(), j.flat().end());
    const double h = testing::direct_entropy(cells);
    EXPECT_NEAR(expected_oracle_codelength(j, Direction::XtoY), h, 1e-9);
    EXPECT_NEAR(expected_oracle_codelength(j, Direction::YtoX), h, 1e-9);
  }
}

TEST(Theorem1Convergence, PointMassHasZeroGap) {
  const auto rows = theorem1_convergence(JointTable(1, 1, {1.0}), {10, 100}, 3, 0);
  ASSERT_EQ(rows.size(), 12u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.value, 0.0);
    EXPECT_EQ(r.reference, 0.0);
    EXPECT_EQ(r.gap, 0.0);
  }
}

TEST(Theorem1Convergence, FairBitsCostExactlyTwoBits) {
  for (const auto& r : theorem1_convergence(JointTable(2, 2, {0.25, 0.25, 0.25, 0.25}), {50}, 4, 3)) {
    EXPECT_DOUBLE_EQ(r.value, 2.0);
    EXPECT_DOUBLE_EQ(r.gap, 0.0);
  }
}

TEST(Theorem1Convergence, RowOrderAndDirectionAgreement) {
  const JointTable j = random_joint(5, 3, 4);
  const auto rows = theorem1_convergence(j, {1000, 100}, 3, 9);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows.front().n, 100u);
  EXPECT_EQ(rows.back().n, 1000u);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    EXPECT_EQ(rows[i].direction, Direction::XtoY);
    EXPECT_EQ(rows[i + 1].direction, Direction::YtoX);
    EXPECT_EQ(rows[i].rep, rows[i + 1].rep);
    EXPECT_NEAR(rows[i].value, rows[i + 1].value, 1e-9);
  }
  EXPECT_THROW(theorem1_convergence(j, {}, 3, 9), InvalidArgument);
  EXPECT_THROW(theorem1_convergence(j, {10}, 0, 9), InvalidArgument);
}

TEST(Theorem1Convergence, GapWithinSamplingError) {
  const JointTable j = random_joint(12, 3, 3);
  const std::size_t n = 100'000;
  const auto rows = theorem1_convergence(j, {n}, 1, 13);
  const double sigma = per_symbol_codelength_stddev(convergence_sample(j, n, 0, 13), j);
  ASSERT_GT(sigma, 0.0);
  for (const auto& r : rows) EXPECT_LE(std::abs(r.gap), 3.0 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST(Theorem1Convergence, DeterministicPerSeed) {
  const JointTable j = random_joint(6, 2, 3);
  const auto a = theorem1_convergence(j, {200}, 2, 4);
  const auto b = theorem1_convergence(j, {200}, 2, 4);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].value, b[i].value);
}

TEST(SymmetryCollapse, JointEncodingIsSymmetric) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = sample(random_joint(seed, 2 + seed % 4, 3), 500, seed + 100);
    const auto r = symmetry_collapse(s, 0, 1);
    EXPECT_EQ(r.l_joint_xy, r.l_joint_yx);
  }
}

TEST(SymmetryCollapse, MatchesHandComputedJointCode) {
  // Cells (0,0)=2, (1,1)=2 of a 2x2 table, n = 4.
  const PairedSample s({{0, 0, 1, 1}, {0, 0, 1, 1}}, {2, 2});
  const auto r = symmetry_collapse(s, 0, 1);
  EXPECT_NEAR(r.l_joint_xy, 1.5 * 2.0 + 4.0, 1e-12);
}

TEST(SymmetryCollapse, FactorizedScoresStayAsymmetricOnDeterministicMechanism) {
  const auto r = symmetry_collapse(deterministic_fixture(500), 0, 1);
  EXPECT_EQ(r.l_joint_xy, r.l_joint_yx);
  EXPECT_GT(r.crude_l_yx - r.crude_l_xy, 1.0);
  // Frozen from the first run of this seeded fixture.
  EXPECT_NEAR(r.l_joint_xy, 5504.7816861368174, 1e-6);
  EXPECT_NEAR(r.crude_l_xy, 5491.2975973589237, 1e-6);
  EXPECT_NEAR(r.crude_l_yx, 5497.4872458976597, 1e-6);
}

TEST(SymmetryCollapse, IndependentDataNearlyTies) {
  const auto s = sample(JointTable(3, 3, std::vector<double>(9, 1.0 / 9.0)), 2000, 77);
  const auto r = symmetry_collapse(s, 0, 1);
  EXPECT_LT(std::abs(r.crude_l_xy - r.crude_l_yx), 1.0);
}

}  // namespace
}  // namespace mdlcausa
