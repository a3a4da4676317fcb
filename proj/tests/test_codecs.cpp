#include <gtest/gtest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "mdlcausa/codecs.hpp"
#include "mdlcausa/infotheory.hpp"
#include "oracles.hpp"

namespace mdlcausa {
namespace {

TEST(DataCostMle, Examples) {
  EXPECT_DOUBLE_EQ(data_cost_mle(CountVector({2, 2})), 4.0);
  EXPECT_EQ(data_cost_mle(CountVector({4, 0})), 0.0);
  EXPECT_NEAR(data_cost_mle(CountVector({3, 1})), 3.2451124978365313, 1e-12);
  EXPECT_THROW(data_cost_mle(CountVector({0, 0})), InvalidArgument);
}

TEST(DataCostMle, EqualsNTimesEmpiricalEntropy) {
  Rng rng = make_rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::int64_t> c(1 + rng() % 8);
    double n = 0;
    for (auto& v : c) n += static_cast<double>(v = static_cast<std::int64_t>(rng() % 50));
    if (n == 0) continue;
    std::vector<double> p;
    for (auto v : c) p.push_back(static_cast<double>(v) / n);
    EXPECT_NEAR(data_cost_mle(CountVector(c)), n * testing::direct_entropy(p), 1e-9);
  }
}

TEST(ModelCostCrude, Examples) {
  EXPECT_EQ(model_cost_crude(1, 12345), 0.0);
  EXPECT_NEAR(model_cost_crude(2, 100), 3.321928094887362, 1e-12);
  EXPECT_DOUBLE_EQ(model_cost_crude(3, 4), 2.0);
  EXPECT_THROW(model_cost_crude(0, 4), InvalidArgument);
}

TEST(NmlComplexity, Examples) {
  for (int n : {0, 1, 7, 1000}) EXPECT_EQ(nml_complexity(1, n), 1.0);
  for (int k : {1, 2, 9}) EXPECT_EQ(nml_complexity(k, 0), 1.0);
  EXPECT_NEAR(nml_complexity(2, 2), 2.5, 1e-12);
  EXPECT_NEAR(testing::brute_force_comp(2, 2), 2.5, 1e-15);
}

TEST(NmlComplexity, MatchesBruteForceSum) {
  for (int k = 1; k <= 4; ++k)
    for (int n = 0; n <= 12; ++n) {
      const double expected = testing::brute_force_comp(k, n);
      EXPECT_NEAR(nml_complexity(k, n), expected, 1e-9 * expected) << "k=" << k << " n=" << n;
      EXPECT_NEAR(std::exp2(nml_regret_recurrence(k, n)), expected, 1e-9 * expected) << "k=" << k << " n=" << n;
    }
}

TEST(NmlComplexity, RecurrenceAgreesWithEnumerationBeyondOracleRange) {
  const std::vector<std::pair<std::int64_t, std::int64_t>> cases{{2, 20}, {2, 100}, {3, 50}, {3, 100},
                                                                  {5, 20}, {5, 100}, {8, 20}};
  for (const auto& [k, n] : cases) {
    const double enumerated = detail::log2_comp_enumerated(k, n);
    EXPECT_NEAR(nml_regret_recurrence(k, n), enumerated, 1e-10 * std::max(1.0, enumerated));
  }
}

TEST(NmlComplexity, MonotoneInKAndN) {
  for (std::int64_t k = 1; k <= 6; ++k)
    for (std::int64_t n = 0; n <= 40; ++n) {
      EXPECT_LE(nml_regret_bits(k, n), nml_regret_bits(k + 1, n) + 1e-12);
      EXPECT_LE(nml_regret_bits(k, n), nml_regret_bits(k, n + 1) + 1e-12);
    }
}

TEST(NmlComplexity, LargeInputsStayFiniteInLogDomain) {
  const double regret = nml_regret_bits(1000, 1'000'000);
  EXPECT_TRUE(std::isfinite(regret));
  EXPECT_GT(regret, 0.0);
}

TEST(NmlComplexity, ResourceGuard) {
  NmlLimits tight;
  tight.max_n = 100;
  EXPECT_THROW(nml_regret_bits(3, 101, tight), ResourceLimitError);
  EXPECT_THROW(nml_regret_bits(0, 10), InvalidArgument);
  EXPECT_THROW(nml_complexity(100'000, 1'000'000), ResourceLimitError);  // overflows double
}

TEST(NmlComplexity, ConcurrentCallsAgree) {
  std::vector<double> results(8, 0.0);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t)
    threads.emplace_back([&, t] { results[t] = nml_regret_bits(7, 3000 + static_cast<std::int64_t>(t % 2)); });
  for (auto& th : threads) th.join();
  for (std::size_t t = 2; t < results.size(); ++t) EXPECT_EQ(results[t], results[t % 2]);
}

TEST(MarginalCost, Examples) {
  EXPECT_DOUBLE_EQ(marginal_cost(CountVector({2, 2}), Oracle{CategoricalDistribution({0.5, 0.5})}), 4.0);
  EXPECT_NEAR(marginal_cost(CountVector({50, 50}), CrudeTwoPart{}), 100.0 + 3.321928094887362, 1e-9);
  EXPECT_NEAR(marginal_cost(CountVector({1, 1}), Nml{}), 3.3219280948873626, 1e-12);
}

TEST(MarginalCost, OracleMisfitIsInfinite) {
  const double cost = marginal_cost(CountVector({3, 1}), Oracle{CategoricalDistribution({1.0, 0.0})});
  EXPECT_TRUE(std::isinf(cost));
  EXPECT_GT(cost, 0.0);
  EXPECT_THROW(marginal_cost(CountVector({1, 1}), Oracle{ConditionalTable({CategoricalDistribution({1.0})})}),
               InvalidArgument);
}

TEST(MarginalCost, OracleNeverBeatsMle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng = make_rng(seed);
    const auto p = draw_dirichlet(4, 1.5, rng);
    std::vector<std::int64_t> c(4);
    for (auto& v : c) v = static_cast<std::int64_t>(rng() % 30);
    const CountVector counts(c);
    if (counts.n() == 0) continue;
    EXPECT_GE(marginal_cost(counts, Oracle{p}), data_cost_mle(counts) - 1e-9);
  }
}

TEST(ConditionalCost, Examples) {
  // Target constant inside every block, k_target = 1.
  const PairedSample constant({{0, 1, 2, 0, 1}, {0, 0, 0, 0, 0}}, {3, 1});
  EXPECT_EQ(conditional_cost(constant, 0, 1, CrudeTwoPart{}), 0.0);

  // A constant conditioning column reduces to the marginal cost of the target.
  const PairedSample single({{0, 0, 0, 0, 0, 0}, {0, 1, 1, 2, 0, 1}}, {1, 3});
  for (const CodecKind& codec : {CodecKind{CrudeTwoPart{}}, CodecKind{Nml{}}})
    EXPECT_EQ(conditional_cost(single, 0, 1, codec), marginal_cost(CountVector::of(single.column(1), 3), codec));

  // Oracle on a deterministic mechanism costs nothing.
  const ConditionalTable identity({CategoricalDistribution({1.0, 0.0}), CategoricalDistribution({0.0, 1.0})});
  const PairedSample det({{0, 1, 1, 0}, {0, 1, 1, 0}}, {2, 2});
  EXPECT_EQ(conditional_cost(det, 0, 1, Oracle{identity}), 0.0);
}

TEST(ConditionalCost, CrudeUsesPerBlockSampleSize) {
  // Blocks x=0: y={0,1,1} (n=3); x=1: y={0} (n=1); x=2 empty.
  const PairedSample s({{0, 0, 0, 1}, {0, 1, 1, 0}}, {3, 2});
  const double expected = model_cost_crude(2, 3) + data_cost_mle(CountVector({1, 2})) + model_cost_crude(2, 1) + 0.0;
  EXPECT_NEAR(conditional_cost(s, 0, 1, CrudeTwoPart{}), expected, 1e-12);
}

TEST(ConditionalCost, RelabelingInvariantBitExact) {
  Rng rng = make_rng(8);
  std::vector<int> x(3000), y(3000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<int>(rng() % 5);
    y[i] = (x[i] + static_cast<int>(rng() % 3)) % 4;
  }
  const std::vector<int> px{3, 0, 4, 1, 2}, py{2, 3, 0, 1};
  std::vector<int> x2(x.size()), y2(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x2[i] = px[static_cast<std::size_t>(x[i])];
    y2[i] = py[static_cast<std::size_t>(y[i])];
  }
  const PairedSample a({x, y}, {5, 4}), b({x2, y2}, {5, 4});
  for (const CodecKind& codec : {CodecKind{CrudeTwoPart{}}, CodecKind{Nml{}}}) {
    EXPECT_EQ(conditional_cost(a, 0, 1, codec), conditional_cost(b, 0, 1, codec));
    EXPECT_EQ(conditional_cost(a, 1, 0, codec), conditional_cost(b, 1, 0, codec));
  }
}

TEST(ConditionalCost, AllCostsNonNegativeAndFinite) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed);
    std::vector<int> x(200), y(200);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = static_cast<int>(rng() % 3);
      y[i] = static_cast<int>(rng() % 4);
    }
    const PairedSample s({x, y}, {3, 4});
    for (const CodecKind& codec : {CodecKind{CrudeTwoPart{}}, CodecKind{Nml{}}}) {
      const double c = conditional_cost(s, 0, 1, codec);
      EXPECT_GE(c, 0.0);
      EXPECT_TRUE(std::isfinite(c));
    }
  }
}

}  // namespace
}  // namespace mdlcausa
