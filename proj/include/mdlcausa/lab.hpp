#pragma once

// Executable checks of the expected-codelength identity behind two-part MDL
// causal inference:
//
//   E[-log2 P_X(x) - log2 P_{Y|X}(y|x)] = H(P_XY) = E[-log2 P_Y(y) - log2 P_{X|Y}(x|y)]
//
// i.e. once the (uncomputable) model terms K(P_X) + K(P_{Y|X}) are set aside,
// both factorizations spend exactly the joint entropy on the data. The
// direction-dependent part of a score therefore lives entirely in the model
// terms. The lab also shows how a joint, data-dependent model encoding makes
// that asymmetry disappear.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "mdlcausa/codecs.hpp"
#include "mdlcausa/distributions.hpp"
#include "mdlcausa/inference.hpp"
#include "mdlcausa/infotheory.hpp"
#include "mdlcausa/random.hpp"

namespace mdlcausa {

struct LabRow {
  std::string experiment;
  std::size_t n = 0;
  std::size_t rep = 0;
  Direction direction = Direction::XtoY;
  double value = 0.0;      // bits (per symbol for convergence rows)
  double reference = 0.0;  // analytic target, bits
  double gap = 0.0;        // value - reference
};

// Expected ideal codelength of one (x, y) draw under the factorization named
// by `direction`, with the true distributions as the code.
inline double expected_oracle_codelength(const JointTable& j, Direction direction) {
  if (direction == Direction::Undecided)
    throw InvalidArgument("expected_oracle_codelength: direction must be X->Y or Y->X");
  const JointTable oriented = direction == Direction::XtoY ? j : j.transposed();
  const CategoricalDistribution cause = marginal(oriented, Axis::X);
  const ConditionalTable mechanism = condition(oriented, Axis::X);
  double total = 0.0;
  for (std::size_t c = 0; c < oriented.kx(); ++c)
    for (std::size_t e = 0; e < oriented.ky(); ++e) {
      const double p = oriented(c, e);
      if (p < kZeroProb) continue;
      total += p * (-std::log2(cause[c]) - std::log2(mechanism(c, e)));
    }
  return total;
}

// Seed of the (n, rep) sample drawn by theorem1_convergence.
inline std::uint64_t convergence_seed(std::uint64_t seed, std::size_t n, std::size_t rep) {
  return substream(substream(seed, n), rep);
}

inline PairedSample convergence_sample(const JointTable& j, std::size_t n, std::size_t rep, std::uint64_t seed) {
  return sample(j, n, convergence_seed(seed, n, rep));
}

// Total Oracle codelength of the sample under the true factorization.
inline double oracle_codelength(const PairedSample& s, const JointTable& j, Direction direction) {
  const auto [l_xy, l_yx] = score_direction(s, 0, 1, Oracle{j});
  return direction == Direction::YtoX ? l_yx : l_xy;
}

// Sample standard deviation of the per-draw ideal codelength -log2 P(x_i, y_i).
inline double per_symbol_codelength_stddev(const PairedSample& s, const JointTable& j) {
  const auto xs = s.column(0);
  const auto ys = s.column(1);
  const auto n = static_cast<double>(s.n());
  if (s.n() < 2) return 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i)
    mean += -std::log2(j(static_cast<std::size_t>(xs[i]), static_cast<std::size_t>(ys[i])));
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < s.n(); ++i) {
    const double d = -std::log2(j(static_cast<std::size_t>(xs[i]), static_cast<std::size_t>(ys[i]))) - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (n - 1.0));
}

/// Per-symbol Oracle codelength in both directions against H(P_XY), for every
/// n in the grid and every repetition. Rows are sorted by (n, rep, direction).
inline std::vector<LabRow> theorem1_convergence(const JointTable& j, std::vector<std::size_t> n_grid,
                                                std::size_t reps, std::uint64_t seed) {
  if (n_grid.empty()) throw InvalidArgument("theorem1_convergence: empty n grid");
  if (reps == 0) throw InvalidArgument("theorem1_convergence: reps must be >= 1");
  std::sort(n_grid.begin(), n_grid.end());
  const double reference = joint_entropy(j);
  std::vector<LabRow> rows;
  for (std::size_t n : n_grid)
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const PairedSample s = convergence_sample(j, n, rep, seed);
      const auto [l_xy, l_yx] = score_direction(s, 0, 1, Oracle{j});
      for (auto [dir, total] : {std::pair{Direction::XtoY, l_xy}, std::pair{Direction::YtoX, l_yx}}) {
        const double value = total / static_cast<double>(n);
        rows.push_back({"theorem1", n, rep, dir, value, reference, value - reference});
      }
    }
  return rows;
}

struct SymmetryCollapse {
  double l_joint_xy = 0.0;
  double l_joint_yx = 0.0;
  double crude_l_xy = 0.0;
  double crude_l_yx = 0.0;
};

namespace detail {

// Empirical-joint two-part code: (k_x k_y - 1)/2 log2 n + n H(P^_XY).
// `x_major` only changes the order in which cells are listed.
inline double leaky_joint_cost(const PairedSample& s, std::size_t col_x, std::size_t col_y, bool x_major) {
  const auto kx = static_cast<std::size_t>(s.alphabet_size(col_x));
  const auto ky = static_cast<std::size_t>(s.alphabet_size(col_y));
  std::vector<std::int64_t> counts(kx * ky, 0);
  const auto xs = s.column(col_x);
  const auto ys = s.column(col_y);
  for (std::size_t i = 0; i < s.n(); ++i) {
    const auto x = static_cast<std::size_t>(xs[i]);
    const auto y = static_cast<std::size_t>(ys[i]);
    ++counts[x_major ? x * ky + y : y * kx + x];
  }
  const auto n = static_cast<std::int64_t>(s.n());
  return model_cost_crude(static_cast<std::int64_t>(kx * ky), n) + data_cost_mle(CountVector(std::move(counts)));
}

}  // namespace detail

/// Scores both directions with a joint description of model and data, where
/// the conditional model is allowed to depend on the conditioning data, and
/// attaches the factorized crude two-part scores for contrast.
inline SymmetryCollapse symmetry_collapse(const PairedSample& s, std::size_t col_x, std::size_t col_y) {
  SymmetryCollapse out;
  out.l_joint_xy = detail::leaky_joint_cost(s, col_x, col_y, true);
  out.l_joint_yx = detail::leaky_joint_cost(s, col_x, col_y, false);
  const auto [l_xy, l_yx] = score_direction(s, col_x, col_y, CrudeTwoPart{});
  out.crude_l_xy = l_xy;
  out.crude_l_yx = l_yx;
  return out;
}

}  // namespace mdlcausa
