#pragma once

// Shannon quantities in bits. Probabilities below kZeroProb count as exact
// zeros (0 log 0 = 0).

#include <cmath>
#include <span>
#include <vector>

#include "mdlcausa/distributions.hpp"

namespace mdlcausa {

inline constexpr double kZeroProb = 1e-15;

inline double entropy_bits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs)
    if (p >= kZeroProb) h -= p * std::log2(p);
  return h;
}

inline double entropy(const CategoricalDistribution& p) { return entropy_bits(p.probs()); }

inline double joint_entropy(const JointTable& j) { return entropy_bits(j.flat()); }

// H(other | given) = sum_g P(g) H(P_{other | given = g}).
inline double conditional_entropy(const JointTable& j, Axis given_axis) {
  const CategoricalDistribution m = marginal(j, given_axis);
  const ConditionalTable cond = condition(j, given_axis);
  double h = 0.0;
  for (std::size_t g = 0; g < m.alphabet_size(); ++g)
    if (m[g] >= kZeroProb) h += m[g] * entropy(cond.row(g));
  return h;
}

// H(X) + H(Y) - H(X, Y), clamped at zero against rounding.
inline double mutual_information(const JointTable& j) {
  const double mi = entropy(marginal(j, Axis::X)) + entropy(marginal(j, Axis::Y)) - joint_entropy(j);
  return mi > 0.0 ? mi : 0.0;
}

// Plug-in estimate of P(col_x, col_y): cell counts divided by n.
inline JointTable empirical_joint(const PairedSample& s, std::size_t col_x, std::size_t col_y) {
  const auto xs = s.column(col_x);
  const auto ys = s.column(col_y);
  const auto kx = static_cast<std::size_t>(s.alphabet_size(col_x));
  const auto ky = static_cast<std::size_t>(s.alphabet_size(col_y));
  std::vector<double> counts(kx * ky, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    counts[static_cast<std::size_t>(xs[i]) * ky + static_cast<std::size_t>(ys[i])] += 1.0;
  const double n = static_cast<double>(s.n());
  for (auto& c : counts) c /= n;
  return JointTable(kx, ky, std::move(counts));
}

}  // namespace mdlcausa
