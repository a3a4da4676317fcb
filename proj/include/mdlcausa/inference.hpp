#pragma once

// Bivariate cause-effect decision by comparing the two factorized codelengths
//   L_{X->Y} = L(X) + L(Y | X)   and   L_{Y->X} = L(Y) + L(X | Y).

#include <cmath>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "mdlcausa/codecs.hpp"
#include "mdlcausa/distributions.hpp"
#include "mdlcausa/error.hpp"

namespace mdlcausa {

enum class Direction { XtoY, YtoX, Undecided };

inline std::string_view direction_label(Direction d) {
  switch (d) {
    case Direction::XtoY: return "X->Y";
    case Direction::YtoX: return "Y->X";
    case Direction::Undecided: break;
  }
  return "undecided";
}

inline constexpr double kDefaultTieEps = 1e-9;
inline constexpr double kDefaultGateAlpha = 0.05;

struct DirectionScore {
  double l_xy = 0.0;
  double l_yx = 0.0;
  double delta = 0.0;  // l_yx - l_xy; positive favours X -> Y
  Direction decision = Direction::Undecided;
  double confidence = 0.0;
  bool dependent = false;
  std::size_t n = 0;
};

struct DirectionCodelengths {
  double l_xy;
  double l_yx;
};

namespace detail {

inline CodecKind oracle_part(const JointTable& truth, Axis cause, bool conditional) {
  if (conditional) return Oracle{condition(truth, cause)};
  return Oracle{marginal(truth, cause)};
}

}  // namespace detail

/// Both factorized codelengths with the same codec. An Oracle codec must carry
/// the true JointTable with col_x indexing its rows.
inline DirectionCodelengths score_direction(const PairedSample& s, std::size_t col_x, std::size_t col_y,
                                            const CodecKind& codec) {
  if (col_x >= s.num_columns() || col_y >= s.num_columns())
    throw InvalidArgument("score_direction: column index out of range");
  const auto cx = CountVector::of(s.column(col_x), s.alphabet_size(col_x));
  const auto cy = CountVector::of(s.column(col_y), s.alphabet_size(col_y));
  if (const auto* oracle = std::get_if<Oracle>(&codec)) {
    const auto* joint = std::get_if<JointTable>(&oracle->truth);
    if (joint == nullptr) throw InvalidArgument("score_direction: Oracle needs the true JointTable");
    if (joint->kx() != cx.alphabet_size() || joint->ky() != cy.alphabet_size())
      throw InvalidArgument("score_direction: Oracle table dimensions do not match the data");
    const double l_xy = marginal_cost(cx, detail::oracle_part(*joint, Axis::X, false)) +
                        conditional_cost(s, col_x, col_y, detail::oracle_part(*joint, Axis::X, true));
    const double l_yx = marginal_cost(cy, detail::oracle_part(*joint, Axis::Y, false)) +
                        conditional_cost(s, col_y, col_x, detail::oracle_part(*joint, Axis::Y, true));
    return {l_xy, l_yx};
  }
  const double l_xy = marginal_cost(cx, codec) + conditional_cost(s, col_x, col_y, codec);
  const double l_yx = marginal_cost(cy, codec) + conditional_cost(s, col_y, col_x, codec);
  return {l_xy, l_yx};
}

struct GTestResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  double degrees_of_freedom = 0.0;
  bool dependent = false;
};

// G = 2 sum O ln(O / E) against the chi-square upper alpha quantile with
// (k_x - 1)(k_y - 1) degrees of freedom.
inline GTestResult g_test(const PairedSample& s, std::size_t col_x, std::size_t col_y, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("dependence_gate: alpha must lie in (0, 1)");
  const auto kx = static_cast<std::size_t>(s.alphabet_size(col_x));
  const auto ky = static_cast<std::size_t>(s.alphabet_size(col_y));
  GTestResult r;
  r.degrees_of_freedom = static_cast<double>((kx - 1) * (ky - 1));
  if (r.degrees_of_freedom == 0.0) return r;

  std::vector<double> cells(kx * ky, 0.0), rows(kx, 0.0), cols(ky, 0.0);
  const auto xs = s.column(col_x);
  const auto ys = s.column(col_y);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto x = static_cast<std::size_t>(xs[i]);
    const auto y = static_cast<std::size_t>(ys[i]);
    cells[x * ky + y] += 1.0;
    rows[x] += 1.0;
    cols[y] += 1.0;
  }
  const double n = static_cast<double>(s.n());
  std::vector<double> terms;
  for (std::size_t x = 0; x < kx; ++x)
    for (std::size_t y = 0; y < ky; ++y) {
      const double o = cells[x * ky + y];
      if (o > 0.0) terms.push_back(o * std::log(o * n / (rows[x] * cols[y])));
    }
  // Sorted so that swapping or relabeling the columns cannot move G by an ulp.
  r.statistic = 2.0 * detail::sorted_sum(std::move(terms));
  const boost::math::chi_squared chi2(r.degrees_of_freedom);
  r.critical_value = boost::math::quantile(boost::math::complement(chi2, alpha));
  r.dependent = r.statistic > r.critical_value;
  return r;
}

inline bool dependence_gate(const PairedSample& s, std::size_t col_x, std::size_t col_y,
                            double alpha = kDefaultGateAlpha) {
  return g_test(s, col_x, col_y, alpha).dependent;
}

inline DirectionScore decide(double l_xy, double l_yx, bool dependent, double eps = kDefaultTieEps) {
  if (!(eps >= 0.0)) throw InvalidArgument("decide: eps must be >= 0");
  DirectionScore out;
  out.l_xy = l_xy;
  out.l_yx = l_yx;
  out.dependent = dependent;
  const bool both_infinite = std::isinf(l_xy) && std::isinf(l_yx);
  out.delta = both_infinite ? 0.0 : l_yx - l_xy;
  if (dependent && out.delta > eps) out.decision = Direction::XtoY;
  else if (dependent && out.delta < -eps) out.decision = Direction::YtoX;
  if (std::isfinite(l_xy) && std::isfinite(l_yx)) {
    const double scale = std::max(l_xy, l_yx);
    out.confidence = scale > 0.0 ? std::abs(out.delta) / scale : 0.0;
  } else {
    out.confidence = 1.0;
  }
  return out;
}

struct InferOptions {
  CodecKind codec = CrudeTwoPart{};
  double eps = kDefaultTieEps;
  double alpha = kDefaultGateAlpha;
  bool gate = true;
};

// Score, gate and decide in one call. With the gate disabled every pair is
// treated as dependent.
inline DirectionScore infer_direction(const PairedSample& s, std::size_t col_x, std::size_t col_y,
                                      const InferOptions& opts = {}) {
  const auto [l_xy, l_yx] = score_direction(s, col_x, col_y, opts.codec);
  const bool dependent = opts.gate ? dependence_gate(s, col_x, col_y, opts.alpha) : true;
  DirectionScore out = decide(l_xy, l_yx, dependent, opts.eps);
  out.n = s.n();
  return out;
}

}  // namespace mdlcausa
