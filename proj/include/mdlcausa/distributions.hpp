#pragma once

// Discrete distributions, their two-variable factorizations, and seeded
// synthetic data under independently drawn mechanisms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdlcausa/error.hpp"
#include "mdlcausa/random.hpp"

namespace mdlcausa {

// Absolute tolerance for every normalization check.
inline constexpr double kProbTolerance = 1e-12;

enum class Axis { X, Y };

namespace detail {

inline void check_probability_vector(std::span<const double> probs, const char* what) {
  if (probs.empty()) throw InvalidArgument(std::string(what) + ": empty probability vector");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw InvalidArgument(std::string(what) + ": probabilities must be finite and non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance)
    throw InvalidArgument(std::string(what) + ": probabilities sum to " + std::to_string(total));
}

}  // namespace detail

/// Probability vector over the alphabet {0, ..., k-1}.
class CategoricalDistribution {
 public:
  explicit CategoricalDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    detail::check_probability_vector(probs_, "CategoricalDistribution");
  }

  static CategoricalDistribution uniform(std::size_t k) {
    if (k == 0) throw InvalidArgument("CategoricalDistribution: alphabet size must be >= 1");
    return CategoricalDistribution(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  }

  static CategoricalDistribution point_mass(std::size_t k, std::size_t at) {
    if (at >= k) throw InvalidArgument("CategoricalDistribution: point mass outside alphabet");
    std::vector<double> p(k, 0.0);
    p[at] = 1.0;
    return CategoricalDistribution(std::move(p));
  }

  std::size_t alphabet_size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  friend bool operator==(const CategoricalDistribution&, const CategoricalDistribution&) = default;

 private:
  std::vector<double> probs_;
};

/// One categorical distribution per value of a conditioning variable.
/// Rows produced from a zero-mass conditioning value are marked unreachable
/// and hold the uniform distribution.
class ConditionalTable {
 public:
  explicit ConditionalTable(std::vector<CategoricalDistribution> rows,
                            std::vector<bool> unreachable = {})
      : rows_(std::move(rows)), unreachable_(std::move(unreachable)) {
    if (rows_.empty()) throw InvalidArgument("ConditionalTable: needs at least one row");
    const std::size_t k = rows_.front().alphabet_size();
    for (const auto& r : rows_)
      if (r.alphabet_size() != k)
        throw InvalidArgument("ConditionalTable: rows have different alphabet sizes");
    if (unreachable_.empty()) unreachable_.assign(rows_.size(), false);
    if (unreachable_.size() != rows_.size())
      throw InvalidArgument("ConditionalTable: unreachable flags do not match row count");
  }

  std::size_t cond_alphabet_size() const noexcept { return rows_.size(); }
  std::size_t alphabet_size() const noexcept { return rows_.front().alphabet_size(); }
  const CategoricalDistribution& row(std::size_t given) const { return rows_.at(given); }
  const std::vector<CategoricalDistribution>& rows() const noexcept { return rows_; }
  bool unreachable(std::size_t given) const { return unreachable_.at(given); }
  double operator()(std::size_t given, std::size_t value) const { return rows_[given][value]; }

 private:
  std::vector<CategoricalDistribution> rows_;
  std::vector<bool> unreachable_;
};

/// Joint probability table P(x, y), stored row-major with x indexing rows.
class JointTable {
 public:
  JointTable(std::size_t kx, std::size_t ky, std::vector<double> probs)
      : kx_(kx), ky_(ky), probs_(std::move(probs)) {
    if (kx_ == 0 || ky_ == 0) throw InvalidArgument("JointTable: alphabet sizes must be >= 1");
    if (probs_.size() != kx_ * ky_) throw InvalidArgument("JointTable: size mismatch");
    detail::check_probability_vector(probs_, "JointTable");
  }

  static JointTable from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidArgument("JointTable: no rows");
    std::vector<double> flat;
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) throw InvalidArgument("JointTable: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return JointTable(rows.size(), rows.front().size(), std::move(flat));
  }

  std::size_t kx() const noexcept { return kx_; }
  std::size_t ky() const noexcept { return ky_; }
  double operator()(std::size_t x, std::size_t y) const { return probs_[x * ky_ + y]; }
  std::span<const double> flat() const noexcept { return probs_; }

  JointTable transposed() const {
    std::vector<double> t(probs_.size());
    for (std::size_t x = 0; x < kx_; ++x)
      for (std::size_t y = 0; y < ky_; ++y) t[y * kx_ + x] = probs_[x * ky_ + y];
    return JointTable(ky_, kx_, std::move(t));
  }

  bool operator==(const JointTable&) const = default;

 private:
  std::size_t kx_;
  std::size_t ky_;
  std::vector<double> probs_;
};

/// n observations of integer-coded columns; column i takes values in
/// {0, ..., alphabet_size(i) - 1}.
class PairedSample {
 public:
  PairedSample(std::vector<std::vector<int>> columns, std::vector<int> alphabet_sizes)
      : columns_(std::move(columns)), alphabet_sizes_(std::move(alphabet_sizes)) {
    if (columns_.empty()) throw InvalidArgument("PairedSample: no columns");
    if (columns_.size() != alphabet_sizes_.size())
      throw InvalidArgument("PairedSample: one alphabet size per column required");
    const std::size_t n = columns_.front().size();
    if (n == 0) throw InvalidArgument("PairedSample: needs at least one observation");
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (columns_[c].size() != n) throw InvalidArgument("PairedSample: columns differ in length");
      if (alphabet_sizes_[c] < 1) throw InvalidArgument("PairedSample: alphabet size must be >= 1");
      for (int v : columns_[c])
        if (v < 0 || v >= alphabet_sizes_[c])
          throw InvalidArgument("PairedSample: value " + std::to_string(v) +
                                " outside alphabet of column " + std::to_string(c));
    }
  }

  std::size_t n() const noexcept { return columns_.front().size(); }
  std::size_t num_columns() const noexcept { return columns_.size(); }
  std::span<const int> column(std::size_t c) const { return columns_.at(c); }
  int alphabet_size(std::size_t c) const { return alphabet_sizes_.at(c); }
  const std::vector<int>& alphabet_sizes() const noexcept { return alphabet_sizes_; }

  // Sub-sample holding the given columns, in the given order.
  PairedSample select(std::span<const std::size_t> cols) const {
    std::vector<std::vector<int>> out;
    std::vector<int> ks;
    for (std::size_t c : cols) {
      out.emplace_back(column(c).begin(), column(c).end());
      ks.push_back(alphabet_size(c));
    }
    return PairedSample(std::move(out), std::move(ks));
  }

  friend bool operator==(const PairedSample&, const PairedSample&) = default;

 private:
  std::vector<std::vector<int>> columns_;
  std::vector<int> alphabet_sizes_;
};

// P(x, y) = P(x) P(y | x).
inline JointTable joint_from_factorization(const CategoricalDistribution& px,
                                           const ConditionalTable& pyx) {
  if (pyx.cond_alphabet_size() != px.alphabet_size())
    throw InvalidArgument("joint_from_factorization: conditional table has " +
                          std::to_string(pyx.cond_alphabet_size()) + " rows, marginal has " +
                          std::to_string(px.alphabet_size()) + " symbols");
  const std::size_t kx = px.alphabet_size();
  const std::size_t ky = pyx.alphabet_size();
  std::vector<double> probs(kx * ky);
  for (std::size_t x = 0; x < kx; ++x)
    for (std::size_t y = 0; y < ky; ++y) probs[x * ky + y] = px[x] * pyx(x, y);
  return JointTable(kx, ky, std::move(probs));
}

inline CategoricalDistribution marginal(const JointTable& joint, Axis axis) {
  const bool rows = axis == Axis::X;
  std::vector<double> m(rows ? joint.kx() : joint.ky(), 0.0);
  for (std::size_t x = 0; x < joint.kx(); ++x)
    for (std::size_t y = 0; y < joint.ky(); ++y) m[rows ? x : y] += joint(x, y);
  return CategoricalDistribution(std::move(m));
}

// Conditional of the other variable given `given_axis`.
inline ConditionalTable condition(const JointTable& joint, Axis given_axis) {
  const JointTable oriented = given_axis == Axis::X ? joint : joint.transposed();
  const CategoricalDistribution m = marginal(oriented, Axis::X);
  const std::size_t k = oriented.ky();
  std::vector<CategoricalDistribution> rows;
  std::vector<bool> unreachable;
  rows.reserve(oriented.kx());
  for (std::size_t g = 0; g < oriented.kx(); ++g) {
    if (m[g] <= 0.0) {
      rows.push_back(CategoricalDistribution::uniform(k));
      unreachable.push_back(true);
      continue;
    }
    std::vector<double> r(k);
    for (std::size_t v = 0; v < k; ++v) r[v] = oriented(g, v) / m[g];
    rows.emplace_back(std::move(r));
    unreachable.push_back(false);
  }
  return ConditionalTable(std::move(rows), std::move(unreachable));
}

// Index drawn by inverse CDF; never returns a zero-probability index.
inline std::size_t draw_index(std::span<const double> cdf, std::span<const double> probs,
                              Rng& rng) {
  const double u = uniform01(rng) * cdf.back();
  std::size_t i = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  if (i >= probs.size()) i = probs.size() - 1;
  while (probs[i] <= 0.0 && i > 0) --i;
  while (probs[i] <= 0.0 && i + 1 < probs.size()) ++i;
  return i;
}

/// n i.i.d. draws (x, y) from `joint`, inverse CDF over the flattened table.
inline PairedSample sample(const JointTable& joint, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample: n must be >= 1");
  const auto probs = joint.flat();
  std::vector<double> cdf(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cdf.begin());
  Rng rng = make_rng(seed);
  std::vector<int> xs(n), ys(n);
  const auto ky = joint.ky();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cell = draw_index(cdf, probs, rng);
    xs[i] = static_cast<int>(cell / ky);
    ys[i] = static_cast<int>(cell % ky);
  }
  return PairedSample({std::move(xs), std::move(ys)},
                      {static_cast<int>(joint.kx()), static_cast<int>(ky)});
}

/// Symmetric Dirichlet(alpha, ..., alpha) over k symbols via normalized Gamma draws.
inline CategoricalDistribution draw_dirichlet(std::size_t k, double alpha, Rng& rng) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("draw_dirichlet: concentration must be positive");
  if (k == 0) throw InvalidArgument("draw_dirichlet: alphabet size must be >= 1");
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> g(k);
  double total = 0.0;
  // Very small alpha can underflow every draw to zero; redraw in that case.
  for (int attempt = 0; attempt < 64 && !(total > 0.0); ++attempt) {
    total = 0.0;
    for (auto& v : g) total += (v = gamma(rng));
  }
  if (!(total > 0.0)) return CategoricalDistribution::point_mass(k, 0);
  for (auto& v : g) v /= total;
  // Push the rounding residue onto the largest entry so the sum is 1 to ~1 ulp.
  const double residue = 1.0 - std::accumulate(g.begin(), g.end(), 0.0);
  *std::max_element(g.begin(), g.end()) += residue;
  return CategoricalDistribution(std::move(g));
}

/// P_X and each row of P_{Y|X} drawn independently from symmetric Dirichlets.
inline std::pair<CategoricalDistribution, ConditionalTable> random_mechanism_pair(
    std::size_t kx, std::size_t ky, double alpha, std::uint64_t seed) {
  if (kx < 2 || ky < 2) throw InvalidArgument("random_mechanism_pair: alphabets must be >= 2");
  if (!(alpha > 0.0)) throw InvalidArgument("random_mechanism_pair: alpha must be > 0");
  Rng cause_rng = make_rng(substream(seed, 0));
  CategoricalDistribution px = draw_dirichlet(kx, alpha, cause_rng);
  std::vector<CategoricalDistribution> rows;
  rows.reserve(kx);
  for (std::size_t x = 0; x < kx; ++x) {
    Rng row_rng = make_rng(substream(seed, 1 + x));
    rows.push_back(draw_dirichlet(ky, alpha, row_rng));
  }
  return {std::move(px), ConditionalTable(std::move(rows))};
}

/// Discrete additive noise model Y = (f(X) + N) mod k_y with N independent of X.
/// `f[x]` is the image of x.
inline JointTable discrete_anm(std::size_t kx, std::size_t ky, std::span<const int> f,
                               const CategoricalDistribution& noise,
                               const CategoricalDistribution& px) {
  if (f.size() != kx) throw InvalidArgument("discrete_anm: function table must have k_x entries");
  for (int v : f)
    if (v < 0 || static_cast<std::size_t>(v) >= ky)
      throw InvalidArgument("discrete_anm: function value outside {0..k_y-1}");
  if (noise.alphabet_size() != ky) throw InvalidArgument("discrete_anm: noise must have k_y symbols");
  if (px.alphabet_size() != kx) throw InvalidArgument("discrete_anm: cause must have k_x symbols");
  std::vector<CategoricalDistribution> rows;
  rows.reserve(kx);
  for (std::size_t x = 0; x < kx; ++x) {
    std::vector<double> r(ky, 0.0);
    for (std::size_t e = 0; e < ky; ++e) r[(static_cast<std::size_t>(f[x]) + e) % ky] += noise[e];
    rows.emplace_back(std::move(r));
  }
  return joint_from_factorization(px, ConditionalTable(std::move(rows)));
}

}  // namespace mdlcausa
