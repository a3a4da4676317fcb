#pragma once

// Codelength functions L(M) + L(D | M) over multinomial blocks, in bits.
//
// Three codecs are provided:
//   CrudeTwoPart  (k-1)/2 log2 n parameter cost plus the MLE likelihood cost.
//   Nml           MLE likelihood cost plus the multinomial NML regret log2 COMP(k, n).
//   Oracle        -log2 P(data) under a known, attached distribution.
//
// Alphabet sizes are common knowledge for every hypothesis and are not
// charged. Every sum over symbols or blocks is taken over sorted terms so
// that relabeling categories never changes a codelength, not even by an ulp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mdlcausa/distributions.hpp"
#include "mdlcausa/error.hpp"

namespace mdlcausa {

inline constexpr double kInfiniteBits = std::numeric_limits<double>::infinity();

/// Symbol counts of one multinomial block.
class CountVector {
 public:
  explicit CountVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw InvalidArgument("CountVector: alphabet size must be >= 1");
    for (auto c : counts_) {
      if (c < 0) throw InvalidArgument("CountVector: negative count");
      n_ += c;
    }
  }

  static CountVector of(std::span<const int> values, int alphabet_size) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(alphabet_size), 0);
    for (int v : values) {
      if (v < 0 || v >= alphabet_size) throw InvalidArgument("CountVector: value outside alphabet");
      ++c[static_cast<std::size_t>(v)];
    }
    return CountVector(std::move(c));
  }

  std::size_t alphabet_size() const noexcept { return counts_.size(); }
  std::int64_t n() const noexcept { return n_; }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

struct CrudeTwoPart {};
struct Nml {};

/// Codes data against the true distribution. The attached object must match
/// the call: a CategoricalDistribution for marginal_cost, a ConditionalTable
/// for conditional_cost, a JointTable (x = rows) for scoring a direction, and
/// one ConditionalTable per node (rows indexed by parent configuration) for
/// scoring a DAG.
struct Oracle {
  std::variant<CategoricalDistribution, ConditionalTable, JointTable, std::vector<ConditionalTable>>
      truth;
};

using CodecKind = std::variant<CrudeTwoPart, Nml, Oracle>;

inline std::string codec_name(const CodecKind& codec) {
  if (std::holds_alternative<CrudeTwoPart>(codec)) return "crude";
  if (std::holds_alternative<Nml>(codec)) return "nml";
  return "oracle";
}

namespace detail {

inline double sorted_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

}  // namespace detail

// -sum_i c_i log2(c_i / n), the codelength of the data under its own MLE.
inline double data_cost_mle(const CountVector& c) {
  if (c.n() == 0) throw InvalidArgument("data_cost_mle: empty count vector");
  const double n = static_cast<double>(c.n());
  std::vector<double> terms;
  terms.reserve(c.alphabet_size());
  for (auto ci : c.counts())
    if (ci > 0) {
      const double cd = static_cast<double>(ci);
      terms.push_back(cd * std::log2(n / cd));
    }
  return detail::sorted_sum(std::move(terms));
}

// (k - 1)/2 log2 n bits for the k - 1 free parameters at precision 1/sqrt(n).
inline double model_cost_crude(std::int64_t k, std::int64_t n) {
  if (k < 1 || n < 1) throw InvalidArgument("model_cost_crude: k and n must be >= 1");
  return 0.5 * static_cast<double>(k - 1) * std::log2(static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Multinomial parametric complexity
//
//   COMP(k, n) = sum_{c_1 + ... + c_k = n} n! / (c_1! ... c_k!) prod_i (c_i / n)^{c_i}
//
// Small instances are enumerated directly. Larger ones use the binomial sum
// for k = 2 and the recurrence COMP(k+2, n) = COMP(k+1, n) + n/k COMP(k, n),
// carried as successive ratios so the logarithm never overflows.

struct NmlLimits {
  std::int64_t max_k = 1'000'000;
  std::int64_t max_n = 10'000'000;
  // Enumerate while the number of count vectors stays below this.
  double max_enumerated_vectors = 50'000;
};

namespace detail {

inline void check_nml_args(std::int64_t k, std::int64_t n, const NmlLimits& limits) {
  if (k < 1 || n < 0) throw InvalidArgument("nml_complexity: requires k >= 1 and n >= 0");
  if (k > limits.max_k || n > limits.max_n)
    throw ResourceLimitError("nml_complexity: (k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                             ") exceeds the configured limits");
}

// Number of count vectors with k parts summing to n, as a double.
inline double composition_count(std::int64_t k, std::int64_t n) {
  return std::exp(std::lgamma(static_cast<double>(n + k)) - std::lgamma(static_cast<double>(k)) -
                  std::lgamma(static_cast<double>(n + 1)));
}

inline void enumerate_terms(std::int64_t parts_left, std::int64_t remaining, long double log_nfact,
                            long double log_n, long double acc, long double& total) {
  if (parts_left == 1) {
    const auto c = static_cast<long double>(remaining);
    long double t = acc - std::lgamma(c + 1.0L);
    if (remaining > 0) t += c * (std::log(c) - log_n);
    total += std::exp(log_nfact + t);
    return;
  }
  for (std::int64_t c = 0; c <= remaining; ++c) {
    const auto cd = static_cast<long double>(c);
    long double t = acc - std::lgamma(cd + 1.0L);
    if (c > 0) t += cd * (std::log(cd) - log_n);
    enumerate_terms(parts_left - 1, remaining - c, log_nfact, log_n, t, total);
  }
}

inline long double binary_comp(std::int64_t n) {
  if (n == 0) return 1.0L;
  const auto nd = static_cast<long double>(n);
  const long double log_nfact = std::lgamma(nd + 1.0L);
  const long double log_n = std::log(nd);
  long double total = 0.0L;
  for (std::int64_t h = 0; h <= n; ++h) {
    const auto a = static_cast<long double>(h);
    const auto b = nd - a;
    long double t = log_nfact - std::lgamma(a + 1.0L) - std::lgamma(b + 1.0L);
    if (h > 0) t += a * (std::log(a) - log_n);
    if (h < n) t += b * (std::log(b) - log_n);
    total += std::exp(t);
  }
  return total;
}

inline double log2_comp_recurrence(std::int64_t k, std::int64_t n) {
  if (k == 1 || n == 0) return 0.0;
  const long double c2 = binary_comp(n);
  if (k == 2) return static_cast<double>(std::log2(c2));
  // ratio_j = COMP(j) / COMP(j - 1); ratio_{j+2} = 1 + (n / j) / ratio_{j+1}.
  long double log2_comp = std::log2(c2);
  long double ratio = c2;  // COMP(2) / COMP(1)
  const auto nd = static_cast<long double>(n);
  for (std::int64_t j = 1; j + 2 <= k; ++j) {
    ratio = 1.0L + (nd / static_cast<long double>(j)) / ratio;
    log2_comp += std::log2(ratio);
  }
  return static_cast<double>(log2_comp);
}

inline double log2_comp_enumerated(std::int64_t k, std::int64_t n) {
  if (k == 1 || n == 0) return 0.0;
  const auto nd = static_cast<long double>(n);
  long double total = 0.0L;
  enumerate_terms(k, n, std::lgamma(nd + 1.0L), std::log(nd), 0.0L, total);
  return static_cast<double>(std::log2(total));
}

class RegretCache {
 public:
  template <typename F>
  double get_or_compute(std::int64_t k, std::int64_t n, F&& compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = table_.find({k, n}); it != table_.end()) return it->second;
    }
    const double value = compute();
    std::lock_guard lock(mutex_);
    table_.emplace(std::pair{k, n}, value);
    return value;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::int64_t, std::int64_t>, double> table_;
};

inline RegretCache& regret_cache() {
  static RegretCache cache;
  return cache;
}

}  // namespace detail

// log2 COMP(k, n) by the recurrence path only, independent of enumeration.
inline double nml_regret_recurrence(std::int64_t k, std::int64_t n, const NmlLimits& limits = {}) {
  detail::check_nml_args(k, n, limits);
  return detail::log2_comp_recurrence(k, n);
}

// log2 COMP(k, n): the NML model cost in bits.
inline double nml_regret_bits(std::int64_t k, std::int64_t n, const NmlLimits& limits = {}) {
  detail::check_nml_args(k, n, limits);
  if (k == 1 || n == 0) return 0.0;
  const bool enumerate =
      k <= 16 && detail::composition_count(k, n) <= limits.max_enumerated_vectors;
  return detail::regret_cache().get_or_compute(k, n, [&] {
    return enumerate ? detail::log2_comp_enumerated(k, n) : detail::log2_comp_recurrence(k, n);
  });
}

inline double nml_complexity(std::int64_t k, std::int64_t n, const NmlLimits& limits = {}) {
  const double comp = std::exp2(nml_regret_bits(k, n, limits));
  if (!std::isfinite(comp))
    throw ResourceLimitError("nml_complexity: COMP(" + std::to_string(k) + ", " + std::to_string(n) +
                             ") overflows double; use nml_regret_bits");
  return comp;
}

namespace detail {

// -sum_i c_i log2 p_i, +inf when a positive count meets a zero probability.
inline double oracle_cost(std::span<const std::int64_t> counts, const CategoricalDistribution& p) {
  if (counts.size() != p.alphabet_size())
    throw InvalidArgument("Oracle codec: distribution has " + std::to_string(p.alphabet_size()) +
                          " symbols, data has " + std::to_string(counts.size()));
  std::vector<double> terms;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (p[i] <= 0.0) return kInfiniteBits;
    terms.push_back(-static_cast<double>(counts[i]) * std::log2(p[i]));
  }
  return sorted_sum(std::move(terms));
}

}  // namespace detail

inline double marginal_cost(const CountVector& c, const CodecKind& codec) {
  if (std::holds_alternative<CrudeTwoPart>(codec))
    return model_cost_crude(static_cast<std::int64_t>(c.alphabet_size()), c.n()) + data_cost_mle(c);
  if (std::holds_alternative<Nml>(codec))
    return data_cost_mle(c) + nml_regret_bits(static_cast<std::int64_t>(c.alphabet_size()), c.n());
  const auto& truth = std::get<Oracle>(codec).truth;
  const auto* p = std::get_if<CategoricalDistribution>(&truth);
  if (p == nullptr) throw InvalidArgument("marginal_cost: Oracle needs a CategoricalDistribution");
  return detail::oracle_cost(c.counts(), *p);
}

/// Cost of `target` given a conditioning code per row in {0..cond_cardinality-1}.
/// Each conditioning value opens its own multinomial block; empty blocks cost 0.
inline double conditional_cost_codes(std::span<const std::int64_t> cond_codes,
                                     std::int64_t cond_cardinality, std::span<const int> target,
                                     int target_alphabet, const CodecKind& codec) {
  if (cond_codes.size() != target.size())
    throw InvalidArgument("conditional_cost: columns differ in length");
  if (cond_cardinality < 1 || target_alphabet < 1)
    throw InvalidArgument("conditional_cost: alphabet sizes must be >= 1");
  const ConditionalTable* table = nullptr;
  if (const auto* oracle = std::get_if<Oracle>(&codec)) {
    table = std::get_if<ConditionalTable>(&oracle->truth);
    if (table == nullptr) throw InvalidArgument("conditional_cost: Oracle needs a ConditionalTable");
    if (static_cast<std::int64_t>(table->cond_alphabet_size()) != cond_cardinality ||
        table->alphabet_size() != static_cast<std::size_t>(target_alphabet))
      throw InvalidArgument("conditional_cost: Oracle table dimensions do not match the data");
  }

  // Sparse blocks: parent configuration spaces can be far larger than n.
  const auto k = static_cast<std::size_t>(target_alphabet);
  std::map<std::int64_t, std::vector<std::int64_t>> blocks;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const auto g = cond_codes[i];
    const int v = target[i];
    if (g < 0 || g >= cond_cardinality) throw InvalidArgument("conditional_cost: conditioning code out of range");
    if (v < 0 || v >= target_alphabet) throw InvalidArgument("conditional_cost: target value out of range");
    auto& counts = blocks[g];
    if (counts.empty()) counts.assign(k, 0);
    ++counts[static_cast<std::size_t>(v)];
  }

  std::vector<double> block_costs;
  block_costs.reserve(blocks.size());
  for (auto& [g, counts] : blocks) {
    if (table != nullptr) {
      block_costs.push_back(detail::oracle_cost(counts, table->row(static_cast<std::size_t>(g))));
    } else {
      block_costs.push_back(marginal_cost(CountVector(std::move(counts)), codec));
    }
  }
  return detail::sorted_sum(std::move(block_costs));
}

inline double conditional_cost(const PairedSample& s, std::size_t cond_col, std::size_t target_col,
                               const CodecKind& codec) {
  const auto cond = s.column(cond_col);
  std::vector<std::int64_t> codes(cond.begin(), cond.end());
  return conditional_cost_codes(codes, s.alphabet_size(cond_col), s.column(target_col),
                                s.alphabet_size(target_col), codec);
}

}  // namespace mdlcausa
