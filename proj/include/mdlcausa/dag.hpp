#pragma once

// Multivariate extension: a DAG is scored as the sum of per-node conditional
// codelengths, and small variable sets are searched exhaustively.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mdlcausa/codecs.hpp"
#include "mdlcausa/distributions.hpp"
#include "mdlcausa/error.hpp"
#include "mdlcausa/random.hpp"

namespace mdlcausa {

inline constexpr std::size_t kDefaultMaxSearchNodes = 5;

/// Directed acyclic graph over nodes {0..m-1}, stored as sorted parent lists.
class Dag {
 public:
  explicit Dag(std::vector<std::vector<int>> parents) : parents_(std::move(parents)) {
    const auto m = static_cast<int>(parents_.size());
    if (m < 1) throw InvalidArgument("Dag: needs at least one node");
    for (int i = 0; i < m; ++i) {
      auto& pa = parents_[static_cast<std::size_t>(i)];
      std::sort(pa.begin(), pa.end());
      if (std::adjacent_find(pa.begin(), pa.end()) != pa.end())
        throw InvalidArgument("Dag: duplicate parent of node " + std::to_string(i));
      for (int p : pa) {
        if (p < 0 || p >= m) throw InvalidArgument("Dag: parent index out of range");
        if (p == i) throw InvalidArgument("Dag: node " + std::to_string(i) + " is its own parent");
      }
    }
    if (topological_order().size() != parents_.size()) throw InvalidArgument("Dag: graph is cyclic");
  }

  static Dag empty(std::size_t m) { return Dag(std::vector<std::vector<int>>(m)); }

  // Decodes one parent bitmask per node (bit j set: j is a parent).
  static Dag from_masks(const std::vector<std::uint32_t>& masks) {
    std::vector<std::vector<int>> parents(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i)
      for (std::size_t j = 0; j < masks.size(); ++j)
        if (masks[i] >> j & 1U) parents[i].push_back(static_cast<int>(j));
    return Dag(std::move(parents));
  }

  std::size_t m() const noexcept { return parents_.size(); }
  const std::vector<int>& parents(std::size_t node) const { return parents_.at(node); }

  std::vector<std::uint32_t> masks() const {
    std::vector<std::uint32_t> out(parents_.size(), 0);
    for (std::size_t i = 0; i < parents_.size(); ++i)
      for (int p : parents_[i]) out[i] |= 1U << p;
    return out;
  }

  std::vector<int> topological_order() const {
    const std::size_t m = parents_.size();
    std::vector<int> order;
    std::vector<bool> placed(m, false);
    bool progress = true;
    while (order.size() < m && progress) {
      progress = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (placed[i]) continue;
        if (std::all_of(parents_[i].begin(), parents_[i].end(),
                        [&](int p) { return placed[static_cast<std::size_t>(p)]; })) {
          placed[i] = true;
          order.push_back(static_cast<int>(i));
          progress = true;
        }
      }
    }
    return order;
  }

  friend bool operator==(const Dag&, const Dag&) = default;

 private:
  std::vector<std::vector<int>> parents_;
};

/// Joint parent configuration per row, mixed radix with the lowest-index
/// parent most significant. Returns the codes and the number of configurations.
inline std::pair<std::vector<std::int64_t>, std::int64_t> parent_configurations(
    const PairedSample& s, const std::vector<int>& parents) {
  std::vector<std::int64_t> codes(s.n(), 0);
  std::int64_t cardinality = 1;
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max() / 4;
  for (int p : parents) {
    const auto k = static_cast<std::int64_t>(s.alphabet_size(static_cast<std::size_t>(p)));
    if (cardinality > kMax / k) throw ResourceLimitError("parent configuration space too large");
    cardinality *= k;
    const auto col = s.column(static_cast<std::size_t>(p));
    for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = codes[i] * k + col[i];
  }
  return {std::move(codes), cardinality};
}

// Codelength of column `node` given the joint configuration of `parents`.
inline double node_cost(const PairedSample& s, std::size_t node, const std::vector<int>& parents,
                        const CodecKind& codec) {
  CodecKind node_codec = codec;
  if (const auto* oracle = std::get_if<Oracle>(&codec)) {
    const auto* tables = std::get_if<std::vector<ConditionalTable>>(&oracle->truth);
    if (tables == nullptr || tables->size() != s.num_columns())
      throw InvalidArgument("score_dag: Oracle needs one ConditionalTable per node");
    const ConditionalTable& table = (*tables)[node];
    if (parents.empty()) {
      if (table.cond_alphabet_size() != 1)
        throw InvalidArgument("score_dag: parentless node needs a single-row table");
      node_codec = Oracle{table.row(0)};
    } else {
      node_codec = Oracle{table};
    }
  }
  if (parents.empty())
    return marginal_cost(CountVector::of(s.column(node), s.alphabet_size(node)), node_codec);
  const auto [codes, cardinality] = parent_configurations(s, parents);
  return conditional_cost_codes(codes, cardinality, s.column(node), s.alphabet_size(node), node_codec);
}

inline double score_dag(const PairedSample& s, const Dag& d, const CodecKind& codec) {
  if (d.m() != s.num_columns())
    throw InvalidArgument("score_dag: DAG has " + std::to_string(d.m()) + " nodes, sample has " +
                          std::to_string(s.num_columns()) + " columns");
  double total = 0.0;
  for (std::size_t i = 0; i < d.m(); ++i) total += node_cost(s, i, d.parents(i), codec);
  return total;
}

namespace detail {

inline bool masks_acyclic(const std::vector<std::uint32_t>& masks) {
  const auto m = masks.size();
  std::uint32_t remaining = m >= 32 ? ~0U : (1U << m) - 1U;
  bool progress = true;
  while (remaining != 0 && progress) {
    progress = false;
    for (std::size_t i = 0; i < m; ++i)
      if ((remaining >> i & 1U) && (masks[i] & remaining) == 0) {
        remaining &= ~(1U << i);
        progress = true;
      }
  }
  return remaining == 0;
}

template <typename Visit>
void for_each_dag_mask(std::size_t m, Visit&& visit) {
  std::vector<std::uint32_t> masks(m, 0);
  const std::uint32_t limit = 1U << m;
  // Odometer over parent masks, node 0 most significant: lexicographic order.
  while (true) {
    if (masks_acyclic(masks)) visit(masks);
    std::size_t i = m;
    while (i > 0) {
      --i;
      std::uint32_t next = masks[i] + 1;
      while (next < limit && (next >> i & 1U)) ++next;
      if (next < limit) {
        masks[i] = next;
        break;
      }
      masks[i] = 0;
      if (i == 0) return;
    }
    if (m == 0) return;
  }
}

}  // namespace detail

// Every labeled DAG on m nodes in lexicographic order of parent masks.
inline std::vector<Dag> enumerate_dags(std::size_t m) {
  if (m < 1 || m > 6) throw InvalidArgument("enumerate_dags: m must lie in [1, 6]");
  std::vector<Dag> out;
  detail::for_each_dag_mask(m, [&](const std::vector<std::uint32_t>& masks) {
    out.push_back(Dag::from_masks(masks));
  });
  return out;
}

struct RankedDag {
  Dag dag;
  double score;
};

struct SearchResult {
  Dag best;
  double score;
  std::vector<RankedDag> ranking;  // ascending score, ties by parent masks
};

inline SearchResult exhaustive_search(const PairedSample& s, const CodecKind& codec,
                                      std::size_t max_m = kDefaultMaxSearchNodes) {
  const std::size_t m = s.num_columns();
  if (m > max_m)
    throw ResourceLimitError("exhaustive_search: " + std::to_string(m) + " variables exceed the limit of " +
                             std::to_string(max_m));
  if (m > 6) throw ResourceLimitError("exhaustive_search: at most 6 variables are supported");

  // Node terms depend only on (node, parent set); compute each once.
  const std::uint32_t subsets = 1U << m;
  std::vector<std::vector<double>> cost(m, std::vector<double>(subsets, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      if (mask >> i & 1U) continue;
      std::vector<int> parents;
      for (std::size_t j = 0; j < m; ++j)
        if (mask >> j & 1U) parents.push_back(static_cast<int>(j));
      cost[i][mask] = node_cost(s, i, parents, codec);
    }

  std::vector<std::pair<double, std::vector<std::uint32_t>>> scored;
  detail::for_each_dag_mask(m, [&](const std::vector<std::uint32_t>& masks) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += cost[i][masks[i]];
    scored.emplace_back(total, masks);
  });
  std::sort(scored.begin(), scored.end());

  std::vector<RankedDag> ranking;
  ranking.reserve(scored.size());
  for (auto& [score, masks] : scored) ranking.push_back({Dag::from_masks(masks), score});
  return {ranking.front().dag, ranking.front().score, std::move(ranking)};
}

/// One CPT per node with every row drawn from a symmetric Dirichlet.
inline std::vector<ConditionalTable> random_cpts(const Dag& d, const std::vector<int>& alphabet_sizes,
                                                 double alpha, std::uint64_t seed) {
  if (alphabet_sizes.size() != d.m()) throw InvalidArgument("random_cpts: one alphabet size per node");
  std::vector<ConditionalTable> tables;
  for (std::size_t i = 0; i < d.m(); ++i) {
    std::size_t configs = 1;
    for (int p : d.parents(i)) configs *= static_cast<std::size_t>(alphabet_sizes[static_cast<std::size_t>(p)]);
    Rng rng = make_rng(substream(seed, i));
    std::vector<CategoricalDistribution> rows;
    for (std::size_t c = 0; c < configs; ++c)
      rows.push_back(draw_dirichlet(static_cast<std::size_t>(alphabet_sizes[i]), alpha, rng));
    tables.emplace_back(std::move(rows));
  }
  return tables;
}

/// Forward sampling of n rows along a topological order.
inline PairedSample ancestral_sample(const Dag& d, const std::vector<ConditionalTable>& cpts, std::size_t n,
                                     std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("ancestral_sample: n must be >= 1");
  if (cpts.size() != d.m()) throw InvalidArgument("ancestral_sample: one table per node required");
  std::vector<int> ks;
  for (const auto& t : cpts) ks.push_back(static_cast<int>(t.alphabet_size()));
  std::vector<std::vector<int>> cols(d.m(), std::vector<int>(n, 0));
  Rng rng = make_rng(seed);
  std::vector<std::vector<std::vector<double>>> cdfs(d.m());
  for (std::size_t i = 0; i < d.m(); ++i) {
    std::size_t configs = 1;
    for (int p : d.parents(i)) configs *= static_cast<std::size_t>(ks[static_cast<std::size_t>(p)]);
    if (cpts[i].cond_alphabet_size() != configs)
      throw InvalidArgument("ancestral_sample: table " + std::to_string(i) + " has the wrong row count");
    for (const auto& row : cpts[i].rows()) {
      std::vector<double> cdf(row.alphabet_size());
      std::partial_sum(row.probs().begin(), row.probs().end(), cdf.begin());
      cdfs[i].push_back(std::move(cdf));
    }
  }
  const auto order = d.topological_order();
  for (std::size_t r = 0; r < n; ++r)
    for (int node : order) {
      const auto i = static_cast<std::size_t>(node);
      std::size_t config = 0;
      for (int p : d.parents(i))
        config = config * static_cast<std::size_t>(ks[static_cast<std::size_t>(p)]) +
                 static_cast<std::size_t>(cols[static_cast<std::size_t>(p)][r]);
      cols[i][r] = static_cast<int>(draw_index(cdfs[i][config], cpts[i].row(config).probs(), rng));
    }
  return PairedSample(std::move(cols), std::move(ks));
}

// "child <- parent,parent" per node, in node order.
inline std::vector<std::string> parent_lines(const Dag& d, const std::vector<std::string>& names) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < d.m(); ++i) {
    std::string line = names.at(i) + " <-";
    const auto& pa = d.parents(i);
    for (std::size_t j = 0; j < pa.size(); ++j)
      line += (j == 0 ? " " : ",") + names.at(static_cast<std::size_t>(pa[j]));
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace mdlcausa
