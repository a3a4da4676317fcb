#pragma once

// Seeded synthetic benchmark: pairs with known ground truth X -> Y, scored
// by the inference pipeline.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mdlcausa/distributions.hpp"
#include "mdlcausa/error.hpp"
#include "mdlcausa/inference.hpp"
#include "mdlcausa/random.hpp"

namespace mdlcausa {

enum class Generator { Dirichlet, Anm };

inline Generator parse_generator(std::string_view s) {
  if (s == "dirichlet") return Generator::Dirichlet;
  if (s == "anm") return Generator::Anm;
  throw InvalidArgument("unknown generator '" + std::string(s) + "' (expected dirichlet or anm)");
}

struct BenchmarkConfig {
  std::size_t pairs = 200;
  std::size_t n = 10'000;
  std::size_t kx = 4;
  std::size_t ky = 4;
  Generator generator = Generator::Anm;
  double alpha_dir = 1.0;
  std::uint64_t seed = 0;
  InferOptions infer{};
};

struct BenchmarkRow {
  std::size_t pair_id = 0;
  Direction decision = Direction::Undecided;
  double l_xy = 0.0;
  double l_yx = 0.0;
  double delta = 0.0;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
  std::size_t decided = 0;
  std::size_t correct = 0;

  // correct / decided; 0 when nothing was decided.
  double accuracy() const { return decided == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(decided); }
  double decision_rate() const {
    return rows.empty() ? 0.0 : static_cast<double>(decided) / static_cast<double>(rows.size());
  }
};

/// Ground-truth joint of one benchmark pair. The ANM generator draws P_X and
/// the noise from Dirichlet(alpha_dir) and f uniformly from all maps
/// {0..k_x-1} -> {0..k_y-1}.
inline JointTable benchmark_joint(const BenchmarkConfig& cfg, std::uint64_t pair_seed) {
  if (cfg.generator == Generator::Dirichlet) {
    auto [px, pyx] = random_mechanism_pair(cfg.kx, cfg.ky, cfg.alpha_dir, pair_seed);
    return joint_from_factorization(px, pyx);
  }
  if (cfg.kx < 2 || cfg.ky < 2) throw InvalidArgument("benchmark: alphabets must be >= 2");
  Rng rng = make_rng(pair_seed);
  const CategoricalDistribution px = draw_dirichlet(cfg.kx, cfg.alpha_dir, rng);
  const CategoricalDistribution noise = draw_dirichlet(cfg.ky, cfg.alpha_dir, rng);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(cfg.ky) - 1);
  std::vector<int> f(cfg.kx);
  for (auto& v : f) v = pick(rng);
  return discrete_anm(cfg.kx, cfg.ky, f, noise, px);
}

inline BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.n == 0) throw InvalidArgument("benchmark: n must be >= 1");
  BenchmarkResult result;
  result.rows.reserve(cfg.pairs);
  for (std::size_t id = 0; id < cfg.pairs; ++id) {
    const JointTable joint = benchmark_joint(cfg, substream(cfg.seed, 2 * id));
    const PairedSample s = sample(joint, cfg.n, substream(cfg.seed, 2 * id + 1));
    const DirectionScore score = infer_direction(s, 0, 1, cfg.infer);
    result.rows.push_back({id, score.decision, score.l_xy, score.l_yx, score.delta});
    if (score.decision != Direction::Undecided) {
      ++result.decided;
      if (score.decision == Direction::XtoY) ++result.correct;
    }
  }
  return result;
}

}  // namespace mdlcausa
