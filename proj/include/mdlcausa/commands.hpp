#pragma once

// Command implementations behind the mdlcausa CLI. Each command writes its
// result to `out` and returns a process exit code; run_guarded maps library
// exceptions onto the documented exit codes.

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdlcausa/benchmark.hpp"
#include "mdlcausa/dag.hpp"
#include "mdlcausa/error.hpp"
#include "mdlcausa/inference.hpp"
#include "mdlcausa/io.hpp"
#include "mdlcausa/lab.hpp"

namespace mdlcausa {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitResource = 3 };

inline int run_guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

struct TableSource {
  std::string path;
  char delimiter = 0;
  bool has_header = true;

  Dataset load() const { return load_table(path, delimiter, has_header); }
};

struct InferArgs {
  TableSource table;
  std::string x = "0";
  std::string y = "1";
  RunConfig config;
  bool show_labels = false;
};

inline int cmd_infer(const InferArgs& args, std::ostream& out) {
  const Dataset data = args.table.load();
  const std::size_t cx = data.column_index(args.x);
  const std::size_t cy = data.column_index(args.y);
  const DirectionScore score = infer_direction(data.sample, cx, cy, args.config.infer_options());
  const int kx = data.sample.alphabet_size(cx);
  const int ky = data.sample.alphabet_size(cy);
  if (args.config.format == OutputFormat::Csv) {
    out << kScoreCsvHeader << '\n' << to_csv_row(score, kx, ky, args.config.codec) << '\n';
    return kExitOk;
  }
  auto j = to_json(score, kx, ky, args.config.codec);
  if (args.show_labels) j["labels"] = {{"x", data.labels[cx]}, {"y", data.labels[cy]}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

inline int cmd_benchmark(const BenchmarkConfig& cfg, std::ostream& out) {
  const BenchmarkResult result = run_benchmark(cfg);
  out << "pair_id,truth,decision,l_xy,l_yx,delta\n";
  for (const auto& r : result.rows)
    out << r.pair_id << ",X->Y," << direction_label(r.decision) << ',' << format_number(r.l_xy) << ','
        << format_number(r.l_yx) << ',' << format_number(r.delta) << '\n';
  out << "# pairs=" << result.rows.size() << " decided=" << result.decided << " correct=" << result.correct
      << " accuracy=" << format_number(result.accuracy()) << " decision_rate=" << format_number(result.decision_rate())
      << '\n';
  return kExitOk;
}

struct Theorem1Args {
  std::string joint = "random";  // "random" or "file"
  std::string joint_file;
  std::size_t kx = 3;
  std::size_t ky = 3;
  double alpha_dir = 1.0;
  std::vector<std::size_t> n_grid{100, 1000, 10000};
  std::size_t reps = 10;
  std::uint64_t seed = 0;
};

inline JointTable theorem1_joint(const Theorem1Args& args) {
  if (args.joint == "file") {
    std::ifstream in(args.joint_file);
    if (!in) throw ParseError("cannot open '" + args.joint_file + "'");
    return parse_joint(in);
  }
  if (args.joint != "random") throw InvalidArgument("--joint must be random or file");
  Rng rng = make_rng(substream(args.seed, 0xC0FFEE));
  const auto cells = draw_dirichlet(args.kx * args.ky, args.alpha_dir, rng);
  return JointTable(args.kx, args.ky, std::vector<double>(cells.probs().begin(), cells.probs().end()));
}

inline int cmd_lab_theorem1(const Theorem1Args& args, std::ostream& out) {
  const JointTable j = theorem1_joint(args);
  write_lab_csv(out, theorem1_convergence(j, args.n_grid, args.reps, args.seed));
  return kExitOk;
}

struct SymmetryArgs {
  TableSource table;
  std::string x = "0";
  std::string y = "1";
  OutputFormat format = OutputFormat::Json;
};

inline int cmd_lab_symmetry(const SymmetryArgs& args, std::ostream& out) {
  const Dataset data = args.table.load();
  const std::size_t cx = data.column_index(args.x);
  const std::size_t cy = data.column_index(args.y);
  const SymmetryCollapse r = symmetry_collapse(data.sample, cx, cy);
  if (args.format == OutputFormat::Csv) {
    out << "l_joint_xy_bits,l_joint_yx_bits,crude_l_xy_bits,crude_l_yx_bits\n"
        << format_number(r.l_joint_xy) << ',' << format_number(r.l_joint_yx) << ',' << format_number(r.crude_l_xy)
        << ',' << format_number(r.crude_l_yx) << '\n';
    return kExitOk;
  }
  nlohmann::ordered_json j;
  j["l_joint_xy_bits"] = number_json(r.l_joint_xy);
  j["l_joint_yx_bits"] = number_json(r.l_joint_yx);
  j["crude_l_xy_bits"] = number_json(r.crude_l_xy);
  j["crude_l_yx_bits"] = number_json(r.crude_l_yx);
  j["n"] = data.sample.n();
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct DagArgs {
  TableSource table;
  CodecKind codec = CrudeTwoPart{};
  std::size_t max_m = kDefaultMaxSearchNodes;
  std::size_t top = 10;  // ranking entries to print; 0 prints all
  OutputFormat format = OutputFormat::Json;
  bool lines = false;    // plain "child <- parents" output of the best DAG
};

inline int cmd_dag(const DagArgs& args, std::ostream& out) {
  const Dataset data = args.table.load();
  const SearchResult result = exhaustive_search(data.sample, args.codec, args.max_m);
  const std::size_t shown = args.top == 0 ? result.ranking.size() : std::min(args.top, result.ranking.size());

  if (args.lines) {
    for (const auto& l : parent_lines(result.best, data.names)) out << l << '\n';
    return kExitOk;
  }
  if (args.format == OutputFormat::Csv) {
    out << "rank,score_bits,structure\n";
    for (std::size_t r = 0; r < shown; ++r) {
      std::string structure;
      for (const auto& l : parent_lines(result.ranking[r].dag, data.names))
        structure += (structure.empty() ? "" : "; ") + l;
      out << r + 1 << ',' << format_number(result.ranking[r].score) << ",\"" << structure << "\"\n";
    }
    return kExitOk;
  }

  const std::size_t m = data.names.size();
  std::vector<std::vector<int>> adjacency(m, std::vector<int>(m, 0));
  for (std::size_t child = 0; child < m; ++child)
    for (int p : result.best.parents(child)) adjacency[static_cast<std::size_t>(p)][child] = 1;
  nlohmann::ordered_json j;
  j["nodes"] = data.names;
  j["parents"] = parent_lines(result.best, data.names);
  j["adjacency"] = adjacency;
  j["score_bits"] = number_json(result.score);
  j["codec"] = codec_name(args.codec);
  j["n"] = data.sample.n();
  j["dags_evaluated"] = result.ranking.size();
  auto& ranking = j["ranking"] = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < shown; ++r) {
    nlohmann::ordered_json e;
    e["rank"] = r + 1;
    e["score_bits"] = number_json(result.ranking[r].score);
    e["parents"] = parent_lines(result.ranking[r].dag, data.names);
    ranking.push_back(std::move(e));
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace mdlcausa
