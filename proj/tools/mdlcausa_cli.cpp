// mdlcausa: cause-effect inference between discrete variables by two-part
// MDL codelengths.
//
//   mdlcausa infer <file> --x <col> --y <col> [--codec crude|nml] [--format json|csv]
//   mdlcausa benchmark --pairs N --n <samples> --kx K --ky K --gen anm|dirichlet --seed S
//   mdlcausa lab theorem1 --joint random|file [--joint-file F] --n-grid 100,1000 --reps R --seed S
//   mdlcausa lab symmetry <file> --x <col> --y <col>
//   mdlcausa dag <file> [--codec crude|nml] [--max-m 5]
//
// Exit codes: 0 success, 2 usage or parse error, 3 resource limit.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdlcausa/commands.hpp"

namespace {

using namespace mdlcausa;

char parse_delimiter(const std::string& s) {
  if (s.empty() || s == "auto") return 0;
  if (s == "," || s == "comma") return ',';
  if (s == "\t" || s == "\\t" || s == "tab") return '\t';
  throw InvalidArgument("unsupported delimiter '" + s + "' (expected comma or tab)");
}

struct TableFlags {
  std::string path;
  std::string delimiter = "auto";
  bool no_header = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("file", path, "Input CSV/TSV table")->required();
    cmd->add_option("--delimiter", delimiter, "comma, tab or auto");
    cmd->add_flag("--no-header", no_header, "First line holds data, not column names");
  }

  TableSource source() const { return {path, parse_delimiter(delimiter), !no_header}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cause-effect inference for discrete data by two-part MDL codelengths"};
  app.require_subcommand(1);

  // Defaults, then environment, then flags.
  RunConfig defaults;
  const int env_status = run_guarded([&] { apply_environment(defaults); return 0; }, std::cerr);
  if (env_status != 0) return env_status;
  const std::string default_format = defaults.format == OutputFormat::Csv ? "csv" : "json";

  std::function<int()> action;

  // infer
  auto* infer = app.add_subcommand("infer", "Decide X->Y versus Y->X for two columns");
  TableFlags infer_table;
  InferArgs infer_args;
  std::string infer_codec = "crude", infer_format = default_format;
  bool infer_no_gate = false;
  infer_table.attach(infer);
  infer->add_option("--x", infer_args.x, "Cause candidate column (name or 0-based index)");
  infer->add_option("--y", infer_args.y, "Effect candidate column (name or 0-based index)");
  infer->add_option("--codec", infer_codec, "crude or nml");
  infer->add_option("--eps", infer_args.config.eps, "Tie tolerance in bits");
  infer->add_option("--alpha", infer_args.config.alpha, "Significance level of the dependence gate");
  infer->add_flag("--no-gate", infer_no_gate, "Skip the G-test dependence gate");
  infer->add_option("--format", infer_format, "json or csv");
  infer->add_flag("--show-labels", infer_args.show_labels, "Add the label-to-code maps to JSON output");
  infer->callback([&] {
    action = [&] {
      infer_args.table = infer_table.source();
      infer_args.config.codec = parse_codec(infer_codec);
      infer_args.config.format = parse_format(infer_format);
      infer_args.config.gate = !infer_no_gate;
      return cmd_infer(infer_args, std::cout);
    };
  });

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Accuracy on seeded synthetic pairs with truth X->Y");
  BenchmarkConfig bench_cfg;
  bench_cfg.seed = defaults.seed;
  std::string bench_gen = "anm", bench_codec = "crude";
  bool bench_no_gate = false;
  bench->add_option("--pairs", bench_cfg.pairs, "Number of pairs");
  bench->add_option("--n", bench_cfg.n, "Samples per pair");
  bench->add_option("--kx", bench_cfg.kx, "Cause alphabet size");
  bench->add_option("--ky", bench_cfg.ky, "Effect alphabet size");
  bench->add_option("--gen", bench_gen, "anm or dirichlet");
  bench->add_option("--alpha-dir", bench_cfg.alpha_dir, "Dirichlet concentration");
  bench->add_option("--codec", bench_codec, "crude or nml");
  bench->add_option("--seed", bench_cfg.seed, "Base seed");
  bench->add_option("--eps", bench_cfg.infer.eps, "Tie tolerance in bits");
  bench->add_option("--alpha", bench_cfg.infer.alpha, "Significance level of the dependence gate");
  bench->add_flag("--no-gate", bench_no_gate, "Skip the dependence gate");
  bench->callback([&] {
    action = [&] {
      bench_cfg.generator = parse_generator(bench_gen);
      bench_cfg.infer.codec = parse_codec(bench_codec);
      bench_cfg.infer.gate = !bench_no_gate;
      return cmd_benchmark(bench_cfg, std::cout);
    };
  });

  // lab
  auto* lab = app.add_subcommand("lab", "Verification experiments");
  lab->require_subcommand(1);
  auto* theorem1 = lab->add_subcommand("theorem1", "Per-symbol oracle codelength versus joint entropy");
  Theorem1Args t1;
  t1.seed = defaults.seed;
  theorem1->add_option("--joint", t1.joint, "random or file");
  theorem1->add_option("--joint-file", t1.joint_file, "Probability matrix, one row per x");
  theorem1->add_option("--kx", t1.kx, "Rows of the random joint");
  theorem1->add_option("--ky", t1.ky, "Columns of the random joint");
  theorem1->add_option("--alpha-dir", t1.alpha_dir, "Dirichlet concentration of the random joint");
  theorem1->add_option("--n-grid", t1.n_grid, "Sample sizes")->delimiter(',');
  theorem1->add_option("--reps", t1.reps, "Repetitions per sample size");
  theorem1->add_option("--seed", t1.seed, "Base seed");
  theorem1->callback([&] { action = [&] { return cmd_lab_theorem1(t1, std::cout); }; });

  auto* symmetry = lab->add_subcommand("symmetry", "Joint-description scores versus factorized scores");
  TableFlags sym_table;
  SymmetryArgs sym_args;
  std::string sym_format = default_format;
  sym_table.attach(symmetry);
  symmetry->add_option("--x", sym_args.x, "First column");
  symmetry->add_option("--y", sym_args.y, "Second column");
  symmetry->add_option("--format", sym_format, "json or csv");
  symmetry->callback([&] {
    action = [&] {
      sym_args.table = sym_table.source();
      sym_args.format = parse_format(sym_format);
      return cmd_lab_symmetry(sym_args, std::cout);
    };
  });

  // dag
  auto* dag = app.add_subcommand("dag", "Exhaustive DAG search over all columns");
  TableFlags dag_table;
  DagArgs dag_args;
  std::string dag_codec = "crude", dag_format = default_format;
  dag_table.attach(dag);
  dag->add_option("--codec", dag_codec, "crude or nml");
  dag->add_option("--max-m", dag_args.max_m, "Largest number of columns to search");
  dag->add_option("--top", dag_args.top, "Ranking entries to print (0 = all)");
  dag->add_option("--format", dag_format, "json or csv");
  dag->add_flag("--lines", dag_args.lines, "Print the best DAG as 'child <- parent,parent' lines");
  dag->callback([&] {
    action = [&] {
      dag_args.table = dag_table.source();
      dag_args.codec = parse_codec(dag_codec);
      dag_args.format = parse_format(dag_format);
      return cmd_dag(dag_args, std::cout);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return run_guarded(action, std::cerr);
}
