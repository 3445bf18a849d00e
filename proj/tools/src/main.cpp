#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace clipscale::cli;

struct CommonArgs {
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::string format = "jsonl";
  std::optional<double> eps;
  std::optional<double> eta;
  double p = 2.0;
  double a = 0.0;
  double b = 1.0;
  std::optional<std::string> x_cols;
  std::optional<std::string> delta_cols;
  std::optional<std::size_t> eps_col;
  std::optional<std::size_t> id_col;
  bool emit_vector = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--input", args.input, "Read records from this file instead of stdin");
  cmd->add_option("--output", args.output, "Write records to this file instead of stdout");
  cmd->add_option("--format", args.format, "Record format")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  cmd->add_option("--eps", args.eps, "Target norm for records without 'eps'");
  cmd->add_option("--p", args.p, "Norm order for records without 'p'")
      ->capture_default_str();
  cmd->add_option("--min", args.a, "Domain lower bound for records without 'a'")
      ->capture_default_str();
  cmd->add_option("--max", args.b, "Domain upper bound for records without 'b'")
      ->capture_default_str();
  cmd->add_option("--x-cols", args.x_cols, "CSV columns holding x, e.g. 0-783");
  cmd->add_option("--delta-cols", args.delta_cols, "CSV columns holding delta");
  cmd->add_option("--eps-col", args.eps_col, "CSV column holding eps");
  cmd->add_option("--id-col", args.id_col, "CSV column holding the record id");
}

IoOptions build_io(const CommonArgs& args) {
  IoOptions opt;
  opt.format = args.format == "csv" ? Format::csv : Format::jsonl;
  opt.defaults.eps = args.eps;
  opt.defaults.eta = args.eta;
  opt.defaults.p = args.p;
  opt.defaults.a = args.a;
  opt.defaults.b = args.b;
  opt.emit_vector = args.emit_vector;
  if (args.x_cols) opt.csv.x_cols = parse_column_range(*args.x_cols);
  if (args.delta_cols) opt.csv.delta_cols = parse_column_range(*args.delta_cols);
  opt.csv.eps_col = args.eps_col;
  opt.csv.id_col = args.id_col;
  return opt;
}

template <typename Fn>
int with_streams(const CommonArgs& args, Fn&& body) {
  std::ifstream in_file;
  std::ofstream out_file;
  std::istream* in = &std::cin;
  std::ostream* out = &std::cout;
  if (args.input) {
    in_file.open(*args.input);
    if (!in_file) {
      std::cerr << "cannot open input file " << *args.input << '\n';
      return kExitUsage;
    }
    in = &in_file;
  }
  if (args.output) {
    out_file.open(*args.output);
    if (!out_file) {
      std::cerr << "cannot open output file " << *args.output << '\n';
      return kExitUsage;
    }
    out = &out_file;
  }
  return body(*in, *out, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rescaling of box-clipped perturbations to a target p-norm"};
  app.require_subcommand(1);

  CommonArgs solve_args, norm_args, grad_args, noise_args;

  auto* solve_cmd = app.add_subcommand(
      "solve", "Solve eta so the clipped perturbation meets the target norm");
  add_common_options(solve_cmd, solve_args);
  solve_cmd->add_flag("--emit-vector", solve_args.emit_vector,
                      "Include the perturbed-and-clipped point in each record");

  auto* norm_cmd = app.add_subcommand(
      "norm", "Evaluate the clipped perturbation norm at a given eta");
  add_common_options(norm_cmd, norm_args);
  norm_cmd->add_option("--eta", norm_args.eta, "Scale for records without 'eta'");

  auto* grad_cmd = app.add_subcommand(
      "grad", "Solve and differentiate eta with respect to eps, x and delta");
  add_common_options(grad_cmd, grad_args);

  auto* noise_cmd = app.add_subcommand(
      "noise", "Draw random perturbations rescaled to land exactly on the budget");
  add_common_options(noise_cmd, noise_args);
  std::string dist = "gaussian";
  std::optional<std::uint64_t> noise_seed;
  noise_cmd->add_option("--dist", dist, "Noise distribution")
      ->check(CLI::IsMember({"gaussian", "uniform"}))
      ->capture_default_str();
  noise_cmd->add_option("--seed", noise_seed,
                        "RNG seed; generated and printed when absent");

  auto* bench_cmd = app.add_subcommand(
      "bench", "Time the analytic solve against the bisection baseline");
  BenchConfig bench;
  std::optional<std::string> bench_output;
  bench_cmd->add_option("--n", bench.n, "Coordinates per instance")
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Timed instances")
      ->capture_default_str();
  bench_cmd->add_option("--batch", bench.batch,
                        "Also time a batch solve with this many rows");
  bench_cmd->add_option("--p", bench.p, "Norm order")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "RNG seed")->capture_default_str();
  bench_cmd->add_option("--tol-bisect", bench.bisect_tol,
                        "Bisection tolerance in norm space")
      ->capture_default_str();
  bench_cmd->add_option("--output", bench_output,
                        "Write trial records to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      return with_streams(solve_args, [&](auto& in, auto& out, auto& diag) {
        return run_solve(in, out, diag, build_io(solve_args));
      });
    }
    if (norm_cmd->parsed()) {
      return with_streams(norm_args, [&](auto& in, auto& out, auto& diag) {
        return run_norm(in, out, diag, build_io(norm_args));
      });
    }
    if (grad_cmd->parsed()) {
      return with_streams(grad_args, [&](auto& in, auto& out, auto& diag) {
        return run_grad(in, out, diag, build_io(grad_args));
      });
    }
    if (noise_cmd->parsed()) {
      NoiseConfig cfg;
      cfg.dist = dist == "uniform" ? NoiseConfig::Dist::uniform
                                   : NoiseConfig::Dist::gaussian;
      if (noise_seed) {
        cfg.seed = *noise_seed;
      } else {
        cfg.seed = std::random_device{}();
        std::cerr << "seed " << cfg.seed << '\n';
      }
      return with_streams(noise_args, [&](auto& in, auto& out, auto& diag) {
        return run_noise(in, out, diag, build_io(noise_args), cfg);
      });
    }
    if (bench_cmd->parsed()) {
      std::ofstream out_file;
      std::ostream* out = &std::cout;
      if (bench_output) {
        out_file.open(*bench_output);
        if (!out_file) {
          std::cerr << "cannot open output file " << *bench_output << '\n';
          return kExitUsage;
        }
        out = &out_file;
      }
      return run_bench(*out, std::cerr, bench);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
