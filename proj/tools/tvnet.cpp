// tvnet: time-varying graphical lasso from the command line.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_solver_flags(CLI::App* app, tvnet::SolverOptions& o) {
  app->add_option("--penalty", o.penalty, "Temporal penalty: l1 | l2 | laplacian | linf | perturbed-node")
      ->capture_default_str()
      ->check(CLI::IsMember({"l1", "l2", "laplacian", "linf", "perturbed-node"}));
  app->add_option("--lambda", o.lambda, "Sparsity weight")->capture_default_str();
  app->add_option("--beta", o.beta, "Temporal consistency weight")->capture_default_str();
  app->add_flag("--async", o.asynchronous, "Scale the coupling by the time gaps");
  app->add_option("--rho", o.rho, "ADMM penalty parameter")->capture_default_str();
  app->add_option("--eps-abs", o.eps_abs, "Absolute stopping tolerance")->capture_default_str();
  app->add_option("--eps-rel", o.eps_rel, "Relative stopping tolerance")->capture_default_str();
  app->add_option("--max-iter", o.max_iter, "ADMM iteration cap")->capture_default_str();
  app->add_option("--threads", o.threads, "Worker threads (default: TVNET_THREADS, else all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infer time-varying sparse inverse covariance networks"};
  app.require_subcommand(1);

  tvnet::SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Batch inference over a whole time series");
  add_solver_flags(solve_cmd, solve.solver);
  solve_cmd->add_option("--input", solve.data.input, "CSV/TSV rows `time,v1..vp` or a scenario .json")->required();
  solve_cmd->add_option("--bucket", solve.data.bucket, "Re-bin times to multiples of this width");
  solve_cmd->add_flag("--center", solve.data.center, "Subtract the per-dimension mean");
  solve_cmd->add_flag("--has-header", solve.data.has_header, "Skip the first input row");
  solve_cmd->add_option("--output-dir", solve.output_dir, "Where to write the results")->capture_default_str();

  tvnet::StreamOptions stream;
  auto* stream_cmd = app.add_subcommand("stream", "Online inference over rows read from standard input");
  add_solver_flags(stream_cmd, stream.solver);
  stream_cmd->add_option("--window", stream.window, "Timestamps re-solved per update")->capture_default_str();
  stream_cmd->add_flag("--has-header", stream.has_header, "Skip the first input row");

  tvnet::SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic ground-truth scenario");
  synth_cmd->add_option("--kind", synth.kind, "global | local")
      ->capture_default_str()
      ->check(CLI::IsMember({"global", "local"}));
  synth_cmd->add_option("--p", synth.p, "Dimension")->capture_default_str();
  synth_cmd->add_option("--T", synth.T, "Timestamps")->capture_default_str();
  synth_cmd->add_option("--samples", synth.samples, "Samples per timestamp")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--shift-index", synth.shift_index, "Timestamp of the shift (default T/2)");
  synth_cmd->add_option("--output-dir", synth.output_dir, "Where to write the scenario")->capture_default_str();

  tvnet::EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score penalties against a scenario's ground truth");
  add_solver_flags(eval_cmd, eval.solver);
  eval_cmd->add_option("--input", eval.input, "Scenario bundle written by synth")->required();
  eval_cmd->add_option("--lambdas", eval.lambdas, "Lambda grid for AIC selection")->capture_default_str();
  eval_cmd->add_option("--betas", eval.betas, "Beta grid for AIC selection")->capture_default_str();
  eval_cmd->add_option("--seed", eval.train_offset, "Seed offset of the training scenario")->capture_default_str();
  eval_cmd->add_option("--output-dir", eval.output_dir, "Where to write the results table")->capture_default_str();

  tvnet::InterpolateOptions interp;
  auto* interp_cmd = app.add_subcommand("interpolate", "Estimate the network at an unobserved time");
  interp_cmd->add_option("--input", interp.input, "networks.json from solve")->required();
  interp_cmd->add_option("--time", interp.time, "Query time")->required();
  interp_cmd->add_option("--output", interp.output, "Output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tvnet::kExitInput;
  }

  if (*solve_cmd) return tvnet::cmd_solve(solve, std::cout, std::cerr);
  if (*stream_cmd) return tvnet::cmd_stream(stream, std::cin, std::cout, std::cerr);
  if (*synth_cmd) return tvnet::cmd_synth(synth, std::cout, std::cerr);
  if (*eval_cmd) return tvnet::cmd_eval(eval, std::cout, std::cerr);
  return tvnet::cmd_interpolate(interp, std::cout, std::cerr);
}
