// duelbench: command-line front end for the dueling-bandit experiment harness.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "duelbench/error.hpp"
#include "duelbench/harness.hpp"
#include "duelbench/kernels.hpp"
#include "duelbench/prefmat.hpp"
#include "duelbench/presets.hpp"
#include "duelbench/rex3.hpp"

namespace {

using namespace duelbench;

struct Overrides {
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> runs;
  std::optional<std::uint64_t> seed;
  std::string output;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--horizon", horizon, "Override the horizon T");
    cmd->add_option("--runs", runs, "Override the number of runs");
    cmd->add_option("--seed", seed, "Override the base seed");
    cmd->add_option("--output,-o", output, "Output CSV path");
  }

  void apply(ExperimentConfig& cfg) const {
    if (horizon) cfg.horizon = *horizon;
    if (runs) cfg.runs = *runs;
    if (seed) cfg.seed = *seed;
    if (!output.empty()) cfg.output = output;
  }
};

// Accepts reals and the token `opt` (the bound-optimal rate for G_max = T/2).
std::vector<double> resolve_gammas(const std::string& text, std::size_t k, std::uint64_t horizon) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string field = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (field == "opt") {
      out.push_back(optimal_gamma(k, tau(estimate_gmax(GainRule::horizon_over_two, horizon), 0.0)));
    } else {
      const auto parsed = parse_real_list(field);
      out.insert(out.end(), parsed.begin(), parsed.end());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_summary(const PreferenceMatrix& m) {
  const auto s = summarize(m);
  std::cout << "arm,borda,copeland\n";
  for (Arm i = 0; i < m.arms(); ++i) {
    std::cout << i << ',' << s.borda[i] << ',' << s.copeland[i] << '\n';
  }
  if (s.condorcet_winner) {
    std::cout << "condorcet_winner," << *s.condorcet_winner << '\n';
  } else {
    std::cout << "condorcet_winner,none (copeland winner " << copeland_winner(m) << ")\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dueling-bandit experiment harness (REX3, Sparring, Random)"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  std::string run_config;
  run->add_option("--config,-c", run_config, "Config file (key = value lines)")->required();
  Overrides run_over;
  run_over.add_to(run);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Fixed-gamma REX3 sweep against the halved bound");
  std::string sweep_config;
  std::string gammas_text = "0.05,0.1,0.2,0.4,opt";
  sweep->add_option("--config,-c", sweep_config, "Config file; the policy fields are ignored")->required();
  sweep->add_option("--gammas", gammas_text, "Comma-separated rates; 'opt' = optimal for G_max=T/2");
  Overrides sweep_over;
  sweep_over.add_to(sweep);

  // matrix
  auto* matrix = app.add_subcommand("matrix", "Generate or inspect preference matrices");
  std::string generate;
  std::size_t k = 0;
  std::string means_text;
  std::string matrix_out;
  std::string summary_file;
  auto* gen_opt = matrix->add_option("--generate", generate, "savage | bvs | utilities")
                      ->check(CLI::IsMember({"savage", "bvs", "utilities"}));
  matrix->add_option("--k", k, "Number of arms (savage)");
  matrix->add_option("--means", means_text, "Comma-separated Bernoulli means (utilities)");
  matrix->add_option("--out", matrix_out, "Output CSV (default: stdout)");
  auto* sum_opt = matrix->add_option("--summary", summary_file, "Print Borda/Copeland/Condorcet of a CSV matrix");
  gen_opt->excludes(sum_opt);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Play a classical Bernoulli bandit with REX3 via the reduction");
  ReductionConfig red;
  std::string red_means = "0.6,0.5,0.5,0.5,0.5,0.5,0.5,0.5,0.5,0.5";
  std::string red_schedule = "adaptive";
  std::string red_rule = "T/2";
  double red_gamma = 0.1;
  std::string red_out, red_trace;
  reduce->add_option("--means", red_means, "Comma-separated Bernoulli means");
  reduce->add_option("--horizon", red.horizon, "Classical horizon T");
  reduce->add_option("--runs", red.runs, "Number of runs");
  reduce->add_option("--seed", red.seed, "Base seed");
  reduce->add_option("--schedule", red_schedule, "fixed | optimal | adaptive")
      ->check(CLI::IsMember({"fixed", "optimal", "adaptive"}));
  reduce->add_option("--gamma", red_gamma, "Rate for the fixed schedule");
  reduce->add_option("--gmax-rule", red_rule, "T/2 | T/4 | T/10");
  reduce->add_option("--output,-o", red_out, "Pseudo-regret curve CSV");
  reduce->add_option("--trace", red_trace, "Trace CSV of the first run");

  // preset
  auto* preset = app.add_subcommand("preset", "Run a shipped experiment preset");
  std::string preset_name;
  PresetOptions popts;
  std::string out_dir = ".";
  std::string preset_matrix;
  bool list = false;
  preset->add_option("name", preset_name, "Preset name");
  preset->add_flag("--list", list, "List presets");
  preset->add_option("--out-dir", out_dir, "Directory for CSV output");
  preset->add_option("--seed", popts.seed, "Override the base seed");
  preset->add_option("--horizon", popts.horizon, "Override the horizon");
  preset->add_option("--runs", popts.runs, "Override the number of runs");
  preset->add_option("--matrix", preset_matrix, "Matrix CSV for the matrix-file preset");

  auto* info = app.add_subcommand("info", "Print build and kernel information");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto cfg = load_config(run_config);
      run_over.apply(cfg);
      if (cfg.output.empty()) {
        const auto result = run_experiment(cfg);
        write_curve_csv(result.curve, std::cout);
      } else {
        run_experiment(cfg);
        std::cerr << "wrote " << cfg.output.string() << '\n';
      }
    } else if (sweep->parsed()) {
      auto cfg = load_config(sweep_config);
      sweep_over.apply(cfg);
      const auto env = make_environment(cfg.environment);
      const auto gammas = resolve_gammas(gammas_text, env->arms(), cfg.horizon);
      const auto rows = gamma_sweep(cfg, gammas);
      if (cfg.output.empty()) write_sweep_csv(rows, std::cout);
      else std::cerr << "wrote " << cfg.output.string() << '\n';
    } else if (matrix->parsed()) {
      if (!summary_file.empty()) {
        print_summary(load_matrix_csv(summary_file));
      } else if (!generate.empty()) {
        std::optional<PreferenceMatrix> m;
        if (generate == "savage") {
          if (k < 2) throw Error(Errc::invalid_argument, "--k >= 2 is required for savage");
          m = savage_matrix(k);
        } else if (generate == "bvs") {
          m = bvs_matrix();
        } else {
          m = preference_from_utilities(parse_real_list(means_text));
        }
        if (matrix_out.empty()) write_matrix_csv(*m, std::cout);
        else save_matrix_csv(*m, matrix_out);
      } else {
        throw Error(Errc::invalid_argument, "matrix needs --generate or --summary");
      }
    } else if (reduce->parsed()) {
      red.means = parse_real_list(red_means);
      red.policy.kind = PolicyKind::rex3;
      red.policy.rule = parse_gain_rule(red_rule);
      red.policy.gamma = red_gamma;
      red.policy.schedule = red_schedule == "fixed"     ? GammaSchedule::Kind::fixed
                            : red_schedule == "optimal" ? GammaSchedule::Kind::optimal_fixed_horizon
                                                        : GammaSchedule::Kind::adaptive_anytime;
      red.output = red_out;
      red.trace_output = red_trace;
      const auto result = run_reduction_experiment(red);
      if (red_out.empty()) write_curve_csv(result.curve, std::cout);
    } else if (preset->parsed()) {
      if (list || preset_name.empty()) {
        for (const auto& p : preset_catalog()) std::cout << p.name << "\t" << p.description << '\n';
        return list ? 0 : 2;
      }
      popts.out_dir = out_dir;
      popts.matrix_file = preset_matrix;
      for (const auto& path : run_preset(preset_name, popts)) std::cout << path.string() << '\n';
    } else if (info->parsed()) {
      std::cout << "simd: " << kernels::to_string(kernels::active_isa())
                << " (avx2 available: " << (kernels::avx2_available() ? "yes" : "no") << ")\n"
                << "workers: " << worker_count() << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "duelbench: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "duelbench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
