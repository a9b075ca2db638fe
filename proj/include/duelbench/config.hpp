#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "duelbench/rex3.hpp"

namespace duelbench {

enum class PolicyKind { rex3, sparring, random };

struct PolicySpec {
  PolicyKind kind = PolicyKind::rex3;
  GammaSchedule::Kind schedule = GammaSchedule::Kind::adaptive_anytime;
  double gamma = 0.1;  // fixed schedule only
  GainRule rule = GainRule::horizon_over_two;
  std::optional<double> exp3_gamma;  // Sparring; tuned to the horizon when unset
};

enum class EnvironmentKind { matrix_file, savage, bvs, utilities, nonstationary, adversarial_file };

struct EnvironmentSpec {
  EnvironmentKind kind = EnvironmentKind::savage;
  std::size_t arms = 0;  // savage / nonstationary size; otherwise an optional check
  std::vector<double> means;
  std::filesystem::path file;
};

struct ExperimentConfig {
  PolicySpec policy;
  EnvironmentSpec environment;
  std::uint64_t horizon = 10000;
  std::uint64_t runs = 10;
  std::uint64_t seed = 1;
  unsigned checkpoints_per_decade = 20;
  std::filesystem::path output;  // empty: do not write
};

// Text format: one `key = value` per line, `#` starts a comment. Keys:
//   policy            rex3 | sparring | random
//   gamma_schedule    fixed | optimal | adaptive
//   gamma             exploration rate for the fixed schedule
//   gmax_rule         T/2 | T/4 | T/10
//   exp3_gamma        exploration rate of both Sparring learners
//   environment       savage | bvs | matrix | utilities | nonstationary | adversarial
//   arms              K (required for savage and nonstationary)
//   means             comma-separated Bernoulli means (utilities)
//   matrix_file       CSV preference matrix (matrix)
//   adversarial_file  CSV reward sequence, T rows x K columns (adversarial)
//   horizon, runs, seed, checkpoints_per_decade, output
// Relative input files are resolved against `base_dir`; `output` is taken
// as given. Throws
// Error{config_invalid}.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

GainRule parse_gain_rule(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace duelbench
