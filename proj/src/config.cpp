#include "duelbench/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include "duelbench/error.hpp"

namespace duelbench {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::config_invalid, what); }

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    invalid(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    invalid(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_relative() && !base.empty() ? base / p : p;
}

}  // namespace

GainRule parse_gain_rule(const std::string& text) {
  if (text == "T/2" || text == "half") return GainRule::horizon_over_two;
  if (text == "T/4" || text == "quarter") return GainRule::horizon_over_four;
  if (text == "T/10" || text == "tenth") return GainRule::horizon_over_ten;
  invalid("gmax_rule: expected T/2, T/4 or T/10, got '" + text + "'");
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string field =
        trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    out.push_back(parse_real("list", field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool have_gamma = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) invalid("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) invalid("duplicate key '" + key + "'");

    if (key == "policy") {
      if (value == "rex3") cfg.policy.kind = PolicyKind::rex3;
      else if (value == "sparring") cfg.policy.kind = PolicyKind::sparring;
      else if (value == "random") cfg.policy.kind = PolicyKind::random;
      else invalid("policy: unknown '" + value + "'");
    } else if (key == "gamma_schedule") {
      if (value == "fixed") cfg.policy.schedule = GammaSchedule::Kind::fixed;
      else if (value == "optimal") cfg.policy.schedule = GammaSchedule::Kind::optimal_fixed_horizon;
      else if (value == "adaptive") cfg.policy.schedule = GammaSchedule::Kind::adaptive_anytime;
      else invalid("gamma_schedule: unknown '" + value + "'");
    } else if (key == "gamma") {
      cfg.policy.gamma = parse_real(key, value);
      have_gamma = true;
    } else if (key == "gmax_rule") {
      cfg.policy.rule = parse_gain_rule(value);
    } else if (key == "exp3_gamma") {
      cfg.policy.exp3_gamma = parse_real(key, value);
    } else if (key == "environment") {
      if (value == "savage") cfg.environment.kind = EnvironmentKind::savage;
      else if (value == "bvs") cfg.environment.kind = EnvironmentKind::bvs;
      else if (value == "matrix") cfg.environment.kind = EnvironmentKind::matrix_file;
      else if (value == "utilities") cfg.environment.kind = EnvironmentKind::utilities;
      else if (value == "nonstationary") cfg.environment.kind = EnvironmentKind::nonstationary;
      else if (value == "adversarial") cfg.environment.kind = EnvironmentKind::adversarial_file;
      else invalid("environment: unknown '" + value + "'");
    } else if (key == "arms") {
      cfg.environment.arms = parse_count(key, value);
    } else if (key == "means") {
      cfg.environment.means = parse_real_list(value);
    } else if (key == "matrix_file" || key == "adversarial_file") {
      cfg.environment.file = resolve(base_dir, value);
    } else if (key == "horizon") {
      cfg.horizon = parse_count(key, value);
    } else if (key == "runs") {
      cfg.runs = parse_count(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_count(key, value);
    } else if (key == "checkpoints_per_decade") {
      cfg.checkpoints_per_decade = static_cast<unsigned>(parse_count(key, value));
    } else if (key == "output") {
      cfg.output = value;
    } else {
      invalid("unknown key '" + key + "'");
    }
  }
  if (cfg.policy.kind == PolicyKind::rex3 && cfg.policy.schedule == GammaSchedule::Kind::fixed &&
      !have_gamma) {
    invalid("gamma_schedule = fixed requires gamma");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return parse_config(in, path.parent_path());
}

}  // namespace duelbench
