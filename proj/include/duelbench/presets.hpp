#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace duelbench {

struct PresetOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> runs;
  std::filesystem::path matrix_file;  // required by `matrix-file`
};

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> preset_catalog();

// Runs a named preset and returns the files it wrote, in a fixed order.
// Throws Error{config_invalid} for unknown names.
std::vector<std::filesystem::path> run_preset(const std::string& name, const PresetOptions& options);

}  // namespace duelbench
