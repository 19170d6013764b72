#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "equivix/error.hpp"

namespace equivix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitProperty = 1;
inline constexpr int kExitNumeric = 2;
inline constexpr int kExitUsage = 64;

int exit_code_for(ErrorCode code);

/// The checked-in defaults, parsed once.
const nlohmann::json& defaults();
const nlohmann::json& default_manifest();

struct RunManifest {
  std::string command;  // index | verify | converge
  std::string symbol;
  std::string g = "identity";
  std::string method = "auto";
  /// verify manifest or converge experiment; empty means the built-in default.
  std::string input;
  std::optional<double> tol;
  std::optional<int> nodes;
  std::optional<int> max_level;
  std::optional<std::uint64_t> seed;
  std::string output;

  /// Every file the run will read; checked before anything is computed.
  std::vector<std::string> referenced_files() const;
  void validate() const;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string body;     // JSON or CSV
  std::string message;  // diagnostic for stderr, empty on success
};

CommandOutput cmd_index(const RunManifest& m);
CommandOutput cmd_verify(const RunManifest& m);
CommandOutput cmd_converge(const RunManifest& m);

/// Dispatch on m.command; never throws.
CommandOutput run(const RunManifest& m);

/// Parsed verify manifest, usable without files on disk.
CommandOutput verify_manifest(const nlohmann::json& manifest, const std::string& base_dir,
                              std::optional<std::uint64_t> seed_override = std::nullopt);
CommandOutput converge_experiment(const nlohmann::json& experiment);

}  // namespace equivix::cli
