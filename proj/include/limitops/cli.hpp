#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "limitops/serialize.hpp"

namespace limitops
{

inline constexpr int kSchemaVersion = 1;

inline const std::vector<std::string> kTasks = {
    "geometry", "covering", "partition",          "bdo-diagnostic", "limits",
    "compactness", "fredholm", "essential-spectrum", "ess-norm"};

struct CliOverrides
{
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> format;
  std::optional<std::string> outDir;
};

struct RunOutcome
{
  int exitCode = 0;
  Json document;    // schemaVersion, task, config, result, caveat, runtime
  std::string csv;  // filled when the resolved format is csv
  std::string format = "json";
  std::string outDir;
};

// Runs one task. Throws InputError / UnsupportedError on bad input.
RunOutcome run(const std::string &task, const Json &config, const CliOverrides &overrides = {});

// JSON schema of the config file.
Json configSchema();

// Command-line entry point; returns the process exit code.
int cliMain(int argc, char **argv);

}  // namespace limitops
