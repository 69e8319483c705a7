#pragma once

// The uniprobe command line, as a library so tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uniprobe/families.hpp"

namespace uniprobe::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kInputError = 2 };

enum class Command { pairwise, ensemble, tables, argand, simulate, verify };
enum class Format { json, csv };

struct RunConfig {
  Command command = Command::verify;
  std::optional<std::string> inputPath;
  std::optional<std::string> builtin;
  std::optional<std::string> probePath;
  ProbeClass probeClass = ProbeClass::maxEntangled;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  int restarts = 20;
  std::size_t trials = 100000;
  Format format = Format::json;
  std::optional<std::string> outPath;
  std::string family = "v";
  int dLo = 0;
  int dHi = 0;
  bool withArbitrary = false;
  std::vector<std::string> only;
};

/// Parses "LO..HI" or a single "D".
std::pair<int, int> parse_range(const std::string& text);

int cmd_pairwise(const RunConfig& cfg, std::ostream& out);
int cmd_ensemble(const RunConfig& cfg, std::ostream& out);
int cmd_tables(const RunConfig& cfg, std::ostream& out);
int cmd_argand(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Full entry point: parses argv, runs the command, maps errors to exit
/// codes. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uniprobe::cli
