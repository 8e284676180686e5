#pragma once

// Subcommand implementations behind the tdsp executable. Each returns the
// process exit code: 0 success, 1 validation or verification failure,
// 2 usage or parse error.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tdsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Format { text, json };

int cmd_validate(const std::string& graph_file, const std::optional<std::string>& td_file,
                 std::ostream& out, std::ostream& err);

struct ReduceFlags {
  std::optional<std::string> td_file;
  bool emit_trace = false;
  bool check_steps = false;
  std::uint64_t seed = 0;  // random probe times for --check-steps
  Format format = Format::text;
};

int cmd_reduce(const std::string& graph_file, const ReduceFlags& flags, std::ostream& out,
               std::ostream& err);

struct OracleFlags {
  std::vector<std::string> times;
  bool full = false;
  Format format = Format::text;
};

int cmd_oracle(const std::string& graph_file, const OracleFlags& flags, std::ostream& out,
               std::ostream& err);

struct ExperimentFlags {
  std::string generator = "layered";
  std::vector<std::size_t> n{10};
  std::vector<std::size_t> w{2};
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::size_t pieces_per_edge = 2;
  bool timing = true;
  bool serial = false;
  std::string format = "csv";
};

int cmd_experiment(const ExperimentFlags& flags, std::ostream& out, std::ostream& err);

struct Claim1Flags {
  std::optional<std::string> td_file;
  bool inject_fault = false;
  Format format = Format::text;
};

int cmd_claim1(const std::string& graph_file, const Claim1Flags& flags, std::ostream& out,
               std::ostream& err);

}  // namespace tdsp::cli
