#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "detequiv/scalar.hpp"

namespace detequiv::cli {

enum ExitCode : int {
  kPositive = 0,
  kNegative = 1,
  kInputError = 2,
  kInternalFailure = 3,
};

struct Command {
  /// check-equiv, check-classd, classify, recover, gen, perturb, oracle or search.
  std::string subcommand;
  /// A kernel document, or an instance bundle supplying both k and q.
  std::optional<std::filesystem::path> k;
  std::optional<std::filesystem::path> q;
  /// Report destination; the report goes to standard output when absent.
  std::optional<std::filesystem::path> out;
  std::optional<std::size_t> max_order;
  bool audit_consistency = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  FieldSpec field = FieldSpec::rationals();
  std::size_t n = 4;
  bool transpose = false;
  std::size_t zeros = 0;
};

/// Runs one subcommand. The human summary goes to `summary`, diagnostics to
/// `diagnostics`, and the JSON report to cmd.out (or to `summary`).
int run(const Command& cmd, std::ostream& summary, std::ostream& diagnostics);

}  // namespace detequiv::cli
