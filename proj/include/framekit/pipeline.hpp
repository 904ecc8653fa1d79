#pragma once

// Command pipeline behind the CLI binary. Lives in the library so the whole
// exit-code and output contract is testable in-process; the binary itself
// only parses argv into a RunConfig and forwards streams.
//
// Exit codes:
//   0  success
//   1  internal error (a verified identity failed, or an unexpected exception)
//   2  validation / input errors (bad spec file, bad config, resource caps,
//      degenerate frame, biorthogonality demanded of a non-minimal sequence)
//   3  analyze found a reconciliation mismatch between the analytic claims
//      and the numeric trends (the report is still written)

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "framekit/sequences.hpp"

namespace framekit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitMismatch = 3;

enum class Command { Analyze, Dual, Classify, Study, Report };

enum class OutputFormat { Text, Json, Csv };

struct RunConfig {
    Command command = Command::Analyze;
    std::string spec_path;
    std::vector<int> sizes;                // truncation sizes for structured specs
    Tolerance tol;
    std::optional<OutputFormat> format;    // empty: json, except report -> text
    std::string out_path;                  // empty: write to `out`
    bool require_biorthogonal = false;
    int max_dim = kDefaultMaxDim;          // ambient dimension cap
};

// Runs one command. The rendered artifact goes to `out` (or cfg.out_path);
// diagnostics go to `err` as single "framekit: ..." lines.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace framekit
