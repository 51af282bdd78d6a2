#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mktcx/analysis.hpp"
#include "mktcx/ctm_table.hpp"
#include "mktcx/run_config.hpp"

namespace mktcx {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitPartialFailure = 1;
inline constexpr int kExitConfigError = 2;

struct PairOutcome {
  PairSpec spec;
  std::optional<CorrelationResult> result;
  std::string failure;
};

struct ReportOutcome {
  MetricReport report;
  std::vector<PairOutcome> pairs;
  /// market, item, reason for every failed metric, histogram or pair.
  std::vector<std::array<std::string, 3>> failures;
  std::string ctm_header;
  std::vector<std::filesystem::path> written;
  int exit_code = kExitSuccess;
};

/// `# mktcx <version> config=<hash>` line that opens every report file.
std::string output_header(const RunConfig& config);

std::string write_report_csv(const MetricReport& report, const std::string& header);
std::string write_report_text(const ReportOutcome& outcome, const RunConfig& config,
                              const std::string& header);

/// Validates, then computes every market and pair and writes
///   report.csv, report.txt, failures.csv, correlations.csv,
///   histograms/<id>.csv, aligned/<source>__<dest>.csv
/// under config.output_dir. Throws ConfigError before computing anything
/// when the configuration is invalid.
ReportOutcome run_report(const RunConfig& config);

/// Makes an id safe to use as a file name.
std::string file_stem(std::string_view id);

}  // namespace mktcx
