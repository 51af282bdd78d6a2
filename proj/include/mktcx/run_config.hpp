#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mktcx/align.hpp"
#include "mktcx/encode.hpp"
#include "mktcx/entropy.hpp"
#include "mktcx/error.hpp"
#include "mktcx/ingest.hpp"

namespace mktcx {

struct MarketSource {
  std::string id;
  MarketKind kind = MarketKind::cryptocurrency;
  std::filesystem::path path;
};

struct PairSpec {
  std::string source;
  std::string dest;
};

/// Settings of one `report` run. Built from a flat `key = value` file; see
/// README for the key list.
struct RunConfig {
  std::vector<MarketSource> markets;
  std::optional<CalendarTime> window_start;
  std::optional<CalendarTime> window_end;
  std::size_t max_block = 4;
  WindowMode window_mode = WindowMode::overlapping;
  TieMode ties = TieMode::as_decrease;
  std::size_t bdm_block = 4;
  std::size_t bdm_offset = 4;
  std::filesystem::path ctm_table;  ///< empty: enumerate `ctm_states` in memory
  int ctm_states = 3;
  long hw_scales = 2;
  std::size_t histogram_bins = 0;  ///< 0: Freedman-Diaconis
  std::vector<PairSpec> pairs;
  Selection selection = Selection::allow_repeats;
  std::filesystem::path output_dir = "report";
  bool csv = true;
  bool text = true;
  std::size_t threads = 0;
};

/// Raised with every problem found, before any computation starts.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Applies one setting. Relative paths resolve against `base_dir`.
/// Problems are appended to `problems` rather than thrown.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir, std::vector<std::string>& problems);

/// Parses a config file body; throws ConfigError listing every bad line.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Semantic checks (window order, files present, references resolve, ...).
std::vector<std::string> validate(const RunConfig& config);

/// Stable text of every setting that affects results. Market files enter by
/// content hash so the fingerprint does not depend on where data lives;
/// output location and thread count are excluded.
std::string canonical_config(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);

}  // namespace mktcx
