#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mktcx/tm_enumeration.hpp"

namespace mktcx::bdm {

/// Provenance of a CTM table, serialised as its header line.
struct CtmMeta {
  int states = 0;
  int colors = 2;
  std::uint64_t step_bound = 0;
  std::uint64_t machines = 0;
  bool sampled = false;

  /// `# states=<n> colors=2 step_bound=<s> machines=<m> mode=<exhaustive|sampled>`
  std::string header_line() const;
  static CtmMeta parse_header(std::string_view line);

  friend bool operator==(const CtmMeta&, const CtmMeta&) = default;
};

/// Throws Error unless the table can be used for BDM: two colours, a known
/// state count, and for exhaustive tables a step bound covering the Busy
/// Beaver time. `expected_states`, when set, must match.
void verify_compatible(const CtmMeta& meta, std::optional<int> expected_states = std::nullopt);

struct CtmEntry {
  double complexity = 0.0;  ///< bits
  bool fallback = false;    ///< not produced by the enumeration
};

/// Orders binary strings by length, then lexicographically.
struct ShortLexLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

/// Complexity estimates for every binary string of length 1..max_length.
class CtmTable {
 public:
  using Entries = std::map<std::string, CtmEntry, ShortLexLess>;

  CtmTable(CtmMeta meta, Entries entries);

  const CtmMeta& meta() const noexcept { return meta_; }
  const Entries& entries() const noexcept { return entries_; }
  std::size_t max_length() const noexcept { return max_length_; }

  std::optional<CtmEntry> find(std::string_view bits) const;
  /// Largest complexity among strings of this length (fallbacks included).
  double max_complexity(std::size_t length) const;
  double min_complexity(std::size_t length) const;
  std::size_t fallback_count() const;

 private:
  CtmMeta meta_;
  Entries entries_;
  std::size_t max_length_ = 0;
};

/// K(x) = -log2 m(x) for every produced string up to `max_length`. Missing
/// strings get (largest K already assigned at that length, or the previous
/// length's largest when none) + 1 and are flagged as fallbacks.
CtmTable ctm_from_frequency(const OutputDistribution& dist, std::size_t max_length = 12);

/// Header line, then `<bits>\t<K to 9 decimals>\t<exact|fallback>` per string
/// in short-lex order.
std::string write_ctm_table(const CtmTable& table);
CtmTable read_ctm_table(std::string_view text);

void save_ctm_table(const CtmTable& table, const std::filesystem::path& path);
CtmTable load_ctm_table(const std::filesystem::path& path);

}  // namespace mktcx::bdm
