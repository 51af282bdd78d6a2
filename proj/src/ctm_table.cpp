#include "mktcx/ctm_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mktcx/format.hpp"
#include "mktcx/ingest.hpp"

namespace mktcx::bdm {
namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(1, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

bool is_bitstring(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

}  // namespace

std::string CtmMeta::header_line() const {
  return "# states=" + std::to_string(states) + " colors=" + std::to_string(colors) +
         " step_bound=" + std::to_string(step_bound) + " machines=" + std::to_string(machines) +
         " mode=" + (sampled ? "sampled" : "exhaustive");
}

CtmMeta CtmMeta::parse_header(std::string_view line) {
  if (line.substr(0, 2) != "# ") throw ParseError(1, "CTM table header must start with '# '");
  line.remove_prefix(2);
  CtmMeta meta;
  bool seen[5] = {};
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const auto space = line.find(' ', pos);
    const auto token = line.substr(pos, space - pos);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw ParseError(1, "bad header token '" + std::string(token) + "'");
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    if (key == "states") {
      meta.states = static_cast<int>(parse_u64(value, key));
      seen[0] = true;
    } else if (key == "colors") {
      meta.colors = static_cast<int>(parse_u64(value, key));
      seen[1] = true;
    } else if (key == "step_bound") {
      meta.step_bound = parse_u64(value, key);
      seen[2] = true;
    } else if (key == "machines") {
      meta.machines = parse_u64(value, key);
      seen[3] = true;
    } else if (key == "mode") {
      if (value != "exhaustive" && value != "sampled") {
        throw ParseError(1, "mode must be exhaustive or sampled");
      }
      meta.sampled = value == "sampled";
      seen[4] = true;
    } else {
      throw ParseError(1, "unknown header key '" + std::string(key) + "'");
    }
    if (space == std::string_view::npos) break;
    pos = space + 1;
  }
  if (!std::all_of(std::begin(seen), std::end(seen), [](bool b) { return b; })) {
    throw ParseError(1, "CTM table header is missing fields");
  }
  return meta;
}

void verify_compatible(const CtmMeta& meta, std::optional<int> expected_states) {
  if (meta.colors != 2) throw Error("CTM table must use 2 colors");
  if (meta.states < 1 || meta.states > kMaxStates) {
    throw Error("CTM table has unsupported state count " + std::to_string(meta.states));
  }
  if (!meta.sampled && meta.step_bound < busy_beaver_steps(meta.states)) {
    throw Error("exhaustive CTM table step bound " + std::to_string(meta.step_bound) +
                " is below the Busy Beaver time " +
                std::to_string(busy_beaver_steps(meta.states)));
  }
  if (expected_states && *expected_states != meta.states) {
    throw Error("CTM table was built for " + std::to_string(meta.states) + " states, expected " +
                std::to_string(*expected_states));
  }
}

CtmTable::CtmTable(CtmMeta meta, Entries entries)
    : meta_(meta), entries_(std::move(entries)) {
  for (const auto& [bits, e] : entries_) {
    if (!is_bitstring(bits)) throw Error("CTM table key '" + bits + "' is not a bit string");
    if (!(e.complexity > 0.0)) throw Error("CTM complexity of '" + bits + "' is not positive");
  }
  max_length_ = entries_.empty() ? 0 : entries_.rbegin()->first.size();
  for (std::size_t len = 1; len <= max_length_ && len < 63; ++len) {
    const auto expected = std::size_t{1} << len;
    const auto lo = entries_.lower_bound(std::string(len, '0'));
    const auto hi = entries_.upper_bound(std::string(len, '1'));
    if (static_cast<std::size_t>(std::distance(lo, hi)) != expected) {
      throw Error("CTM table does not cover every string of length " + std::to_string(len));
    }
  }
}

std::optional<CtmEntry> CtmTable::find(std::string_view bits) const {
  const auto it = entries_.find(bits);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double CtmTable::max_complexity(std::size_t length) const {
  if (length == 0 || length > max_length_) throw Error("length outside CTM table coverage");
  double best = 0.0;
  for (auto it = entries_.lower_bound(std::string(length, '0'));
       it != entries_.end() && it->first.size() == length; ++it) {
    best = std::max(best, it->second.complexity);
  }
  return best;
}

double CtmTable::min_complexity(std::size_t length) const {
  if (length == 0 || length > max_length_) throw Error("length outside CTM table coverage");
  double best = INFINITY;
  for (auto it = entries_.lower_bound(std::string(length, '0'));
       it != entries_.end() && it->first.size() == length; ++it) {
    best = std::min(best, it->second.complexity);
  }
  return best;
}

std::size_t CtmTable::fallback_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second.fallback; }));
}

CtmTable ctm_from_frequency(const OutputDistribution& dist, std::size_t max_length) {
  if (dist.counts.empty()) throw DegenerateInput("ctm_from_frequency: empty distribution");
  if (max_length == 0 || max_length > 24) throw Error("ctm_from_frequency: max_length must be 1..24");
  const double total = static_cast<double>(dist.total());

  CtmTable::Entries entries;
  for (const auto& [x, c] : dist.counts) {
    if (x.size() > max_length) continue;
    const double m = static_cast<double>(c) / total;
    // Smallest double K with 2^-K <= m, so rounding never breaks the bound.
    double k = -std::log2(m);
    while (std::exp2(-k) > m) k = std::nextafter(k, HUGE_VAL);
    entries.emplace(x, CtmEntry{k, false});
  }

  const auto max_at = [&](std::size_t len) {
    double best = -1.0;
    for (auto it = entries.lower_bound(std::string(len, '0'));
         it != entries.end() && it->first.size() == len; ++it) {
      best = std::max(best, it->second.complexity);
    }
    return best;
  };

  double previous_max = 0.0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const double produced_max = max_at(len);
    const double fallback = (produced_max < 0.0 ? previous_max : produced_max) + 1.0;
    std::string s(len, '0');
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      for (std::size_t b = 0; b < len; ++b) s[len - 1 - b] = ((v >> b) & 1U) ? '1' : '0';
      entries.try_emplace(s, CtmEntry{fallback, true});
    }
    previous_max = max_at(len);
  }

  CtmMeta meta;
  meta.states = dist.states;
  meta.step_bound = dist.step_bound;
  meta.machines = dist.machines;
  meta.sampled = dist.sampled;
  return CtmTable(meta, std::move(entries));
}

namespace {

// Nine decimals, rounded up so a reloaded K is never below the computed one.
std::string format_complexity(double k) {
  const double up = std::ceil(k * 1e9) / 1e9;
  std::string s = format_fixed(up, 9);
  if (*parse_double(s) < k) s = format_fixed(up + 1e-9, 9);
  return s;
}

}  // namespace

std::string write_ctm_table(const CtmTable& table) {
  std::string out = table.meta().header_line() + '\n';
  for (const auto& [bits, e] : table.entries()) {
    out += bits;
    out += '\t';
    out += format_complexity(e.complexity);
    out += e.fallback ? "\tfallback\n" : "\texact\n";
  }
  return out;
}

CtmTable read_ctm_table(std::string_view text) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  const auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    const auto nl = text.find('\n', pos);
    line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw ParseError(0, "empty CTM table");
  const CtmMeta meta = CtmMeta::parse_header(line);

  CtmTable::Entries entries;
  while (next_line(line)) {
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) throw ParseError(line_no, "expected 3 tab-separated fields");
    const auto bits = line.substr(0, t1);
    const auto k = parse_double(line.substr(t1 + 1, t2 - t1 - 1));
    const auto kind = line.substr(t2 + 1);
    if (!is_bitstring(bits)) throw ParseError(line_no, "key is not a bit string");
    if (!k || !(*k > 0.0)) throw ParseError(line_no, "complexity must be a positive number");
    if (kind != "exact" && kind != "fallback") throw ParseError(line_no, "flag must be exact or fallback");
    if (!entries.emplace(std::string(bits), CtmEntry{*k, kind == "fallback"}).second) {
      throw ParseError(line_no, "duplicate string '" + std::string(bits) + "'");
    }
  }
  return CtmTable(meta, std::move(entries));
}

void save_ctm_table(const CtmTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << write_ctm_table(table);
  if (!out) throw Error("failed writing " + path.string());
}

CtmTable load_ctm_table(const std::filesystem::path& path) {
  return read_ctm_table(read_file(path));
}

}  // namespace mktcx::bdm
