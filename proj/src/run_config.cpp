#include "mktcx/run_config.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "mktcx/format.hpp"

namespace mktcx {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    out.push_back(trim(text.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size() && !text.empty();
}

std::optional<bool> parse_bool(std::string_view v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  return std::nullopt;
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view p) {
  const std::filesystem::path path{std::string(p)};
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  - " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir, std::vector<std::string>& problems) {
  key = trim(key);
  value = trim(value);
  const auto bad = [&](const std::string& why) {
    problems.push_back(std::string(key) + ": " + why);
  };
  const auto count = [&](auto& field, long lo) {
    long v = 0;
    if (!parse_number(value, v) || v < lo) {
      bad("expected an integer >= " + std::to_string(lo) + ", got '" + std::string(value) + "'");
      return;
    }
    field = static_cast<std::remove_reference_t<decltype(field)>>(v);
  };

  if (key == "market") {
    const auto parts = split(value, ',');
    if (parts.size() != 3 || parts[0].empty() || parts[2].empty()) {
      bad("expected 'market = <id>, <kind>, <path>'");
      return;
    }
    try {
      c.markets.push_back({std::string(parts[0]), parse_market_kind(parts[1]),
                           resolve(base_dir, parts[2])});
    } catch (const Error& e) {
      bad(e.what());
    }
  } else if (key == "pair") {
    const auto parts = split(value, ',');
    if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
      bad("expected 'pair = <source id>, <dest id>'");
      return;
    }
    c.pairs.push_back({std::string(parts[0]), std::string(parts[1])});
  } else if (key == "window_start" || key == "window_end") {
    auto& field = key == "window_start" ? c.window_start : c.window_end;
    if (value.empty()) {
      field.reset();
      return;
    }
    try {
      field = parse_timestamp(value);
    } catch (const Error& e) {
      bad(e.what());
    }
  } else if (key == "block_max") {
    count(c.max_block, 1);
  } else if (key == "block_windows") {
    if (value == "overlapping") {
      c.window_mode = WindowMode::overlapping;
    } else if (value == "disjoint") {
      c.window_mode = WindowMode::disjoint;
    } else {
      bad("expected overlapping or disjoint");
    }
  } else if (key == "ties") {
    if (value == "zero") {
      c.ties = TieMode::as_decrease;
    } else if (value == "strict") {
      c.ties = TieMode::strict;
    } else {
      bad("expected zero or strict");
    }
  } else if (key == "bdm_block") {
    count(c.bdm_block, 1);
  } else if (key == "bdm_offset") {
    count(c.bdm_offset, 1);
  } else if (key == "ctm_table") {
    c.ctm_table = value.empty() ? std::filesystem::path{} : resolve(base_dir, value);
  } else if (key == "ctm_states") {
    count(c.ctm_states, 1);
  } else if (key == "hw_scales") {
    count(c.hw_scales, 2);
  } else if (key == "histogram_bins") {
    if (value == "fd" || value == "auto") {
      c.histogram_bins = 0;
    } else {
      count(c.histogram_bins, 1);
    }
  } else if (key == "unique_selection") {
    const auto b = parse_bool(value);
    if (!b) {
      bad("expected true or false");
      return;
    }
    c.selection = *b ? Selection::unique : Selection::allow_repeats;
  } else if (key == "output_dir") {
    c.output_dir = resolve(base_dir, value);
  } else if (key == "formats") {
    c.csv = c.text = false;
    for (auto f : split(value, ',')) {
      if (f == "csv") {
        c.csv = true;
      } else if (f == "text") {
        c.text = true;
      } else {
        bad("unknown format '" + std::string(f) + "'");
      }
    }
  } else if (key == "threads") {
    count(c.threads, 0);
  } else {
    bad("unknown key");
  }
}

RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig c;
  c.output_dir = base_dir / "report";
  std::vector<std::string> problems;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    std::vector<std::string> line_problems;
    apply_setting(c, line.substr(0, eq), line.substr(eq + 1), base_dir, line_problems);
    for (auto& p : line_problems) problems.push_back("line " + std::to_string(line_no) + ": " + p);
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_file(path), path.parent_path());
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> problems;
  if (c.markets.empty()) problems.push_back("no markets configured");
  std::set<std::string> ids;
  for (const auto& m : c.markets) {
    if (!ids.insert(m.id).second) problems.push_back("duplicate market id '" + m.id + "'");
    if (!std::filesystem::is_regular_file(m.path)) {
      problems.push_back("market '" + m.id + "': file not found: " + m.path.string());
    }
  }
  for (const auto& p : c.pairs) {
    for (const auto* id : {&p.source, &p.dest}) {
      if (!ids.count(*id)) problems.push_back("pair references unknown market '" + *id + "'");
    }
    if (p.source == p.dest) problems.push_back("pair '" + p.source + "' correlates a market with itself");
  }
  if (c.window_start && c.window_end && !(*c.window_start < *c.window_end)) {
    problems.push_back("window_start must be before window_end");
  }
  if (c.bdm_offset > c.bdm_block) problems.push_back("bdm_offset must not exceed bdm_block");
  if (c.ctm_table.empty()) {
    if (c.ctm_states < 1 || c.ctm_states > 3) {
      problems.push_back("ctm_states must be 1..3 for in-memory enumeration (use ctm-gen for 4)");
    }
  } else if (!std::filesystem::is_regular_file(c.ctm_table)) {
    problems.push_back("ctm_table not found: " + c.ctm_table.string());
  }
  if (!c.csv && !c.text) problems.push_back("formats selects no output");
  return problems;
}

std::string canonical_config(const RunConfig& c) {
  std::ostringstream os;
  for (const auto& m : c.markets) {
    std::string digest = "missing";
    try {
      digest = hex64(fnv1a64(read_file(m.path)));
    } catch (const Error&) {
    }
    os << "market=" << m.id << ',' << to_string(m.kind) << ',' << digest << '\n';
  }
  os << "window_start=" << (c.window_start ? format_timestamp(*c.window_start) : "") << '\n'
     << "window_end=" << (c.window_end ? format_timestamp(*c.window_end) : "") << '\n'
     << "block_max=" << c.max_block << '\n'
     << "block_windows=" << (c.window_mode == WindowMode::overlapping ? "overlapping" : "disjoint")
     << '\n'
     << "ties=" << (c.ties == TieMode::as_decrease ? "zero" : "strict") << '\n'
     << "bdm_block=" << c.bdm_block << '\n'
     << "bdm_offset=" << c.bdm_offset << '\n';
  if (c.ctm_table.empty()) {
    os << "ctm=enumerate:" << c.ctm_states << '\n';
  } else {
    std::string digest = "missing";
    try {
      digest = hex64(fnv1a64(read_file(c.ctm_table)));
    } catch (const Error&) {
    }
    os << "ctm=file:" << digest << '\n';
  }
  os << "hw_scales=" << c.hw_scales << '\n'
     << "histogram_bins=" << c.histogram_bins << '\n'
     << "unique_selection=" << (c.selection == Selection::unique) << '\n';
  for (const auto& p : c.pairs) os << "pair=" << p.source << ',' << p.dest << '\n';
  return os.str();
}

std::uint64_t config_hash(const RunConfig& c) { return fnv1a64(canonical_config(c)); }

}  // namespace mktcx
