#include "mktcx/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mktcx/error.hpp"
#include "mktcx/format.hpp"

namespace mktcx {
namespace {

using namespace std::chrono;

constexpr sys_days kEpoch = year{1900} / January / 1;

bool parse_uint(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

sys_days make_day(int y, int m, int d, std::string_view original) {
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)},
                           day{static_cast<unsigned>(d)}};
  if (m < 1 || m > 12 || d < 1 || !ymd.ok()) {
    throw Error("invalid calendar date '" + std::string(original) + "'");
  }
  return sys_days{ymd};
}

seconds parse_time_of_day(std::string_view text, std::string_view original) {
  int h = 0, m = 0, s = 0;
  const bool ok =
      (text.size() == 5 || text.size() == 8) && text[2] == ':' &&
      parse_uint(text.substr(0, 2), h) && parse_uint(text.substr(3, 2), m) &&
      (text.size() == 5 || (text[5] == ':' && parse_uint(text.substr(6, 2), s)));
  if (!ok || h > 23 || m > 59 || s > 59) {
    throw Error("invalid time of day in '" + std::string(original) + "'");
  }
  return hours{h} + minutes{m} + seconds{s};
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

AbsoluteTime to_absolute_time(CalendarTime t) {
  const auto since = t - sys_seconds{kEpoch};
  if (since.count() < 0) {
    throw Error("timestamp " + format_timestamp(t) + " precedes 1900-01-01T00:00:00");
  }
  return AbsoluteTime{static_cast<double>(since.count())};
}

CalendarTime to_calendar_time(AbsoluteTime t) {
  return sys_seconds{kEpoch} + seconds{std::llround(t.seconds)};
}

CalendarTime parse_timestamp(std::string_view text) {
  text = trim(text);
  const std::string_view original = text;
  int y = 0, m = 0, d = 0;
  if (text.size() == 10 && text[2] == '/' && text[5] == '/') {
    if (!parse_uint(text.substr(0, 2), d) || !parse_uint(text.substr(3, 2), m) ||
        !parse_uint(text.substr(6, 4), y)) {
      throw Error("unrecognised date '" + std::string(original) + "'");
    }
    return sys_seconds{make_day(y, m, d, original)};
  }
  if (text.size() >= 10 && text[4] == '-' && text[7] == '-') {
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), m) ||
        !parse_uint(text.substr(8, 2), d)) {
      throw Error("unrecognised date '" + std::string(original) + "'");
    }
    const sys_days day_part = make_day(y, m, d, original);
    if (text.size() == 10) return sys_seconds{day_part};
    if (text[10] != 'T' && text[10] != ' ') {
      throw Error("unrecognised date '" + std::string(original) + "'");
    }
    std::string_view tod = text.substr(11);
    if (!tod.empty() && tod.back() == 'Z') tod.remove_suffix(1);
    return sys_seconds{day_part} + parse_time_of_day(tod, original);
  }
  throw Error("unrecognised date '" + std::string(original) +
              "' (expected YYYY-MM-DD or DD/MM/YYYY)");
}

std::string format_timestamp(CalendarTime t) {
  const sys_days day_part = floor<days>(t);
  const year_month_day ymd{day_part};
  const auto tod = t - day_part;
  char buf[40];
  if (tod.count() == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  } else {
    const hh_mm_ss hms{tod};
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<int>(hms.hours().count()),
                  static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
  }
  return buf;
}

std::string_view to_string(MarketKind kind) {
  switch (kind) {
    case MarketKind::cryptocurrency: return "cryptocurrency";
    case MarketKind::precious_metal: return "precious-metal";
    case MarketKind::foreign_exchange: return "foreign-exchange";
    case MarketKind::stock_index: return "stock-index";
  }
  return "unknown";
}

MarketKind parse_market_kind(std::string_view text) {
  std::string key;
  for (char c : trim(text)) {
    const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    key.push_back(lc == ' ' || lc == '_' ? '-' : lc);
  }
  if (key == "cryptocurrency" || key == "crypto") return MarketKind::cryptocurrency;
  if (key == "precious-metal" || key == "metal") return MarketKind::precious_metal;
  if (key == "foreign-exchange" || key == "fx" || key == "forex") {
    return MarketKind::foreign_exchange;
  }
  if (key == "stock-index" || key == "index") return MarketKind::stock_index;
  throw Error("unknown market kind '" + std::string(text) + "'");
}

PriceSeries::PriceSeries(std::string id, MarketKind kind, std::vector<PricePoint> points)
    : id_(std::move(id)), kind_(kind), points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].price > 0.0) || !std::isfinite(points_[i].price)) {
      throw Error(id_ + ": price at index " + std::to_string(i) + " is not positive");
    }
    if (i > 0 && !(points_[i - 1].time < points_[i].time)) {
      throw Error(id_ + ": timestamps not strictly increasing at index " +
                  std::to_string(i));
    }
  }
}

Eigen::VectorXd PriceSeries::prices() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i) out[static_cast<Eigen::Index>(i)] = points_[i].price;
  return out;
}

Eigen::VectorXd PriceSeries::times() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = points_[i].time.seconds;
  }
  return out;
}

PriceSeries PriceSeries::between(AbsoluteTime lo, AbsoluteTime hi) const {
  const auto by_time = [](const PricePoint& p, AbsoluteTime t) { return p.time < t; };
  const auto first = std::lower_bound(points_.begin(), points_.end(), lo, by_time);
  const auto last = std::upper_bound(
      first, points_.end(), hi, [](AbsoluteTime t, const PricePoint& p) { return t < p.time; });
  return PriceSeries(id_, kind_, std::vector<PricePoint>(first, last));
}

PriceSeries parse_csv(std::string_view bytes, std::string id, MarketKind kind) {
  struct Record {
    sys_seconds when;
    double price;
    std::size_t line;
  };
  std::vector<Record> records;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto nl = bytes.find('\n', pos);
    std::string_view line = bytes.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? bytes.size() : nl + 1;
    ++line_no;

    if (line_no == 1 && line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") {
      line.remove_prefix(3);
    }
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (records.empty() && line_no == 1 && !fields.empty() && !fields[0].empty() &&
        std::isalpha(static_cast<unsigned char>(fields[0].front()))) {
      continue;  // header
    }
    if (fields.size() != 2) {
      throw ParseError(line_no, "expected 2 fields 'date,price', found " +
                                    std::to_string(fields.size()));
    }
    sys_seconds when;
    try {
      when = parse_timestamp(fields[0]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    const auto price = parse_double(fields[1]);
    if (!price || !std::isfinite(*price)) {
      throw ParseError(line_no, "price '" + std::string(fields[1]) + "' is not a number");
    }
    if (!(*price > 0.0)) {
      throw ParseError(line_no, "price " + std::string(fields[1]) + " is not positive");
    }
    if (when < sys_seconds{kEpoch}) {
      throw ParseError(line_no, "date precedes 1900-01-01");
    }
    records.push_back({when, *price, line_no});
  }

  if (records.size() < 2) {
    throw ParseError(0, id + ": need at least 2 price points, found " +
                            std::to_string(records.size()));
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const Record& a, const Record& b) { return a.when < b.when; });
  std::vector<PricePoint> points;
  points.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0 && floor<days>(records[i].when) == floor<days>(records[i - 1].when)) {
      const auto first = std::min(records[i].line, records[i - 1].line);
      const auto second = std::max(records[i].line, records[i - 1].line);
      throw ParseError(second, "duplicate calendar day " +
                                   format_timestamp(floor<days>(records[i].when)) +
                                   " (also on line " + std::to_string(first) + ")");
    }
    points.push_back({to_absolute_time(records[i].when), records[i].price});
  }
  return PriceSeries(std::move(id), kind, std::move(points));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PriceSeries load_csv(const std::filesystem::path& path, std::string id, MarketKind kind) {
  return parse_csv(read_file(path), std::move(id), kind);
}

std::string write_csv(const PriceSeries& series) {
  std::string out = "date,price\n";
  for (const auto& p : series.points()) {
    out += format_timestamp(to_calendar_time(p.time));
    out += ',';
    out += format_shortest(p.price);
    out += '\n';
  }
  return out;
}

}  // namespace mktcx
