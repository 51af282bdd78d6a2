#pragma once

#include <chrono>
#include <compare>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace mktcx {

inline constexpr double kSecondsPerDay = 86400.0;

/// Seconds elapsed since 1900-01-01T00:00:00 UTC on the proleptic Gregorian
/// calendar, 86400 s per day, no leap seconds.
struct AbsoluteTime {
  double seconds = 0.0;

  friend auto operator<=>(const AbsoluteTime&, const AbsoluteTime&) = default;
};

using CalendarTime = std::chrono::sys_seconds;

/// Throws Error for instants before 1900-01-01T00:00:00.
AbsoluteTime to_absolute_time(CalendarTime t);
/// Inverse of to_absolute_time, rounded to the nearest second.
CalendarTime to_calendar_time(AbsoluteTime t);

/// Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM[:SS]` (or a space instead of
/// `T`), and `DD/MM/YYYY`. Nothing else is guessed.
CalendarTime parse_timestamp(std::string_view text);
/// ISO-8601 date, with a `THH:MM:SS` suffix only when not at midnight.
std::string format_timestamp(CalendarTime t);

enum class MarketKind { cryptocurrency, precious_metal, foreign_exchange, stock_index };

std::string_view to_string(MarketKind kind);
/// Accepts the canonical names plus a few spellings ("precious metal",
/// "precious-metal", "fx", ...).
MarketKind parse_market_kind(std::string_view text);

struct PricePoint {
  AbsoluteTime time;
  double price = 0.0;
};

/// Named, time-ordered price history of one market. Timestamps are strictly
/// increasing and prices positive; both are checked on construction.
class PriceSeries {
 public:
  PriceSeries() = default;
  PriceSeries(std::string id, MarketKind kind, std::vector<PricePoint> points);

  const std::string& id() const noexcept { return id_; }
  MarketKind kind() const noexcept { return kind_; }
  std::span<const PricePoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const PricePoint& operator[](std::size_t i) const { return points_[i]; }
  const PricePoint& front() const { return points_.front(); }
  const PricePoint& back() const { return points_.back(); }

  Eigen::VectorXd prices() const;
  Eigen::VectorXd times() const;

  /// Points with time in [lo, hi].
  PriceSeries between(AbsoluteTime lo, AbsoluteTime hi) const;

 private:
  std::string id_;
  MarketKind kind_ = MarketKind::cryptocurrency;
  std::vector<PricePoint> points_;
};

/// Parses `date,price` records (header optional). The result is sorted by
/// time; duplicate calendar days, non-positive prices and fewer than two
/// points are rejected with a ParseError naming the line.
PriceSeries parse_csv(std::string_view bytes, std::string id, MarketKind kind);
PriceSeries load_csv(const std::filesystem::path& path, std::string id, MarketKind kind);

/// Canonical form: `date,price` header, ISO dates, shortest round-trip prices.
std::string write_csv(const PriceSeries& series);

std::string read_file(const std::filesystem::path& path);

}  // namespace mktcx
