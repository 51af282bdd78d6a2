#include <doctest.h>

#include <chrono>
#include <random>

#include "mktcx/error.hpp"
#include "mktcx/format.hpp"
#include "mktcx/ingest.hpp"

using namespace mktcx;
using namespace std::chrono;

namespace {

// Day count by walking the calendar one day at a time.
long walk_days(int y, int m, int d) {
  const int month_days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const auto leap = [](int yr) { return (yr % 4 == 0 && yr % 100 != 0) || yr % 400 == 0; };
  int cy = 1900, cm = 1, cd = 1;
  long n = 0;
  while (cy != y || cm != m || cd != d) {
    ++n;
    const int len = month_days[cm - 1] + (cm == 2 && leap(cy) ? 1 : 0);
    if (++cd > len) {
      cd = 1;
      if (++cm > 12) {
        cm = 1;
        ++cy;
      }
    }
  }
  return n;
}

CalendarTime date(int y, unsigned m, unsigned d) {
  return sys_seconds{sys_days{year{y} / month{m} / day{d}}};
}

}  // namespace

TEST_CASE("absolute time epoch and day offsets") {
  CHECK(to_absolute_time(date(1900, 1, 1)).seconds == 0.0);
  CHECK(to_absolute_time(date(1900, 1, 2)).seconds == 86400.0);
  CHECK(to_absolute_time(date(1980, 1, 22)).seconds == walk_days(1980, 1, 22) * 86400.0);
  CHECK(to_absolute_time(date(2013, 11, 29)).seconds == walk_days(2013, 11, 29) * 86400.0);
  CHECK_THROWS_AS(to_absolute_time(date(1899, 12, 31)), Error);
}

TEST_CASE("absolute time is monotone with 86400 s per day") {
  auto d = sys_days{year{1900} / January / 1};
  double prev = -1.0;
  for (int i = 0; i < 60000; i += 7) {
    const double t = to_absolute_time(sys_seconds{d + days{i}}).seconds;
    const double next = to_absolute_time(sys_seconds{d + days{i + 1}}).seconds;
    CHECK(t > prev);
    CHECK(next - t == 86400.0);
    prev = t;
  }
  const auto t = to_absolute_time(date(2000, 2, 29));
  CHECK(to_calendar_time(t) == date(2000, 2, 29));
}

TEST_CASE("timestamp formats") {
  CHECK(parse_timestamp("2013-04-09") == date(2013, 4, 9));
  CHECK(parse_timestamp("09/04/2013") == date(2013, 4, 9));
  CHECK(parse_timestamp("2013-04-09T12:30:00Z") == date(2013, 4, 9) + hours{12} + minutes{30});
  CHECK(parse_timestamp("2013-04-09 01:02:03") == date(2013, 4, 9) + seconds{3723});
  CHECK_THROWS(parse_timestamp("2013-02-30"));
  CHECK_THROWS(parse_timestamp("yesterday"));
  CHECK(format_timestamp(date(2013, 4, 9)) == "2013-04-09");
}

TEST_CASE("market kinds") {
  for (auto k : {MarketKind::cryptocurrency, MarketKind::precious_metal,
                 MarketKind::foreign_exchange, MarketKind::stock_index}) {
    CHECK(parse_market_kind(to_string(k)) == k);
  }
  CHECK_THROWS(parse_market_kind("bond"));
}

TEST_CASE("parse_csv examples") {
  const auto s = parse_csv("2013-04-09,213.72\n2013-11-29,1132.26", "btc", MarketKind::cryptocurrency);
  REQUIRE(s.size() == 2);
  CHECK(s[0].price == 213.72);
  CHECK(s[1].price == 1132.26);
  CHECK(to_calendar_time(s[0].time) == date(2013, 4, 9));

  CHECK_THROWS_AS(parse_csv("", "x", MarketKind::stock_index), ParseError);
  CHECK_THROWS_AS(parse_csv("2013-04-09,-5", "x", MarketKind::stock_index), ParseError);
}

TEST_CASE("parse_csv reports line numbers") {
  try {
    parse_csv("date,price\n2013-04-09,1\n2013-04-10,abc\n", "x", MarketKind::stock_index);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_csv("2013-04-09,1\n2013-04-10,2\n2013-04-09,3\n", "x", MarketKind::stock_index);
    FAIL("expected a duplicate error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_csv("2013-04-09,1,2\n2013-04-10,2\n", "x", MarketKind::stock_index),
                  ParseError);
  CHECK_THROWS_AS(parse_csv("2013-04-09,0\n2013-04-10,2\n", "x", MarketKind::stock_index),
                  ParseError);
}

TEST_CASE("parse_csv sorts and tolerates comments, header and BOM") {
  const auto s = parse_csv("\xEF\xBB\xBF" "Date,Close\n# note\n2013-04-10,2\n\n2013-04-09,1\n", "x",
                           MarketKind::stock_index);
  REQUIRE(s.size() == 2);
  CHECK(s[0].price == 1.0);
  CHECK(s[1].price == 2.0);
}

TEST_CASE("csv roundtrip is identity on the point list") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> price(0.01, 1e5);
  std::uniform_int_distribution<int> gap(1, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PricePoint> pts;
    double t = to_absolute_time(date(1990, 1, 1)).seconds;
    for (int i = 0; i < 40; ++i) {
      t += gap(rng) * kSecondsPerDay;
      pts.push_back({AbsoluteTime{t}, price(rng)});
    }
    const PriceSeries s("x", MarketKind::stock_index, pts);
    const auto back = parse_csv(write_csv(s), "x", MarketKind::stock_index);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(back[i].time == s[i].time);
      CHECK(back[i].price == s[i].price);
    }
  }
}

TEST_CASE("series window selection") {
  const auto s = parse_csv("2013-04-09,1\n2013-04-10,2\n2013-04-11,3\n", "x", MarketKind::stock_index);
  const auto w = s.between(to_absolute_time(date(2013, 4, 10)), to_absolute_time(date(2013, 4, 11)));
  CHECK(w.size() == 2);
  CHECK(s.prices()[2] == 3.0);
}

TEST_CASE("number formatting helpers") {
  CHECK(format_shortest(2.0) == "2");
  CHECK(format_shortest(1.5) == "1.5");
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(parse_double("1e3") == 1000.0);
  CHECK_FALSE(parse_double("1.0x").has_value());
  CHECK_FALSE(parse_double("").has_value());
  CHECK(trim("  a b \t") == "a b");
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
}
