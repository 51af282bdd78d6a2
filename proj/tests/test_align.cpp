#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>

#include "mktcx/align.hpp"
#include "mktcx/error.hpp"

using namespace mktcx;

namespace {

AbsoluteTime day(const char* text) { return to_absolute_time(parse_timestamp(text)); }

PriceSeries series_at(const std::vector<double>& times, const std::vector<double>& prices = {}) {
  std::vector<PricePoint> pts;
  for (std::size_t i = 0; i < times.size(); ++i) {
    pts.push_back({AbsoluteTime{times[i]}, prices.empty() ? 1.0 + static_cast<double>(i) : prices[i]});
  }
  return PriceSeries("s", MarketKind::stock_index, pts);
}

std::vector<double> times_of(const std::vector<AbsoluteTime>& ts) {
  std::vector<double> out;
  for (auto t : ts) out.push_back(t.seconds);
  return out;
}

}  // namespace

TEST_CASE("detect_peaks") {
  const auto s = series_at({0, 1, 2, 3, 4}, {1, 3, 1, 5, 1});
  const auto p = detect_peaks(s, 2);
  REQUIRE(p.size() == 2);
  CHECK(p[0].price == 3.0);
  CHECK(p[1].price == 5.0);
  CHECK(p[0].time.seconds < p[1].time.seconds);

  const auto rising = series_at({0, 1, 2, 3}, {1, 2, 3, 4});
  const auto top = detect_peaks(rising, 1);
  REQUIRE(top.size() == 1);
  CHECK(top[0].price == 4.0);
  CHECK_THROWS_AS(detect_peaks(rising, 2), Error);
}

TEST_CASE("detect_peaks on the 2013 Bitcoin peaks") {
  const auto s = parse_csv(
      "2013-03-01,34\n2013-04-09,213.72\n2013-04-16,68\n2013-10-01,125\n"
      "2013-11-29,1132.26\n2013-12-18,520\n2014-01-05,205\n2014-02-25,130\n",
      "Bitcoin", MarketKind::cryptocurrency);
  const auto p = detect_peaks(s, 2);
  REQUIRE(p.size() == 2);
  CHECK(p[0].time == day("2013-04-09"));
  CHECK(p[0].price == 213.72);
  CHECK(p[1].time == day("2013-11-29"));
  CHECK(p[1].price == 1132.26);
}

TEST_CASE("fit_time_map on published peak dates") {
  const AnchorPair bitcoin{day("2013-04-09"), day("2013-11-29")};
  const AnchorPair gold{day("1980-01-22"), day("2011-09-05")};
  const AnchorPair silver{day("1980-01-21"), day("2011-04-28")};

  const auto btc_gold = fit_time_map(bitcoin, gold);
  CHECK(btc_gold.slope == doctest::Approx(49.3547).epsilon(1e-6));
  CHECK(btc_gold.intercept == doctest::Approx(-1.7389e11).epsilon(1e-4));

  const auto btc_silver = fit_time_map(bitcoin, silver);
  CHECK(btc_silver.slope == doctest::Approx(48.8034).epsilon(1e-6));
  CHECK(btc_silver.intercept == doctest::Approx(-1.71919e11).epsilon(1e-5));

  const auto gold_silver = fit_time_map(gold, silver);
  CHECK(gold_silver.slope == doctest::Approx(0.98883).epsilon(1e-5));
  CHECK(gold_silver.intercept == doctest::Approx(2.81323e7).epsilon(1e-5));
}

TEST_CASE("fit_time_map identity and errors") {
  const AnchorPair a{AbsoluteTime{100.0}, AbsoluteTime{5000.0}};
  const auto m = fit_time_map(a, a);
  CHECK(m.slope == 1.0);
  CHECK(m.intercept == 0.0);
  CHECK_THROWS_AS(fit_time_map({AbsoluteTime{3.0}, AbsoluteTime{3.0}}, a), Error);
}

TEST_CASE("fit_time_map reproduces anchors and inverts") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 4e9);
  for (int i = 0; i < 1000; ++i) {
    double s0 = u(rng), s1 = u(rng), d0 = u(rng), d1 = u(rng);
    if (s0 > s1) std::swap(s0, s1);
    if (d0 > d1) std::swap(d0, d1);
    if (s1 - s0 < 1e3 || d1 - d0 < 1e3) continue;
    const AnchorPair src{AbsoluteTime{s0}, AbsoluteTime{s1}};
    const AnchorPair dst{AbsoluteTime{d0}, AbsoluteTime{d1}};
    const auto m = fit_time_map(src, dst);
    CHECK(m(src[0]).seconds == doctest::Approx(d0).epsilon(1e-9).scale(d1));
    CHECK(m(src[1]).seconds == doctest::Approx(d1).epsilon(1e-9));
    const auto inv = m.inverse();
    CHECK(inv(m(src[0])).seconds == doctest::Approx(s0).epsilon(1e-9).scale(s1));
    CHECK(inv(m(src[1])).seconds == doctest::Approx(s1).epsilon(1e-9));
  }
}

TEST_CASE("map_series applies the map to times only") {
  const auto s = series_at({10, 20}, {3, 4});
  const auto m = map_series(s, LinearTimeMap{2.0, 5.0});
  CHECK(m[0].time.seconds == 25.0);
  CHECK(m[1].time.seconds == 45.0);
  CHECK(m[1].price == 4.0);
}

TEST_CASE("truncate_overlap") {
  const auto src = series_at({10, 12, 15, 18, 20});
  const auto dst = series_at({15, 17, 20, 25, 30});
  auto [a, b] = truncate_overlap(src, dst);
  CHECK(times_of({a.front().time, a.back().time}) == std::vector<double>{15, 20});
  CHECK(times_of({b.front().time, b.back().time}) == std::vector<double>{15, 20});
  CHECK(a.size() == 3);
  CHECK(b.size() == 3);

  const auto inner = series_at({12, 14, 16});
  const auto outer = series_at({10, 13, 15, 20});
  auto [c, d] = truncate_overlap(inner, outer);
  CHECK(c.size() == 3);
  CHECK(d.size() == 2);

  CHECK_THROWS_AS(truncate_overlap(series_at({0, 1}), series_at({5, 6})), Error);
  CHECK_THROWS_AS(truncate_overlap(series_at({0, 5}), series_at({5, 6})), Error);
}

TEST_CASE("nearest_filter examples") {
  const auto p = nearest_filter(series_at({0, 100}), series_at({-5, 40, 99}));
  CHECK(times_of(p.times) == std::vector<double>{-5, 99});

  const auto same = series_at({1, 2, 3}, {4, 5, 6});
  const auto q = nearest_filter(same, same);
  CHECK(times_of(q.times) == std::vector<double>{1, 2, 3});
  CHECK(q.source_prices == q.dest_prices);

  const auto tie = nearest_filter(series_at({50}, {1}), series_at({40, 60}));
  CHECK(times_of(tie.times) == std::vector<double>{40});
}

TEST_CASE("nearest_filter unique selection never repeats a destination point") {
  const auto src = series_at({0, 1, 2, 3});
  const auto dst = series_at({0.4, 10, 11, 12, 13});
  const auto repeats = nearest_filter(src, dst);
  CHECK(times_of(repeats.times) == std::vector<double>{0.4, 0.4, 0.4, 0.4});
  const auto unique = nearest_filter(src, dst, Selection::unique);
  const auto ts = times_of(unique.times);
  CHECK(ts.size() == 4);
  CHECK(std::adjacent_find(ts.begin(), ts.end(), std::greater_equal<>()) == ts.end());
  CHECK_THROWS_AS(nearest_filter(series_at({0, 1, 2}), series_at({0, 1}), Selection::unique),
                  Error);
}

TEST_CASE("nearest_filter length contract and idempotence") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  std::uniform_int_distribution<int> len(2, 60);
  for (int trial = 0; trial < 200; ++trial) {
    auto draw = [&](int n) {
      std::vector<double> t;
      while (static_cast<int>(t.size()) < n) {
        t.push_back(u(rng));
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
      }
      return series_at(t);
    };
    const auto src = draw(len(rng));
    const auto dst = draw(len(rng));
    const auto first = nearest_filter(src, dst);
    CHECK(first.size() == src.size());
    std::vector<PricePoint> chosen;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (chosen.empty() || chosen.back().time != first.times[i]) {
        chosen.push_back({first.times[i], first.dest_prices[i]});
      }
    }
    const auto second = nearest_filter(src, PriceSeries("d", MarketKind::stock_index, chosen));
    CHECK(times_of(second.times) == times_of(first.times));
  }
}

TEST_CASE("aligned csv") {
  const auto p = nearest_filter(series_at({0, 86400}, {1, 2}), series_at({0, 86400}, {3, 4}));
  CHECK(write_aligned_csv(p).rfind("dest_time,source_price,dest_price\n", 0) == 0);
}
