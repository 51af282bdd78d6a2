#include "mktcx/align.hpp"

#include <algorithm>
#include <cmath>

#include "mktcx/error.hpp"
#include "mktcx/format.hpp"

namespace mktcx {

std::vector<PricePoint> detect_peaks(const PriceSeries& series, std::size_t k) {
  if (k == 0) throw Error("detect_peaks: k must be at least 1");
  if (series.size() < 3) throw DegenerateInput("detect_peaks: need at least 3 points");

  const auto pts = series.points();
  const std::size_t n = pts.size();
  std::vector<std::size_t> maxima;
  for (std::size_t i = 0; i < n; ++i) {
    const bool above_left = i == 0 || pts[i].price > pts[i - 1].price;
    const bool above_right = i + 1 == n || pts[i].price > pts[i + 1].price;
    if (above_left && above_right) maxima.push_back(i);
  }
  if (maxima.size() < k) {
    throw DegenerateInput("detect_peaks: found " + std::to_string(maxima.size()) +
                          " local maxima in " + series.id() + ", need " +
                          std::to_string(k));
  }
  std::stable_sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].price > pts[b].price;
  });
  maxima.resize(k);
  std::sort(maxima.begin(), maxima.end());

  std::vector<PricePoint> peaks;
  peaks.reserve(k);
  for (auto i : maxima) peaks.push_back(pts[i]);
  return peaks;
}

LinearTimeMap fit_time_map(const AnchorPair& src, const AnchorPair& dst) {
  const double src_span = src[1].seconds - src[0].seconds;
  const double dst_span = dst[1].seconds - dst[0].seconds;
  if (src_span == 0.0) throw DegenerateInput("fit_time_map: source anchors coincide");
  if (dst_span == 0.0) throw DegenerateInput("fit_time_map: destination anchors coincide");
  if (src_span < 0.0 || dst_span < 0.0) {
    throw Error("fit_time_map: anchors must be in chronological order");
  }
  const double slope = dst_span / src_span;
  return {slope, dst[0].seconds - slope * src[0].seconds};
}

PriceSeries map_series(const PriceSeries& series, const LinearTimeMap& map) {
  if (!(map.slope > 0.0)) throw Error("map_series: slope must be positive");
  std::vector<PricePoint> points(series.points().begin(), series.points().end());
  for (auto& p : points) p.time = map(p.time);
  return PriceSeries(series.id(), series.kind(), std::move(points));
}

std::pair<PriceSeries, PriceSeries> truncate_overlap(const PriceSeries& mapped_src,
                                                     const PriceSeries& dst) {
  if (mapped_src.empty() || dst.empty()) {
    throw DegenerateInput("truncate_overlap: empty series");
  }
  const AbsoluteTime lo = std::max(mapped_src.front().time, dst.front().time);
  const AbsoluteTime hi = std::min(mapped_src.back().time, dst.back().time);
  if (hi < lo) {
    throw DegenerateInput("truncate_overlap: " + mapped_src.id() + " and " + dst.id() +
                          " do not overlap");
  }
  auto a = mapped_src.between(lo, hi);
  auto b = dst.between(lo, hi);
  if (a.size() < 2 || b.size() < 2) {
    throw DegenerateInput("truncate_overlap: overlap of " + mapped_src.id() + " and " +
                          dst.id() + " holds fewer than 2 points");
  }
  return {std::move(a), std::move(b)};
}

AlignedPair nearest_filter(const PriceSeries& src, const PriceSeries& dst,
                           Selection selection) {
  if (dst.empty()) throw DegenerateInput("nearest_filter: destination is empty");
  if (selection == Selection::unique && dst.size() < src.size()) {
    throw DegenerateInput("nearest_filter: unique selection needs at least as many "
                          "destination points as source points");
  }

  AlignedPair out;
  out.source_id = src.id();
  out.dest_id = dst.id();
  out.times.reserve(src.size());
  out.source_prices.reserve(src.size());
  out.dest_prices.reserve(src.size());

  const auto d = dst.points();
  const auto by_time = [](const PricePoint& p, AbsoluteTime t) { return p.time < t; };
  std::size_t next_free = 0;  // unique mode: first destination index still unused

  for (std::size_t i = 0; i < src.size(); ++i) {
    const AbsoluteTime t = src[i].time;
    std::size_t lo_bound = selection == Selection::unique ? next_free : 0;
    // Unique mode keeps enough destination points for the remaining sources.
    const std::size_t hi_bound =
        selection == Selection::unique ? d.size() - (src.size() - i) : d.size() - 1;

    auto it = std::lower_bound(d.begin() + static_cast<std::ptrdiff_t>(lo_bound),
                               d.begin() + static_cast<std::ptrdiff_t>(hi_bound) + 1, t,
                               by_time);
    std::size_t after = static_cast<std::size_t>(it - d.begin());
    std::size_t pick;
    if (after > hi_bound) {
      pick = hi_bound;
    } else if (after == lo_bound) {
      pick = lo_bound;
    } else {
      const std::size_t before = after - 1;
      const double gap_before = t.seconds - d[before].time.seconds;
      const double gap_after = d[after].time.seconds - t.seconds;
      pick = gap_after < gap_before ? after : before;
    }
    next_free = pick + 1;

    out.times.push_back(d[pick].time);
    out.source_prices.push_back(src[i].price);
    out.dest_prices.push_back(d[pick].price);
  }
  return out;
}

std::string write_aligned_csv(const AlignedPair& pair) {
  std::string out = "dest_time,source_price,dest_price\n";
  for (std::size_t i = 0; i < pair.size(); ++i) {
    out += format_shortest(pair.times[i].seconds);
    out += ',';
    out += format_shortest(pair.source_prices[i]);
    out += ',';
    out += format_shortest(pair.dest_prices[i]);
    out += '\n';
  }
  return out;
}

}  // namespace mktcx
