#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mktcx/ingest.hpp"

namespace mktcx {

/// y = slope * x + intercept, mapping one market's time axis onto another's.
struct LinearTimeMap {
  double slope = 1.0;
  double intercept = 0.0;

  AbsoluteTime operator()(AbsoluteTime t) const { return {slope * t.seconds + intercept}; }
  LinearTimeMap inverse() const { return {1.0 / slope, -intercept / slope}; }
};

/// A pair of chronologically ordered anchor instants (typically two peaks).
using AnchorPair = std::array<AbsoluteTime, 2>;

/// Two equal-length price lists paired on the destination time axis.
struct AlignedPair {
  std::string source_id;
  std::string dest_id;
  std::vector<AbsoluteTime> times;
  std::vector<double> source_prices;
  std::vector<double> dest_prices;

  std::size_t size() const noexcept { return times.size(); }
};

/// The `k` largest local maxima, returned in chronological order. A point is
/// a local maximum when strictly above both neighbours; endpoints need only
/// beat their single neighbour. Equal prices rank the earlier point first.
std::vector<PricePoint> detect_peaks(const PriceSeries& series, std::size_t k);

/// Exact two-point fit taking src[0] -> dst[0] and src[1] -> dst[1].
LinearTimeMap fit_time_map(const AnchorPair& src, const AnchorPair& dst);

/// Re-stamps every point of `series` through `map`.
PriceSeries map_series(const PriceSeries& series, const LinearTimeMap& map);

/// Restricts both series to [max(first times), min(last times)].
std::pair<PriceSeries, PriceSeries> truncate_overlap(const PriceSeries& mapped_src,
                                                     const PriceSeries& dst);

enum class Selection {
  allow_repeats,  ///< a destination point may pair with several source points
  unique,         ///< each destination point is used at most once
};

/// For each source point picks the destination point with the nearest
/// timestamp (earlier wins ties). The result has exactly one entry per
/// source point, stamped with the destination time.
AlignedPair nearest_filter(const PriceSeries& src, const PriceSeries& dst,
                           Selection selection = Selection::allow_repeats);

/// `dest_time,source_price,dest_price`
std::string write_aligned_csv(const AlignedPair& pair);

}  // namespace mktcx
