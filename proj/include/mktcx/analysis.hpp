#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mktcx/align.hpp"
#include "mktcx/bdm.hpp"
#include "mktcx/encode.hpp"
#include "mktcx/entropy.hpp"
#include "mktcx/error.hpp"
#include "mktcx/ingest.hpp"

namespace mktcx {

template <typename DerivedA, typename DerivedB>
double pearson_correlation(const Eigen::MatrixBase<DerivedA>& a,
                           const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw Error("pearson_correlation: length mismatch (" + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) throw DegenerateInput("pearson_correlation: need at least 2 samples");
  const auto ca = (a.array() - a.mean()).matrix().eval();
  const auto cb = (b.array() - b.mean()).matrix().eval();
  const double saa = static_cast<double>(ca.squaredNorm());
  const double sbb = static_cast<double>(cb.squaredNorm());
  if (!(saa > 0.0) || !(sbb > 0.0)) {
    throw DegenerateInput("pearson_correlation: zero variance");
  }
  const double r = static_cast<double>(ca.dot(cb)) / std::sqrt(saa * sbb);
  return std::clamp(r, -1.0, 1.0);
}

/// Source and destination anchors for the time map.
struct MarketAnchors {
  AnchorPair source;
  AnchorPair dest;
};

/// The two largest peaks of each series.
MarketAnchors peak_anchors(const PriceSeries& src, const PriceSeries& dst);

struct CorrelationResult {
  LinearTimeMap map;
  AlignedPair pair;
  double price = 0.0;  ///< correlation of the paired price levels
  /// Correlation of the paired log returns, when defined.
  std::optional<double> movement;
  std::string movement_failure;
};

/// fit_time_map -> truncate_overlap -> nearest_filter -> pearson_correlation.
CorrelationResult correlate_markets(const PriceSeries& src, const PriceSeries& dst,
                                    const MarketAnchors& anchors,
                                    Selection selection = Selection::allow_repeats);

/// A metric value or the reason it could not be computed.
struct Metric {
  std::optional<double> value;
  std::string failure;

  static Metric ok(double v) { return {v, {}}; }
  static Metric failed(std::string why) { return {std::nullopt, std::move(why)}; }
  bool present() const noexcept { return value.has_value(); }
};

/// Report columns, in output order.
inline constexpr std::array<std::string_view, 15> kMetricNames = {
    "mean",          "std_dev",         "kurtosis",           "skewness",
    "block_entropy", "compress_binary", "compress_real",      "bdm",
    "bdm_complexity", "bdm_deficiency", "bdm_missing_blocks", "hall_wood_full",
    "hall_wood_full_raw", "hall_wood_window", "hall_wood_window_raw"};

struct MarketMetrics {
  std::string id;
  MarketKind kind = MarketKind::cryptocurrency;
  std::size_t history_points = 0;
  std::size_t window_points = 0;
  std::optional<AbsoluteTime> window_first;
  std::optional<AbsoluteTime> window_last;
  std::map<std::string, Metric, std::less<>> values;

  const Metric& at(std::string_view name) const;
};

struct MetricReport {
  std::vector<MarketMetrics> markets;

  std::size_t failure_count() const;
};

struct MetricSettings {
  std::optional<AbsoluteTime> window_start;
  std::optional<AbsoluteTime> window_end;
  std::size_t max_block = 4;
  WindowMode window_mode = WindowMode::overlapping;
  TieMode ties = TieMode::as_decrease;
  bdm::BdmOptions bdm;
  Eigen::Index hw_scales = 2;
};

/// Every metric of kMetricNames for one market; a failing metric is recorded
/// with its reason and never affects the others. `table` may be null, in
/// which case the BDM metrics fail.
MarketMetrics compute_market_metrics(const PriceSeries& series, const MetricSettings& settings,
                                     const bdm::CtmTable* table);

/// Complete-linkage agglomerative clustering of z-scored rows, cut at `k`
/// groups. Returns one label per row; labels number groups by their first
/// row. Ties merge the lexicographically first pair of clusters.
std::vector<int> cluster_rows(const Eigen::Ref<const Eigen::MatrixXd>& features, std::size_t k);

/// Groups market ids by the named metrics. Groups and their members keep
/// report order.
std::vector<std::vector<std::string>> group_markets(const MetricReport& report,
                                                    const std::vector<std::string>& features,
                                                    std::size_t k);

}  // namespace mktcx
