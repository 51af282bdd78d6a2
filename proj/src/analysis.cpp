#include "mktcx/analysis.hpp"

#include <algorithm>
#include <limits>

#include "mktcx/fractal.hpp"
#include "mktcx/lzw.hpp"
#include "mktcx/returns.hpp"

namespace mktcx {

MarketAnchors peak_anchors(const PriceSeries& src, const PriceSeries& dst) {
  const auto ps = detect_peaks(src, 2);
  const auto pd = detect_peaks(dst, 2);
  return {{ps[0].time, ps[1].time}, {pd[0].time, pd[1].time}};
}

CorrelationResult correlate_markets(const PriceSeries& src, const PriceSeries& dst,
                                    const MarketAnchors& anchors, Selection selection) {
  CorrelationResult r;
  r.map = fit_time_map(anchors.source, anchors.dest);
  const auto [a, b] = truncate_overlap(map_series(src, r.map), dst);
  r.pair = nearest_filter(a, b, selection);

  const Eigen::Map<const Eigen::VectorXd> sp(r.pair.source_prices.data(),
                                             static_cast<Eigen::Index>(r.pair.size()));
  const Eigen::Map<const Eigen::VectorXd> dp(r.pair.dest_prices.data(),
                                             static_cast<Eigen::Index>(r.pair.size()));
  r.price = pearson_correlation(sp, dp);
  try {
    const auto n = sp.size();
    const Eigen::VectorXd sm = sp.tail(n - 1).cwiseQuotient(sp.head(n - 1)).array().log();
    const Eigen::VectorXd dm = dp.tail(n - 1).cwiseQuotient(dp.head(n - 1)).array().log();
    r.movement = pearson_correlation(sm, dm);
  } catch (const Error& e) {
    r.movement_failure = e.what();
  }
  return r;
}

const Metric& MarketMetrics::at(std::string_view name) const {
  const auto it = values.find(name);
  if (it == values.end()) throw Error("unknown metric '" + std::string(name) + "'");
  return it->second;
}

std::size_t MetricReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& m : markets) {
    for (const auto& [_, v] : m.values) n += v.present() ? 0 : 1;
  }
  return n;
}

namespace {

template <typename F>
void record(MarketMetrics& out, std::string_view name, F&& compute) {
  try {
    out.values[std::string(name)] = Metric::ok(compute());
  } catch (const std::exception& e) {
    out.values[std::string(name)] = Metric::failed(e.what());
  }
}

template <typename Names>
void fail_all(MarketMetrics& out, const Names& names, const std::string& why) {
  for (auto name : names) out.values[std::string(name)] = Metric::failed(why);
}

void fail_all(MarketMetrics& out, std::initializer_list<std::string_view> names,
              const std::string& why) {
  fail_all<std::initializer_list<std::string_view>>(out, names, why);
}

HallWoodEstimate dimension_of(const PriceSeries& s, Eigen::Index scales) {
  const auto grid = to_unit_grid(s);
  return scales == 2 ? hall_wood_dimension(grid) : hall_wood_ols(grid, scales);
}

}  // namespace

MarketMetrics compute_market_metrics(const PriceSeries& series, const MetricSettings& settings,
                                     const bdm::CtmTable* table) {
  MarketMetrics out;
  out.id = series.id();
  out.kind = series.kind();
  out.history_points = series.size();

  try {
    const auto hw = dimension_of(series, settings.hw_scales);
    out.values["hall_wood_full"] = Metric::ok(hw.dimension);
    out.values["hall_wood_full_raw"] = Metric::ok(hw.raw);
  } catch (const std::exception& e) {
    fail_all(out, {"hall_wood_full", "hall_wood_full_raw"}, e.what());
  }

  const AbsoluteTime lo =
      settings.window_start.value_or(AbsoluteTime{-std::numeric_limits<double>::infinity()});
  const AbsoluteTime hi =
      settings.window_end.value_or(AbsoluteTime{std::numeric_limits<double>::infinity()});
  const PriceSeries window = series.between(lo, hi);
  out.window_points = window.size();

  static constexpr std::array<std::string_view, 13> kWindowed = {
      "mean",           "std_dev",        "kurtosis",           "skewness",
      "block_entropy",  "compress_binary", "compress_real",     "bdm",
      "bdm_complexity", "bdm_deficiency", "bdm_missing_blocks", "hall_wood_window",
      "hall_wood_window_raw"};
  if (window.empty()) {
    fail_all(out, kWindowed, "empty window");
    return out;
  }
  out.window_first = window.front().time;
  out.window_last = window.back().time;
  if (window.size() < 2) {
    fail_all(out, kWindowed, "window holds a single point");
    return out;
  }

  record(out, "compress_real", [&] { return compressibility(serialize_prices(window)); });

  try {
    const auto stats = moments(log_returns(window));
    out.values["mean"] = Metric::ok(stats.mean());
    out.values["std_dev"] = Metric::ok(stats.std_dev());
    record(out, "kurtosis", [&] { return stats.kurtosis(); });
    record(out, "skewness", [&] { return stats.skewness(); });
  } catch (const std::exception& e) {
    fail_all(out, {"mean", "std_dev", "kurtosis", "skewness"}, e.what());
  }

  std::optional<BinaryMovementSeries> bits;
  try {
    bits = binarize(window, settings.ties);
  } catch (const std::exception& e) {
    fail_all(out, {"block_entropy", "compress_binary", "bdm", "bdm_complexity",
                   "bdm_deficiency", "bdm_missing_blocks"},
             e.what());
  }
  if (bits) {
    record(out, "block_entropy", [&] {
      return block_entropy(bits->bits, settings.max_block, settings.window_mode).normalized;
    });
    record(out, "compress_binary", [&] { return compressibility(bits->to_ascii()); });
    if (table == nullptr) {
      fail_all(out, {"bdm", "bdm_complexity", "bdm_deficiency", "bdm_missing_blocks"},
               "no CTM table");
    } else {
      try {
        const auto r = bdm::block_decomposition(*bits, *table, settings.bdm);
        out.values["bdm"] = Metric::ok(r.normalized);
        out.values["bdm_complexity"] = Metric::ok(r.complexity);
        out.values["bdm_deficiency"] = Metric::ok(r.deficiency);
        out.values["bdm_missing_blocks"] =
            Metric::ok(static_cast<double>(r.blocks_missing_from_table));
      } catch (const std::exception& e) {
        fail_all(out, {"bdm", "bdm_complexity", "bdm_deficiency", "bdm_missing_blocks"},
                 e.what());
      }
    }
  }

  try {
    const auto hw = dimension_of(window, settings.hw_scales);
    out.values["hall_wood_window"] = Metric::ok(hw.dimension);
    out.values["hall_wood_window_raw"] = Metric::ok(hw.raw);
  } catch (const std::exception& e) {
    fail_all(out, {"hall_wood_window", "hall_wood_window_raw"}, e.what());
  }
  return out;
}

std::vector<int> cluster_rows(const Eigen::Ref<const Eigen::MatrixXd>& features, std::size_t k) {
  const auto n = static_cast<std::size_t>(features.rows());
  if (k < 1) throw Error("group count must be at least 1");
  if (k > n) {
    throw Error("group count " + std::to_string(k) + " exceeds market count " + std::to_string(n));
  }
  if (!features.allFinite()) throw Error("feature matrix has non-finite entries");

  Eigen::MatrixXd z = features.rowwise() - features.colwise().mean();
  if (n > 1) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      const double sd = std::sqrt(z.col(c).squaredNorm() / static_cast<double>(n - 1));
      if (sd > 0.0) {
        z.col(c) /= sd;
      } else {
        z.col(c).setZero();
      }
    }
  }

  Eigen::MatrixXd dist(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist(i, j) = (z.row(i) - z.row(j)).norm();
    }
  }

  // Clusters stay sorted by their smallest member.
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
  const auto linkage = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double worst = 0.0;
    for (auto i : a) {
      for (auto j : b) worst = std::max(worst, dist(i, j));
    }
    return worst;
  };

  while (clusters.size() > k) {
    std::size_t best_a = 0, best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < clusters.size(); ++a) {
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        const double d = linkage(clusters[a], clusters[b]);
        if (d < best) {
          best = d;
          best_a = a;
          best_b = b;
        }
      }
    }
    auto& into = clusters[best_a];
    into.insert(into.end(), clusters[best_b].begin(), clusters[best_b].end());
    std::sort(into.begin(), into.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
  }

  std::vector<int> labels(n, -1);
  for (std::size_t g = 0; g < clusters.size(); ++g) {
    for (auto i : clusters[g]) labels[i] = static_cast<int>(g);
  }
  return labels;
}

std::vector<std::vector<std::string>> group_markets(const MetricReport& report,
                                                    const std::vector<std::string>& features,
                                                    std::size_t k) {
  if (features.empty()) throw Error("group_markets: no features selected");
  const auto rows = static_cast<Eigen::Index>(report.markets.size());
  Eigen::MatrixXd x(rows, static_cast<Eigen::Index>(features.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& market = report.markets[static_cast<std::size_t>(r)];
    for (std::size_t c = 0; c < features.size(); ++c) {
      const Metric& m = market.at(features[c]);
      if (!m.present()) {
        throw Error("group_markets: " + features[c] + " missing for " + market.id + " (" +
                    m.failure + ")");
      }
      x(r, static_cast<Eigen::Index>(c)) = *m.value;
    }
  }
  const auto labels = cluster_rows(x, k);
  std::vector<std::vector<std::string>> groups(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    groups[static_cast<std::size_t>(labels[i])].push_back(report.markets[i].id);
  }
  return groups;
}

}  // namespace mktcx
