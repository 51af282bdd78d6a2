#include "mktcx/returns.hpp"

#include <algorithm>
#include <limits>

#include "mktcx/format.hpp"

namespace mktcx {

Eigen::VectorXd daily_returns(const PriceSeries& series) {
  if (series.size() < 2) throw DegenerateInput("daily_returns: need at least 2 prices");
  const Eigen::VectorXd p = series.prices();
  const auto n = p.size();
  return p.tail(n - 1).cwiseQuotient(p.head(n - 1));
}

Eigen::VectorXd log_returns(const PriceSeries& series) {
  return daily_returns(series).array().log().matrix();
}

double normal_cdf(double z) {
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

Eigen::VectorXd lognormal_reference(const ReturnStatistics& stats,
                                    const Eigen::Ref<const Eigen::VectorXd>& edges,
                                    std::size_t n) {
  if (!(stats.std_dev() > 0.0)) {
    throw DegenerateInput("lognormal_reference: standard deviation is zero");
  }
  if (edges.size() < 2) throw Error("lognormal_reference: need at least 2 bin edges");
  Eigen::VectorXd cdf(edges.size());
  for (Eigen::Index i = 0; i < edges.size(); ++i) {
    if (i > 0 && !(edges[i] > edges[i - 1])) {
      throw Error("lognormal_reference: bin edges must be strictly increasing");
    }
    cdf[i] = normal_cdf((edges[i] - stats.mean()) / stats.std_dev());
  }
  const auto bins = edges.size() - 1;
  return static_cast<double>(n) * (cdf.tail(bins) - cdf.head(bins));
}

Eigen::VectorXd uniform_edges(const Eigen::Ref<const Eigen::VectorXd>& x, std::size_t bins) {
  if (x.size() == 0) throw DegenerateInput("histogram: empty sample");
  const double lo = x.minCoeff();
  const double hi = x.maxCoeff();
  if (bins == 0) bins = 1;
  if (!(hi > lo)) {
    Eigen::VectorXd e(2);
    e << lo - 0.5, lo + 0.5;
    return e;
  }
  return Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(bins) + 1, lo, hi);
}

Eigen::VectorXd freedman_diaconis_edges(const Eigen::Ref<const Eigen::VectorXd>& x,
                                        std::size_t max_bins) {
  if (x.size() == 0) throw DegenerateInput("histogram: empty sample");
  std::vector<double> sorted(x.data(), x.data() + x.size());
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return i + 1 < sorted.size() ? sorted[i] + frac * (sorted[i + 1] - sorted[i]) : sorted[i];
  };
  const double iqr = quantile(0.75) - quantile(0.25);
  const double range = sorted.back() - sorted.front();
  std::size_t bins = 1;
  if (iqr > 0.0 && range > 0.0) {
    const double width = 2.0 * iqr * std::cbrt(1.0 / static_cast<double>(sorted.size()));
    bins = static_cast<std::size_t>(std::ceil(range / width));
    bins = std::clamp<std::size_t>(bins, 1, max_bins);
  }
  return uniform_edges(x, bins);
}

std::vector<std::size_t> bin_counts(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& edges) {
  if (edges.size() < 2) throw Error("histogram: need at least 2 bin edges");
  const double* first = edges.data();
  const double* last = edges.data() + edges.size();
  std::vector<std::size_t> counts(static_cast<std::size_t>(edges.size() - 1), 0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x[i];
    if (v < *first || v > *(last - 1)) continue;
    auto bin = static_cast<std::size_t>(std::upper_bound(first, last, v) - first);
    bin = bin == 0 ? 0 : bin - 1;
    counts[std::min(bin, counts.size() - 1)]++;
  }
  return counts;
}

HistogramSpec return_histogram(const Eigen::Ref<const Eigen::VectorXd>& log_ret,
                               const Eigen::Ref<const Eigen::VectorXd>& edges) {
  HistogramSpec h;
  h.bin_edges = edges;
  h.observed_counts = bin_counts(log_ret, edges);
  h.expected_counts =
      lognormal_reference(moments(log_ret), edges, static_cast<std::size_t>(log_ret.size()));
  return h;
}

std::string write_histogram_csv(const HistogramSpec& h) {
  std::string out = "bin_lo,bin_hi,observed,expected\n";
  for (std::size_t i = 0; i < h.observed_counts.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    out += format_shortest(h.bin_edges[k]) + ',' + format_shortest(h.bin_edges[k + 1]) + ',' +
           std::to_string(h.observed_counts[i]) + ',' + format_shortest(h.expected_counts[k]) +
           '\n';
  }
  return out;
}

}  // namespace mktcx
