#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mktcx/error.hpp"
#include "mktcx/ingest.hpp"

namespace mktcx {

/// Sample moments of a return series. Kurtosis is the plain (Pearson)
/// fourth standardized moment, 3 for a normal distribution; subtract 3 for
/// excess kurtosis.
class ReturnStatistics {
 public:
  ReturnStatistics(double mean, double std_dev, std::size_t n,
                   std::optional<double> skewness, std::optional<double> kurtosis)
      : mean_(mean), std_dev_(std_dev), n_(n), skewness_(skewness), kurtosis_(kurtosis) {}

  double mean() const noexcept { return mean_; }
  /// Sample standard deviation (n-1 divisor).
  double std_dev() const noexcept { return std_dev_; }
  std::size_t n() const noexcept { return n_; }

  /// m3 / m2^(3/2) with n-divisor central moments.
  double skewness() const { return defined(skewness_); }
  /// m4 / m2^2 with n-divisor central moments.
  double kurtosis() const { return defined(kurtosis_); }
  bool has_shape() const noexcept { return skewness_.has_value(); }

 private:
  static double defined(const std::optional<double>& v) {
    if (!v) throw DegenerateInput("zero variance: skewness and kurtosis undefined");
    return *v;
  }

  double mean_;
  double std_dev_;
  std::size_t n_;
  std::optional<double> skewness_;
  std::optional<double> kurtosis_;
};

/// price(i+1) / price(i); length size() - 1.
Eigen::VectorXd daily_returns(const PriceSeries& series);
/// Natural log of daily_returns.
Eigen::VectorXd log_returns(const PriceSeries& series);

template <typename Derived>
ReturnStatistics moments(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const auto n = x.size();
  if (n < 2) throw DegenerateInput("moments: need at least 2 samples");

  const Scalar mean = x.mean();
  const auto centred = (x.array() - mean).eval();
  const Scalar m2 = centred.square().mean();
  const double std_dev = std::sqrt(static_cast<double>(centred.square().sum()) /
                                   static_cast<double>(n - 1));
  std::optional<double> skewness, kurtosis;
  if (m2 > Scalar(0)) {
    const Scalar m3 = centred.cube().mean();
    const Scalar m4 = centred.square().square().mean();
    skewness = static_cast<double>(m3 / std::pow(m2, Scalar(1.5)));
    kurtosis = static_cast<double>(m4 / (m2 * m2));
  }
  return ReturnStatistics(static_cast<double>(mean), std_dev, static_cast<std::size_t>(n),
                          skewness, kurtosis);
}

double normal_cdf(double z);

/// n * (Phi((b-mu)/sigma) - Phi((a-mu)/sigma)) for each bin [a, b). Edges may
/// be infinite.
Eigen::VectorXd lognormal_reference(const ReturnStatistics& stats,
                                    const Eigen::Ref<const Eigen::VectorXd>& edges,
                                    std::size_t n);

struct HistogramSpec {
  Eigen::VectorXd bin_edges;
  std::vector<std::size_t> observed_counts;
  Eigen::VectorXd expected_counts;
};

/// Freedman-Diaconis bin edges (h = 2 IQR n^(-1/3)), at most `max_bins` bins.
/// A sample without spread gets a single unit-width bin centred on it.
Eigen::VectorXd freedman_diaconis_edges(const Eigen::Ref<const Eigen::VectorXd>& x,
                                        std::size_t max_bins = 512);
Eigen::VectorXd uniform_edges(const Eigen::Ref<const Eigen::VectorXd>& x, std::size_t bins);

/// Bins are half-open except the last, which also takes its upper edge.
std::vector<std::size_t> bin_counts(const Eigen::Ref<const Eigen::VectorXd>& x,
                                    const Eigen::Ref<const Eigen::VectorXd>& edges);

/// Observed log-return histogram against the normal reference fitted to the
/// same sample. Throws DegenerateInput when the sample has zero variance.
HistogramSpec return_histogram(const Eigen::Ref<const Eigen::VectorXd>& log_ret,
                               const Eigen::Ref<const Eigen::VectorXd>& edges);

/// `bin_lo,bin_hi,observed,expected`
std::string write_histogram_csv(const HistogramSpec& h);

}  // namespace mktcx
