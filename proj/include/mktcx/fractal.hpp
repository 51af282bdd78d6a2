#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include <Eigen/Core>

#include "mktcx/error.hpp"
#include "mktcx/ingest.hpp"

namespace mktcx {

/// Values X_0..X_n observed at t = i/n. Real timestamps are dropped: the
/// points are treated as equally spaced.
struct UnitGridSeries {
  Eigen::VectorXd values;

  Eigen::Index intervals() const noexcept { return values.size() - 1; }
};

UnitGridSeries to_unit_grid(const PriceSeries& series);
UnitGridSeries to_unit_grid(const Eigen::Ref<const Eigen::VectorXd>& values);

/// Estimated box area at scale l/n: (l/n) * sum_{i=1..floor(n/l)} |X_{il} - X_{(i-1)l}|.
/// Requires 1 <= l <= floor(n/2).
template <typename Derived>
double hw_area(const Eigen::MatrixBase<Derived>& values, Eigen::Index l) {
  const Eigen::Index n = values.size() - 1;
  if (n < 2 || l < 1 || l > n / 2) {
    throw Error("hw_area: scale l=" + std::to_string(l) + " outside [1, " +
                std::to_string(n < 0 ? 0 : n / 2) + "]");
  }
  double variation = 0.0;
  for (Eigen::Index i = 1; i <= n / l; ++i) {
    variation += std::abs(static_cast<double>(values[i * l] - values[(i - 1) * l]));
  }
  return variation * static_cast<double>(l) / static_cast<double>(n);
}

inline double hw_area(const UnitGridSeries& g, Eigen::Index l) { return hw_area(g.values, l); }

/// Dimension estimate clamped to [1, 2); `raw` is the unclamped value.
struct HallWoodEstimate {
  double dimension = 0.0;
  double raw = 0.0;
};

HallWoodEstimate clamp_dimension(double raw);

/// 2 - (log A(2/n) - log A(1/n)) / log 2. Throws DegenerateInput naming the
/// scale when either area is zero.
HallWoodEstimate hall_wood_dimension(const UnitGridSeries& g);

/// OLS slope of log A(l/n) on s_l = log(l/n) over l = 1..scales, subtracted
/// from 2. scales = 2 reduces to hall_wood_dimension.
HallWoodEstimate hall_wood_ols(const UnitGridSeries& g, Eigen::Index scales);

}  // namespace mktcx
