#include "mktcx/fractal.hpp"

#include <algorithm>
#include <limits>

namespace mktcx {
namespace {

double log_area(const UnitGridSeries& g, Eigen::Index l) {
  const double a = hw_area(g, l);
  if (!(a > 0.0)) {
    throw DegenerateInput("Hall-Wood: zero area at scale l=" + std::to_string(l) +
                          " (no variation between points " + std::to_string(l) +
                          " apart)");
  }
  return std::log(a);
}

}  // namespace

UnitGridSeries to_unit_grid(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() < 3) throw DegenerateInput("to_unit_grid: need at least 3 values");
  return UnitGridSeries{values};
}

UnitGridSeries to_unit_grid(const PriceSeries& series) { return to_unit_grid(series.prices()); }

HallWoodEstimate clamp_dimension(double raw) {
  if (!std::isfinite(raw)) throw DegenerateInput("Hall-Wood: non-finite estimate");
  return {std::clamp(raw, 1.0, std::nextafter(2.0, 0.0)), raw};
}

HallWoodEstimate hall_wood_dimension(const UnitGridSeries& g) {
  const double log_a1 = log_area(g, 1);
  const double log_a2 = log_area(g, 2);
  return clamp_dimension(2.0 - (log_a2 - log_a1) / std::log(2.0));
}

HallWoodEstimate hall_wood_ols(const UnitGridSeries& g, Eigen::Index scales) {
  const Eigen::Index n = g.intervals();
  if (scales < 2 || scales > n / 2) {
    throw Error("hall_wood_ols: scale count " + std::to_string(scales) + " outside [2, " +
                std::to_string(n / 2) + "]");
  }
  Eigen::VectorXd s(scales);
  Eigen::VectorXd log_a(scales);
  for (Eigen::Index l = 1; l <= scales; ++l) {
    s[l - 1] = std::log(static_cast<double>(l) / static_cast<double>(n));
    log_a[l - 1] = log_area(g, l);
  }
  const Eigen::VectorXd centred = s.array() - s.mean();
  return clamp_dimension(2.0 - centred.dot(log_a) / centred.squaredNorm());
}

}  // namespace mktcx
