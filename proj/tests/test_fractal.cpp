#include <doctest.h>

#include <cmath>
#include <random>

#include "mktcx/fractal.hpp"
#include "synthetic.hpp"

using namespace mktcx;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("to_unit_grid") {
  const auto s = testing::daily_series("x", MarketKind::stock_index, vec({5, 4, 3, 2, 1}));
  const auto g = to_unit_grid(s);
  CHECK(g.intervals() == 4);
  CHECK(g.values == vec({5, 4, 3, 2, 1}));
  CHECK_THROWS_AS(to_unit_grid(vec({1, 2})), Error);
}

TEST_CASE("hw_area examples") {
  const auto alt = vec({0, 1, 0, 1, 0});
  CHECK(hw_area(alt, 1) == 1.0);
  CHECK(hw_area(alt, 2) == 0.0);
  CHECK_THROWS_AS(hw_area(alt, 3), Error);
  CHECK_THROWS_AS(hw_area(alt, 0), Error);
  const Eigen::VectorXd flat = Eigen::VectorXd::Constant(9, 3.0);
  for (Eigen::Index l = 1; l <= 4; ++l) CHECK(hw_area(flat, l) == 0.0);
}

TEST_CASE("hall_wood_dimension examples") {
  const Eigen::VectorXd line = Eigen::VectorXd::LinSpaced(1025, 0.0, 1024.0);
  CHECK(hall_wood_dimension({line}).dimension == 1.0);
  CHECK(hall_wood_dimension({line}).raw == 1.0);
  CHECK_THROWS_AS(hall_wood_dimension({vec({0, 1, 0, 1, 0})}), DegenerateInput);
  CHECK_THROWS_AS(hall_wood_dimension({Eigen::VectorXd::Constant(10, 1.0)}), DegenerateInput);
}

TEST_CASE("hall_wood_ols") {
  // n = lcm(1..16) so every scale tiles the line without a partial box.
  const Eigen::VectorXd line = Eigen::VectorXd::LinSpaced(720721, 0.0, 720720.0);
  for (Eigen::Index L : {2, 3, 5, 8, 16}) {
    CHECK(hall_wood_ols({line}, L).dimension == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hall_wood_ols({line}, 1), Error);
  CHECK_THROWS_AS(hall_wood_ols({line}, 360361), Error);
}

TEST_CASE("estimator properties on random series") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> len(8, 400);
  for (int trial = 0; trial < 300; ++trial) {
    const auto w = testing::gaussian_walk(len(rng), rng);
    const UnitGridSeries g{w};
    const auto d = hall_wood_dimension(g);
    CHECK(std::isfinite(d.raw));
    CHECK(d.dimension >= 1.0);
    CHECK(d.dimension < 2.0);
    CHECK(hall_wood_ols(g, 2).raw == doctest::Approx(d.raw).epsilon(1e-12));
    const UnitGridSeries scaled{(w * 3.7).eval()};
    const UnitGridSeries shifted{(w.array() + 11.0).matrix().eval()};
    CHECK(hall_wood_dimension(scaled).raw == doctest::Approx(d.raw).epsilon(1e-12));
    CHECK(hall_wood_dimension(shifted).raw == doctest::Approx(d.raw).epsilon(1e-9));
  }
}

TEST_CASE("clamping keeps the raw value") {
  const auto lo = clamp_dimension(0.8);
  CHECK(lo.dimension == 1.0);
  CHECK(lo.raw == 0.8);
  const auto hi = clamp_dimension(2.3);
  CHECK(hi.dimension < 2.0);
  CHECK(hi.raw == 2.3);
}

TEST_CASE("fBm generator has the requested roughness") {
  std::mt19937_64 rng(21);
  double sum = 0.0;
  for (int i = 0; i < 20; ++i) {
    sum += hall_wood_dimension({testing::fractional_brownian_motion(4096, 0.8, rng)}).dimension;
  }
  CHECK(sum / 20 == doctest::Approx(1.2).epsilon(0.05));
}
