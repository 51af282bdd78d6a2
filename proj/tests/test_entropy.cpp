#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string_view>
#include <vector>

#include "mktcx/entropy.hpp"
#include "mktcx/error.hpp"

using namespace mktcx;

namespace {

std::vector<std::uint8_t> sym(std::string_view s) {
  std::vector<std::uint8_t> out;
  for (char c : s) out.push_back(static_cast<std::uint8_t>(c - '0'));
  return out;
}

}  // namespace

TEST_CASE("shannon_entropy examples") {
  CHECK(shannon_entropy(sym("0000")) == 0.0);
  CHECK(shannon_entropy(sym("0101")) == 1.0);
  const double oracle = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(shannon_entropy(sym("0001")) == doctest::Approx(oracle).epsilon(1e-15));
  CHECK(shannon_entropy(sym("0001")) == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK_THROWS_AS(shannon_entropy({}), Error);
}

TEST_CASE("shannon_entropy bounds and permutation invariance") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> alpha(1, 8), len(1, 300);
  for (int trial = 0; trial < 500; ++trial) {
    const int a = alpha(rng);
    std::uniform_int_distribution<int> s(0, a - 1);
    std::vector<std::uint8_t> x(static_cast<std::size_t>(len(rng)));
    for (auto& v : x) v = static_cast<std::uint8_t>(s(rng));
    const double h = shannon_entropy(x);
    CHECK(h <= std::log2(static_cast<double>(a)) + 1e-12);
    auto y = x;
    std::shuffle(y.begin(), y.end(), rng);
    CHECK(shannon_entropy(y) == doctest::Approx(h).epsilon(1e-12));
  }
  std::vector<std::uint8_t> uniform;
  for (int r = 0; r < 5; ++r)
    for (std::uint8_t c = 0; c < 6; ++c) uniform.push_back(c);
  CHECK(shannon_entropy(uniform) == doctest::Approx(std::log2(6.0)).epsilon(1e-14));
}

TEST_CASE("block_entropy examples") {
  const auto zeros = block_entropy(std::vector<std::uint8_t>(64, 0), 4);
  CHECK(zeros.bits == 0.0);
  CHECK(zeros.normalized == 0.0);

  std::vector<std::uint8_t> alt;
  for (int i = 0; i < 100; ++i) alt.push_back(static_cast<std::uint8_t>(i % 2));
  // 99 overlapping pairs split 50/49 between "01" and "10", so H2 is just under 1.
  const auto two = block_entropy(alt, 2);
  const double h2 = -(50.0 / 99 * std::log2(50.0 / 99) + 49.0 / 99 * std::log2(49.0 / 99));
  CHECK(two.bits == doctest::Approx(1.0 + h2).epsilon(1e-12));
  CHECK(two.bits == doctest::Approx(2.0).epsilon(1e-4));

  std::mt19937_64 rng(17);
  std::bernoulli_distribution coin;
  std::vector<std::uint8_t> fair(100000);
  for (auto& v : fair) v = coin(rng) ? 1 : 0;
  CHECK(std::abs(block_entropy(fair, 4).normalized - 1.0) < 0.02);

  CHECK_THROWS_AS(block_entropy(sym("010"), 4), Error);
  CHECK_THROWS_AS(block_entropy(sym("0101"), 0), Error);
}

TEST_CASE("block_entropy with one-symbol blocks equals shannon_entropy") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> len(1, 200), s(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint8_t> x(static_cast<std::size_t>(len(rng)));
    for (auto& v : x) v = static_cast<std::uint8_t>(s(rng));
    CHECK(block_entropy(x, 1).bits == shannon_entropy(x));
    for (auto mode : {WindowMode::overlapping, WindowMode::disjoint}) {
      if (x.size() < 4) continue;
      const auto r = block_entropy(x, 4, mode);
      CHECK(r.normalized >= 0.0);
      CHECK(r.normalized <= 1.0);
    }
  }
}

TEST_CASE("disjoint windows") {
  // "00110011": length-2 disjoint blocks are 00,11,00,11.
  const auto r = block_entropy(sym("00110011"), 2, WindowMode::disjoint);
  CHECK(r.bits == doctest::Approx(2.0));
}

TEST_CASE("randomness_deficiency") {
  CHECK(randomness_deficiency(8.0, 8) == 1.0);
  CHECK(randomness_deficiency(0.0, 100) == 0.0);
  CHECK(randomness_deficiency(shannon_entropy(sym("0001")), 4) == doctest::Approx(0.2028).epsilon(1e-3));
  CHECK_THROWS_AS(randomness_deficiency(1.0, 0), Error);
}
