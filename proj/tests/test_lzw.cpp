#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "mktcx/error.hpp"
#include "mktcx/lzw.hpp"

using namespace mktcx;

namespace {

using Codes = std::vector<std::uint32_t>;

std::string as_string(const std::vector<std::uint8_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("lzw_compress examples") {
  CHECK(lzw_compress("A").codes == Codes{65});
  CHECK(lzw_compress("AAAA").codes == Codes{65, 256, 65});
  CHECK(lzw_compress("AAAA").final_dict_size() == 258);
  CHECK_THROWS_AS(lzw_compress(std::string_view{}), Error);
}

TEST_CASE("lzw_decompress examples") {
  CHECK(as_string(lzw_decompress({{65}, 256})) == "A");
  CHECK(as_string(lzw_decompress({{65, 256, 65}, 256})) == "AAAA");
  CHECK_THROWS_AS(lzw_decompress({{300}, 256}), Error);
  CHECK_THROWS_AS(lzw_decompress({{65, 258}, 256}), Error);
  CHECK(lzw_decompress({{}, 256}).empty());
}

TEST_CASE("KwKwK patterns") {
  for (std::string s : {"AAAAAAA", "ABABABA", "abcabcabcabcabc", "aaabbbaaabbbaaabbb"}) {
    const auto cs = lzw_compress(s);
    CHECK(as_string(lzw_decompress(cs)) == s);
  }
  // "ABABABA" emits the just-created code 258 ("ABA") before it is known to the decoder.
  CHECK(lzw_compress("ABABABA").codes == Codes{65, 66, 256, 258});
}

TEST_CASE("random roundtrip and determinism") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(1, 1024), byte(0, 255);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint8_t> x(static_cast<std::size_t>(len(rng)));
    for (auto& v : x) v = static_cast<std::uint8_t>(byte(rng));
    const auto cs = lzw_compress(x);
    CHECK(lzw_decompress(cs) == x);
    CHECK(lzw_compress(x).codes == cs.codes);
  }
}

TEST_CASE("compressibility") {
  CHECK(compressibility("AB") == 1.125);
  CHECK(compressibility(std::string(10240, 'z')) < 0.05);
  std::random_device rd;
  std::independent_bits_engine<std::mt19937_64, 8, std::uint16_t> bytes(rd());
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint8_t> x(10240);
    for (auto& v : x) v = static_cast<std::uint8_t>(bytes());
    CHECK(compressibility(x) >= 0.9);
  }
  CHECK_THROWS_AS(compressibility(std::string_view{}), Error);
}

TEST_CASE("compressibility of repeats is non-increasing") {
  const std::string unit = "market data 0110";
  double prev = 10.0;
  std::string x;
  for (int n = 1; n <= 64; ++n) {
    x += unit;
    const double c = compressibility(x);
    if (n >= 4) CHECK(c <= prev + 1e-12);
    prev = c;
  }
}
