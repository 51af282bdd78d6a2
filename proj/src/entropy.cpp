#include "mktcx/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mktcx/error.hpp"

namespace mktcx {
namespace {

// Counts are summed in sorted order so the result does not depend on how
// they were tallied.
double entropy_of_counts(std::vector<std::size_t> counts, std::size_t total) {
  std::sort(counts.begin(), counts.end());
  double h = 0.0;
  const double n = static_cast<double>(total);
  for (const auto c : counts) {
    const double k = static_cast<double>(c);
    if (k > 0) h -= (k / n) * std::log2(k / n);
  }
  return h;
}

double window_entropy(std::span<const std::uint8_t> symbols, std::size_t len,
                      WindowMode mode) {
  const std::size_t step = mode == WindowMode::overlapping ? 1 : len;
  const std::string_view text(reinterpret_cast<const char*>(symbols.data()), symbols.size());
  std::unordered_map<std::string_view, std::size_t> counts;
  std::size_t total = 0;
  for (std::size_t i = 0; i + len <= text.size(); i += step) {
    ++counts[text.substr(i, len)];
    ++total;
  }
  std::vector<std::size_t> values;
  values.reserve(counts.size());
  for (const auto& [_, c] : counts) values.push_back(c);
  return entropy_of_counts(std::move(values), total);
}

}  // namespace

double shannon_entropy(std::span<const std::uint8_t> symbols) {
  if (symbols.empty()) throw DegenerateInput("shannon_entropy: empty input");
  std::array<std::size_t, 256> counts{};
  for (auto s : symbols) ++counts[s];
  return entropy_of_counts({counts.begin(), counts.end()}, symbols.size());
}

EntropyResult block_entropy(std::span<const std::uint8_t> symbols, std::size_t max_block,
                            WindowMode mode) {
  if (max_block == 0) throw Error("block_entropy: max_block must be at least 1");
  if (symbols.size() < max_block) {
    throw DegenerateInput("block_entropy: input of length " + std::to_string(symbols.size()) +
                          " is shorter than max_block " + std::to_string(max_block));
  }
  EntropyResult r;
  r.block_max = max_block;
  for (std::size_t len = 1; len <= max_block; ++len) {
    r.bits += window_entropy(symbols, len, mode);
  }
  const double ceiling = static_cast<double>(max_block * (max_block + 1) / 2);
  r.normalized = std::clamp(r.bits / ceiling, 0.0, 1.0);
  return r;
}

double randomness_deficiency(double value, std::size_t length) {
  if (length == 0) throw DegenerateInput("randomness_deficiency: zero length");
  return value / static_cast<double>(length);
}

}  // namespace mktcx
