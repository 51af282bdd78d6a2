#include "mktcx/bdm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace mktcx::bdm {

BdmResult block_decomposition(std::span<const std::uint8_t> bits, const CtmTable& table,
                              BdmOptions options) {
  const std::size_t d = options.block;
  if (d == 0) throw Error("bdm: block length must be at least 1");
  if (options.offset < 1 || options.offset > d) {
    throw Error("bdm: offset must lie in [1, block length]");
  }
  if (d > table.max_length()) {
    throw Error("bdm: block length " + std::to_string(d) + " exceeds CTM table coverage " +
                std::to_string(table.max_length()));
  }
  if (bits.size() < d) {
    throw DegenerateInput("bdm: input of length " + std::to_string(bits.size()) +
                          " is shorter than the block length " + std::to_string(d));
  }

  std::map<std::string, std::size_t> multiplicity;
  std::string window(d, '0');
  std::size_t windows = 0;
  for (std::size_t start = 0; start + d <= bits.size(); start += options.offset) {
    for (std::size_t i = 0; i < d; ++i) window[i] = bits[start + i] ? '1' : '0';
    ++multiplicity[window];
    ++windows;
  }

  BdmResult r;
  r.block_length = d;
  r.windows = windows;
  r.distinct_blocks = multiplicity.size();
  std::vector<double> terms;
  terms.reserve(multiplicity.size());
  for (const auto& [block, n] : multiplicity) {
    const auto entry = table.find(block);
    if (!entry) throw Error("bdm: block '" + block + "' missing from CTM table");
    if (entry->fallback) ++r.blocks_missing_from_table;
    terms.push_back(std::log2(static_cast<double>(n)) + entry->complexity);
  }
  // Summing in value order makes the total independent of block spelling,
  // so complemented inputs give bit-identical results.
  std::sort(terms.begin(), terms.end());
  for (double t : terms) r.complexity += t;
  const double worst = static_cast<double>(windows) * table.max_complexity(d);
  r.normalized = std::clamp(r.complexity / worst, 0.0, 1.0);
  r.deficiency = r.complexity / static_cast<double>(bits.size());
  return r;
}

BdmResult block_decomposition(const BinaryMovementSeries& series, const CtmTable& table,
                              BdmOptions options) {
  return block_decomposition(std::span<const std::uint8_t>(series.bits), table, options);
}

}  // namespace mktcx::bdm
