#pragma once

#include <cstdint>
#include <span>

#include "mktcx/ctm_table.hpp"
#include "mktcx/encode.hpp"

namespace mktcx::bdm {

struct BdmOptions {
  std::size_t block = 4;   ///< window length d
  std::size_t offset = 4;  ///< distance between window starts; == block means disjoint
};

struct BdmResult {
  double complexity = 0.0;   ///< sum over distinct windows of log2(n_u) + K(r_u)
  double normalized = 0.0;   ///< complexity / (windows * max table K at length d)
  double deficiency = 0.0;   ///< complexity / input length
  std::size_t block_length = 0;
  std::size_t windows = 0;
  std::size_t distinct_blocks = 0;
  std::size_t blocks_missing_from_table = 0;  ///< distinct blocks whose K is a fallback
};

/// Block Decomposition Method. Windows of length `block` start every
/// `offset` symbols; a trailing remainder shorter than `block` is dropped.
BdmResult block_decomposition(std::span<const std::uint8_t> bits, const CtmTable& table,
                              BdmOptions options = {});
BdmResult block_decomposition(const BinaryMovementSeries& series, const CtmTable& table,
                              BdmOptions options = {});

}  // namespace mktcx::bdm
