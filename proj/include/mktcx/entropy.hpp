#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace mktcx {

struct EntropyResult {
  double bits = 0.0;        ///< sum of per-length window entropies
  double normalized = 0.0;  ///< bits / (1 + 2 + ... + block_max)
  std::size_t block_max = 0;
};

enum class WindowMode { overlapping, disjoint };

/// Empirical Shannon entropy in bits; 0 log 0 = 0.
double shannon_entropy(std::span<const std::uint8_t> symbols);

/// Sum over i = 1..max_block of the entropy of the length-i windows.
/// The normalisation assumes a binary alphabet (length-i windows carry at
/// most i bits).
EntropyResult block_entropy(std::span<const std::uint8_t> symbols, std::size_t max_block = 4,
                            WindowMode mode = WindowMode::overlapping);

/// value / length.
double randomness_deficiency(double value, std::size_t length);

}  // namespace mktcx
