#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mktcx {

/// LZW output codes. Code i is always below initial_dict_size + i.
struct LzwCodeStream {
  std::vector<std::uint32_t> codes;
  std::uint32_t initial_dict_size = 256;

  /// Dictionary size after the last code was emitted.
  std::size_t final_dict_size() const noexcept {
    return codes.empty() ? initial_dict_size : initial_dict_size + codes.size() - 1;
  }
};

/// Greedy longest-match LZW over bytes, 256 single-byte seeds, unbounded
/// dictionary.
LzwCodeStream lzw_compress(std::span<const std::uint8_t> data);
LzwCodeStream lzw_compress(std::string_view data);

/// Throws Error on a code that cannot exist yet at its position.
std::vector<std::uint8_t> lzw_decompress(const LzwCodeStream& stream);

/// codes * ceil(log2(final dictionary size)) / (8 * input bytes). May exceed
/// 1 for short or incompressible input.
double compressibility(std::span<const std::uint8_t> data);
double compressibility(std::string_view data);

}  // namespace mktcx
