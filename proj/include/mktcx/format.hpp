#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mktcx {

// Shortest decimal text that parses back to exactly `value`.
std::string format_shortest(double value);

// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

// Strict full-string parse; std::nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);

// 64-bit FNV-1a, used for config fingerprints in output headers.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace mktcx
