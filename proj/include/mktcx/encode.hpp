#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mktcx/ingest.hpp"

namespace mktcx {

/// Up/down encoding of consecutive price changes, one bit per step.
struct BinaryMovementSeries {
  std::string source_id;
  std::vector<std::uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  /// ASCII '0'/'1' string.
  std::string to_ascii() const;
};

enum class TieMode {
  as_decrease,  ///< an unchanged price encodes as 0
  strict,       ///< an unchanged price is an error
};

BinaryMovementSeries binarize(const PriceSeries& series, TieMode ties = TieMode::as_decrease);

/// Prices joined by ',' in shortest round-trip decimal form.
std::string serialize_prices(const PriceSeries& series);
std::vector<double> parse_serialized_prices(std::string_view text);

}  // namespace mktcx
