#include "mktcx/encode.hpp"

#include "mktcx/error.hpp"
#include "mktcx/format.hpp"

namespace mktcx {

std::string BinaryMovementSeries::to_ascii() const {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i] = '1';
  }
  return out;
}

BinaryMovementSeries binarize(const PriceSeries& series, TieMode ties) {
  if (series.size() < 2) throw DegenerateInput("binarize: need at least 2 prices");
  BinaryMovementSeries out;
  out.source_id = series.id();
  out.bits.reserve(series.size() - 1);
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double prev = series[i - 1].price;
    const double cur = series[i].price;
    if (ties == TieMode::strict && cur == prev) {
      throw DegenerateInput("binarize: unchanged price at index " + std::to_string(i) +
                            " of " + series.id());
    }
    out.bits.push_back(cur > prev ? 1 : 0);
  }
  return out;
}

std::string serialize_prices(const PriceSeries& series) {
  std::string out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0) out += ',';
    out += format_shortest(series[i].price);
  }
  return out;
}

std::vector<double> parse_serialized_prices(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto field = text.substr(start, comma - start);
    const auto v = parse_double(field);
    if (!v) throw ParseError(0, "bad price '" + std::string(field) + "'");
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace mktcx
