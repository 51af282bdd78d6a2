#include "mktcx/lzw.hpp"

#include <bit>
#include <unordered_map>

#include "mktcx/error.hpp"

namespace mktcx {
namespace {

// Dictionary entries are (prefix code, next byte) pairs packed into a key.
constexpr std::uint64_t entry_key(std::uint32_t prefix, std::uint8_t byte) {
  return (static_cast<std::uint64_t>(prefix) << 8) | byte;
}

}  // namespace

LzwCodeStream lzw_compress(std::span<const std::uint8_t> data) {
  if (data.empty()) throw DegenerateInput("lzw_compress: empty input");
  LzwCodeStream out;
  out.codes.reserve(data.size() / 2 + 1);

  std::unordered_map<std::uint64_t, std::uint32_t> dict;
  dict.reserve(data.size());
  std::uint32_t next_code = out.initial_dict_size;

  std::uint32_t current = data[0];
  for (std::size_t i = 1; i < data.size(); ++i) {
    const std::uint8_t byte = data[i];
    const auto it = dict.find(entry_key(current, byte));
    if (it != dict.end()) {
      current = it->second;
    } else {
      out.codes.push_back(current);
      dict.emplace(entry_key(current, byte), next_code++);
      current = byte;
    }
  }
  out.codes.push_back(current);
  return out;
}

LzwCodeStream lzw_compress(std::string_view data) {
  return lzw_compress(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::vector<std::uint8_t> lzw_decompress(const LzwCodeStream& stream) {
  std::vector<std::uint8_t> out;
  if (stream.codes.empty()) return out;
  if (stream.initial_dict_size != 256) {
    throw Error("lzw_decompress: only a 256-entry initial dictionary is supported");
  }

  // Entry e > 255 is (prefix[e], last[e]); single bytes are implicit.
  std::vector<std::uint32_t> prefix;
  std::vector<std::uint8_t> last;
  std::vector<std::uint32_t> first;  // first byte of each entry
  prefix.reserve(stream.codes.size());
  last.reserve(stream.codes.size());
  first.reserve(stream.codes.size());

  std::vector<std::uint8_t> scratch;
  const auto dict_size = [&] { return static_cast<std::uint32_t>(256 + prefix.size()); };
  const auto first_byte = [&](std::uint32_t code) -> std::uint8_t {
    return code < 256 ? static_cast<std::uint8_t>(code) : static_cast<std::uint8_t>(first[code - 256]);
  };
  const auto emit = [&](std::uint32_t code) {
    scratch.clear();
    while (code >= 256) {
      scratch.push_back(last[code - 256]);
      code = prefix[code - 256];
    }
    scratch.push_back(static_cast<std::uint8_t>(code));
    out.insert(out.end(), scratch.rbegin(), scratch.rend());
  };

  std::uint32_t previous = stream.codes[0];
  if (previous >= 256) {
    throw Error("lzw_decompress: first code " + std::to_string(previous) +
                " is not a single byte");
  }
  emit(previous);

  for (std::size_t i = 1; i < stream.codes.size(); ++i) {
    const std::uint32_t code = stream.codes[i];
    std::uint8_t head;
    if (code < dict_size()) {
      head = first_byte(code);
    } else if (code == dict_size()) {
      head = first_byte(previous);  // KwKwK: the entry being defined right now
    } else {
      throw Error("lzw_decompress: code " + std::to_string(code) + " at position " +
                  std::to_string(i) + " exceeds dictionary size " +
                  std::to_string(dict_size()));
    }
    prefix.push_back(previous);
    last.push_back(head);
    first.push_back(first_byte(previous));
    emit(code);
    previous = code;
  }
  return out;
}

double compressibility(std::span<const std::uint8_t> data) {
  const auto stream = lzw_compress(data);
  const auto width = std::bit_width(stream.final_dict_size() - 1);
  const double compressed_bits = static_cast<double>(stream.codes.size()) * static_cast<double>(width);
  return compressed_bits / (8.0 * static_cast<double>(data.size()));
}

double compressibility(std::string_view data) {
  return compressibility(
      std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

}  // namespace mktcx
