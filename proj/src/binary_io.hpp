#pragma once

// Little-endian helpers shared by the GF2M and TVWK file formats.

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tvwalk::detail {

template <typename T>
void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    bytes[b] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * b)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("unexpected end of file");
  std::uint64_t value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    value |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  }
  return static_cast<T>(value);
}

inline void expect_magic(std::istream& in, const char (&magic)[5], std::uint8_t version) {
  char got[4]{};
  in.read(got, 4);
  if (!in || std::string(got, 4) != std::string(magic, 4)) {
    throw std::runtime_error(std::string("bad magic, expected ") + magic);
  }
  const auto v = read_le<std::uint8_t>(in);
  if (v != version) throw std::runtime_error("unsupported format version " + std::to_string(v));
}

}  // namespace tvwalk::detail
