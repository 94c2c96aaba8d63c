#pragma once

// Little-endian binary helpers and file plumbing shared by the serializers.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "stomps/errors.hpp"

namespace stomps::detail {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

template <class T>
void put(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw IoError("unexpected end of binary data");
  return value;
}

inline std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!os) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  return os;
}

inline std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
  return is;
}

}  // namespace stomps::detail
