#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace lexvec {

/// Raised for artifacts with a bad magic, unsupported version, or truncated body.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes through `fn` into `<path>.tmp` and renames over `path` on success.
/// The temp file is removed if `fn` throws.
void write_atomically(const std::filesystem::path& path, bool binary,
                      const std::function<void(std::ostream&)>& fn);

namespace le {

template <class T>
void put(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw FormatError("unexpected end of file");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace le

/// Four-byte tag followed by a u32 version.
void write_header(std::ostream& os, const char (&magic)[5], std::uint32_t version);
/// Throws FormatError naming `what` on mismatch.
void read_header(std::istream& is, const char (&magic)[5], std::uint32_t version, const std::string& what);

}  // namespace lexvec
