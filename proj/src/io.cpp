#include "lexvec/io.hpp"

#include <fstream>

namespace lexvec {

void write_atomically(const std::filesystem::path& path, bool binary,
                      const std::function<void(std::ostream&)>& fn) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    {
      std::ofstream out(tmp, binary ? std::ios::out | std::ios::binary | std::ios::trunc
                                    : std::ios::out | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
      fn(out);
      out.flush();
      if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

void write_header(std::ostream& os, const char (&magic)[5], std::uint32_t version) {
  os.write(magic, 4);
  le::put<std::uint32_t>(os, version);
}

void read_header(std::istream& is, const char (&magic)[5], std::uint32_t version, const std::string& what) {
  char tag[4];
  if (!is.read(tag, 4) || std::memcmp(tag, magic, 4) != 0) {
    throw FormatError(what + ": bad magic (expected " + std::string(magic, 4) + ")");
  }
  const auto found = le::get<std::uint32_t>(is);
  if (found != version) {
    throw FormatError(what + ": unsupported version " + std::to_string(found) + " (expected " +
                      std::to_string(version) + ")");
  }
}

}  // namespace lexvec
