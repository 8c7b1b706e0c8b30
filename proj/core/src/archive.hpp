#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sknet::detail {

struct TarMember {
  std::string name;
  std::string data;
};

// Regular-file members of a ustar/GNU tar stream. Throws FormatError.
std::vector<TarMember> read_tar(std::string_view bytes);

// Removes a bzip2 or gzip layer when the magic bytes say so.
std::string decompress(std::string_view bytes);

// ustar encoding of regular files; used by tests to build fixtures.
std::string write_tar(const std::vector<TarMember>& members);
std::string compress_bzip2(std::string_view bytes);

}  // namespace sknet::detail
