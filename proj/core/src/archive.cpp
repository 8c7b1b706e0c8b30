#include "archive.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <sstream>

#include <boost/iostreams/copy.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filter/gzip.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#include "sknet/error.hpp"

namespace sknet::detail {

namespace io = boost::iostreams;

namespace {

constexpr std::size_t kBlock = 512;

std::string field(std::string_view header, std::size_t offset, std::size_t len) {
  std::string_view f = header.substr(offset, len);
  return std::string(f.substr(0, f.find('\0')));
}

std::uint64_t octal(std::string_view header, std::size_t offset,
                    std::size_t len, std::uint64_t block_offset) {
  std::uint64_t value = 0;
  bool digits = false;
  for (char c : header.substr(offset, len)) {
    if (c == '\0' || c == ' ') {
      if (digits) break;
      continue;
    }
    if (c < '0' || c > '7') {
      throw FormatError("bad octal field in tar header", block_offset + offset);
    }
    value = value * 8 + static_cast<std::uint64_t>(c - '0');
    digits = true;
  }
  return value;
}

bool all_zero(std::string_view block) {
  return std::all_of(block.begin(), block.end(), [](char c) { return c == '\0'; });
}

}  // namespace

std::vector<TarMember> read_tar(std::string_view bytes) {
  if (bytes.size() < kBlock) throw FormatError("not a tar archive", 0);
  std::vector<TarMember> members;
  std::string long_name;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kBlock) throw FormatError("truncated tar header", pos);
    std::string_view header = bytes.substr(pos, kBlock);
    if (all_zero(header)) break;

    unsigned checksum = 0;
    for (std::size_t i = 0; i < kBlock; ++i) {
      checksum += (i >= 148 && i < 156) ? ' ' : static_cast<unsigned char>(header[i]);
    }
    if (checksum != octal(header, 148, 8, pos)) {
      throw FormatError("tar header checksum mismatch", pos);
    }

    const std::uint64_t size = octal(header, 124, 12, pos);
    const char type = header[156];
    const std::size_t data_pos = pos + kBlock;
    if (size > bytes.size() - data_pos) {
      throw FormatError("truncated tar member", bytes.size());
    }
    std::string_view data = bytes.substr(data_pos, size);

    std::string name = field(header, 0, 100);
    if (std::memcmp(header.data() + 257, "ustar", 5) == 0) {
      std::string prefix = field(header, 345, 155);
      if (!prefix.empty()) name = prefix + "/" + name;
    }

    if (type == 'L') {
      long_name = std::string(data.substr(0, data.find('\0')));
    } else {
      if (!long_name.empty()) {
        name = long_name;
        long_name.clear();
      }
      if (type == '0' || type == '\0') {
        members.push_back({std::move(name), std::string(data)});
      }
    }
    pos = data_pos + (size + kBlock - 1) / kBlock * kBlock;
  }
  return members;
}

std::string decompress(std::string_view bytes) {
  const bool bz2 = bytes.size() >= 3 && bytes.substr(0, 3) == "BZh";
  const bool gz = bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
                  static_cast<unsigned char>(bytes[1]) == 0x8b;
  if (!bz2 && !gz) return std::string(bytes);
  try {
    std::istringstream src{std::string(bytes)};
    std::ostringstream dst;
    io::filtering_istream in;
    if (bz2) {
      in.push(io::bzip2_decompressor());
    } else {
      in.push(io::gzip_decompressor());
    }
    in.push(src);
    io::copy(in, dst);
    return std::move(dst).str();
  } catch (const std::exception& e) {
    throw FormatError(std::string("decompression failed: ") + e.what(), 0);
  }
}

std::string write_tar(const std::vector<TarMember>& members) {
  std::string out;
  for (const TarMember& m : members) {
    std::string header(kBlock, '\0');
    std::memcpy(header.data(), m.name.data(), std::min<std::size_t>(m.name.size(), 99));
    std::snprintf(header.data() + 100, 8, "%07o", 0644);
    std::snprintf(header.data() + 108, 8, "%07o", 0);
    std::snprintf(header.data() + 116, 8, "%07o", 0);
    std::snprintf(header.data() + 124, 12, "%011llo",
                  static_cast<unsigned long long>(m.data.size()));
    std::snprintf(header.data() + 136, 12, "%011o", 0);
    header[156] = '0';
    std::memcpy(header.data() + 257, "ustar\0" "00", 8);
    std::memset(header.data() + 148, ' ', 8);
    unsigned checksum = 0;
    for (char c : header) checksum += static_cast<unsigned char>(c);
    std::snprintf(header.data() + 148, 8, "%06o", checksum);
    header[155] = ' ';
    out += header;
    out += m.data;
    out.append((kBlock - m.data.size() % kBlock) % kBlock, '\0');
  }
  out.append(2 * kBlock, '\0');
  return out;
}

std::string compress_bzip2(std::string_view bytes) {
  std::ostringstream dst;
  {
    io::filtering_ostream out;
    out.push(io::bzip2_compressor());
    out.push(dst);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  return std::move(dst).str();
}

}  // namespace sknet::detail
