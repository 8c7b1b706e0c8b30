#include "sknet/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sknet/error.hpp"

namespace sknet {

static_assert(std::endian::native == std::endian::little,
              "SKNB I/O assumes a little-endian host");

namespace {

struct RawEdge {
  std::uint64_t u;
  std::uint64_t v;
  double w;
};

// Canonical decimal: digits only, no leading zero unless the label is "0".
std::optional<std::uint64_t> parse_decimal(std::string_view s) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Labels of one node set in first-seen order.
class LabelTable {
 public:
  explicit LabelTable(std::optional<std::uint64_t> base) : base_(base) {}

  std::uint64_t intern(std::string_view label, std::size_t line) {
    if (base_) {
      std::uint64_t value = 0;
      auto [ptr, ec] =
          std::from_chars(label.data(), label.data() + label.size(), value);
      if (ec != std::errc() || ptr != label.data() + label.size() ||
          value < *base_) {
        throw ParseError("expected an integer node id >= " +
                             std::to_string(*base_) + ", got '" +
                             std::string(label) + "'",
                         line);
      }
      const std::uint64_t id = value - *base_;
      max_id_plus_one_ = std::max(max_id_plus_one_, id + 1);
      return id;
    }
    auto [it, inserted] = ids_.try_emplace(std::string(label), order_.size());
    if (inserted) order_.emplace_back(label);
    return it->second;
  }

  // Maps interned ids to final ids; fills names when labels are kept.
  std::size_t resolve(std::size_t min_count, std::vector<std::uint64_t>& remap,
                      std::vector<std::string>& names) const {
    if (base_) return std::max<std::size_t>(max_id_plus_one_, min_count);
    remap.resize(order_.size());
    bool integral = true;
    for (std::size_t i = 0; i < order_.size() && integral; ++i) {
      auto value = parse_decimal(order_[i]);
      if (!value || *value >= order_.size()) {
        integral = false;
      } else {
        remap[i] = *value;
      }
    }
    // Distinct values all below n imply exactly 0..n-1.
    if (integral) return order_.size();
    for (std::size_t i = 0; i < order_.size(); ++i) remap[i] = i;
    names = order_;
    return order_.size();
  }

  bool direct() const { return base_.has_value(); }

 private:
  std::optional<std::uint64_t> base_;
  std::uint64_t max_id_plus_one_ = 0;
  std::unordered_map<std::string, std::uint64_t> ids_;
  std::vector<std::string> order_;
};

void split_fields(std::string_view line, std::string_view delimiters,
                  std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t start = line.find_first_not_of(delimiters, pos);
    if (start == std::string_view::npos) break;
    std::size_t end = line.find_first_of(delimiters, start);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(start, end - start));
    pos = end;
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

AnyGraph parse_edge_list(std::istream& in, const ParseOptions& opts) {
  if (opts.delimiters.empty()) {
    throw ParameterError("at least one delimiter is required");
  }
  LabelTable rows(opts.index_base);
  LabelTable cols(opts.index_base);
  LabelTable& col_table = opts.bipartite ? cols : rows;

  std::vector<RawEdge> edges;
  std::vector<std::string_view> fields;
  std::optional<bool> weighted;
  if (opts.weighted != Weighted::kAuto) weighted = opts.weighted == Weighted::kYes;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ' ||
                             view.back() == '\t')) {
      view.remove_suffix(1);
    }
    const std::size_t first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    view.remove_prefix(first);
    if (opts.comment_prefixes.find(view.front()) != std::string::npos) continue;

    split_fields(view, opts.delimiters, fields);
    if (fields.empty()) continue;
    if (fields.size() < 2 || (fields.size() > 3 && !opts.allow_extra_columns)) {
      throw ParseError("expected 2 or 3 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    if (!weighted) weighted = fields.size() >= 3;

    double w = 1.0;
    if (*weighted && fields.size() >= 3) {
      const std::string_view f = fields[2];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), w);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw ParseError("non-numeric weight '" + std::string(f) + "'", line_no);
      }
      if (!std::isfinite(w) || w < 0) {
        throw ParseError("weight must be finite and non-negative, got '" +
                             std::string(f) + "'",
                         line_no);
      }
    }
    const std::uint64_t u = rows.intern(fields[0], line_no);
    const std::uint64_t v = col_table.intern(fields[1], line_no);
    edges.push_back({u, v, w});
  }
  if (in.bad()) throw Error("I/O error while reading edge list");

  std::vector<std::uint64_t> row_map, col_map;
  std::vector<std::string> row_names, col_names;
  std::vector<Edge> out;
  out.reserve(edges.size());

  if (opts.bipartite) {
    const std::size_t n_rows = rows.resolve(opts.min_rows, row_map, row_names);
    const std::size_t n_cols = cols.resolve(opts.min_cols, col_map, col_names);
    for (const RawEdge& e : edges) {
      out.push_back({rows.direct() ? e.u : row_map[e.u],
                     cols.direct() ? e.v : col_map[e.v], e.w});
    }
    return BipartiteGraph(CsrMatrix::from_edges(out, n_rows, n_cols),
                          std::move(row_names), std::move(col_names));
  }

  const std::size_t n =
      rows.resolve(std::max(opts.min_rows, opts.min_cols), row_map, row_names);
  for (const RawEdge& e : edges) {
    if (rows.direct()) {
      out.push_back({e.u, e.v, e.w});
    } else {
      out.push_back({row_map[e.u], row_map[e.v], e.w});
    }
  }
  return Graph::from_edges(out, n, opts.directed, std::move(row_names));
}

AnyGraph parse_edge_list(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, opts);
}

AnyGraph read_edge_list(const std::filesystem::path& path,
                        const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_edge_list(in, opts);
}

void write_edge_list(const AnyGraph& g, std::ostream& out) {
  if (const auto* b = std::get_if<BipartiteGraph>(&g)) {
    const CsrMatrix& m = b->biadjacency();
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
      m.for_each_in_row(i, [&](std::uint64_t j, double w) {
        out << b->row_label(i) << '\t' << b->col_label(j) << '\t'
            << format_double(w) << '\n';
      });
    }
    return;
  }
  const Graph& graph = std::get<Graph>(g);
  const CsrMatrix& m = graph.adjacency();
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    m.for_each_in_row(i, [&](std::uint64_t j, double w) {
      if (!graph.directed()) {
        if (j < i) return;
        if (j == i) w /= 2;
      }
      out << graph.label(i) << '\t' << graph.label(j) << '\t'
          << format_double(w) << '\n';
    });
  }
}

namespace {

constexpr std::uint8_t kFlagDirected = 1u << 0;
constexpr std::uint8_t kFlagBipartite = 1u << 1;
constexpr std::uint8_t kFlagWide = 1u << 2;
constexpr std::uint8_t kFlagNames = 1u << 3;

template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

void put_bytes(std::ostream& out, const void* data, std::size_t n) {
  if (n > 0) out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

void put_names(std::ostream& out, const std::vector<std::string>& names) {
  put<std::uint64_t>(out, names.size());
  for (const std::string& s : names) {
    if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw ParameterError("node name too long for the binary format");
    }
    put<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    put_bytes(out, s.data(), s.size());
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {
    const auto here = in_.tellg();
    if (here != std::streampos(-1)) {
      in_.seekg(0, std::ios::end);
      const auto end = in_.tellg();
      in_.seekg(here);
      if (end != std::streampos(-1)) remaining_ = static_cast<std::uint64_t>(end - here);
    }
  }

  std::uint64_t offset() const { return offset_; }

  void read(void* dst, std::uint64_t n, const char* what) {
    if (remaining_ && n > *remaining_ - offset_) {
      throw FormatError(std::string("truncated ") + what,
                        offset_ + (*remaining_ - offset_));
    }
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    const auto got = static_cast<std::uint64_t>(in_.gcount());
    if (got != n) throw FormatError(std::string("truncated ") + what, offset_ + got);
    offset_ += n;
  }

  template <class T>
  T get(const char* what) {
    T value;
    read(&value, sizeof(T), what);
    return value;
  }

  // Fails before allocating when the stream is too short for `n` bytes.
  void require(std::uint64_t n, const char* what) const {
    if (remaining_ && n > *remaining_ - offset_) {
      throw FormatError(std::string("truncated ") + what, *remaining_);
    }
  }

  bool at_end() {
    if (remaining_) return offset_ == *remaining_;
    return in_.peek() == std::char_traits<char>::eof();
  }

 private:
  std::istream& in_;
  std::uint64_t offset_ = 0;
  std::optional<std::uint64_t> remaining_;
};

std::vector<std::string> get_names(Reader& r, std::uint64_t expected) {
  const std::uint64_t table_offset = r.offset();
  const auto count = r.get<std::uint64_t>("name table");
  if (count != 0 && count != expected) {
    throw FormatError("name table has " + std::to_string(count) +
                          " entries, expected " + std::to_string(expected),
                      table_offset);
  }
  r.require(count * 4, "name table");
  std::vector<std::string> names(count);
  for (auto& s : names) {
    const auto len = r.get<std::uint32_t>("name length");
    s.resize(len);
    r.read(s.data(), len, "name");
  }
  return names;
}

}  // namespace

void write_binary(const AnyGraph& g, std::ostream& out) {
  const auto* graph = std::get_if<Graph>(&g);
  const auto* bip = std::get_if<BipartiteGraph>(&g);
  const CsrMatrix& m = graph ? graph->adjacency() : bip->biadjacency();
  const bool has_names = graph ? graph->has_names()
                               : (!bip->row_names().empty() ||
                                  !bip->col_names().empty());
  std::uint8_t flags = 0;
  if (graph && graph->directed()) flags |= kFlagDirected;
  if (bip) flags |= kFlagBipartite;
  if (m.indices().wide()) flags |= kFlagWide;
  if (has_names) flags |= kFlagNames;

  put_bytes(out, kBinaryMagic, 4);
  put<std::uint8_t>(out, kBinaryVersion);
  put<std::uint8_t>(out, flags);
  put<std::uint64_t>(out, m.n_rows());
  put<std::uint64_t>(out, m.n_cols());
  put<std::uint64_t>(out, m.nnz());
  put_bytes(out, m.indptr().data(), m.indptr().size_bytes());
  put_bytes(out, m.indices().raw(), m.indices().byte_size());
  put_bytes(out, m.data().data(), m.data().size_bytes());
  if (has_names) {
    if (graph) {
      put_names(out, graph->names());
    } else {
      put_names(out, bip->row_names());
      put_names(out, bip->col_names());
    }
  }
  if (!out) throw Error("write failed");
}

AnyGraph read_binary(std::istream& in) {
  Reader r(in);
  char magic[4];
  r.read(magic, 4, "header");
  if (std::memcmp(magic, kBinaryMagic, 4) != 0) throw FormatError("bad magic", 0);
  const auto version = r.get<std::uint8_t>("header");
  if (version != kBinaryVersion) {
    throw FormatError("unsupported version " + std::to_string(version), 4);
  }
  const auto flags = r.get<std::uint8_t>("header");
  if (flags & ~(kFlagDirected | kFlagBipartite | kFlagWide | kFlagNames)) {
    throw FormatError("unknown flag bits", 5);
  }
  const bool bipartite = flags & kFlagBipartite;
  if (bipartite && (flags & kFlagDirected)) {
    throw FormatError("bipartite graphs cannot be directed", 5);
  }
  const auto n_rows = r.get<std::uint64_t>("header");
  const auto n_cols = r.get<std::uint64_t>("header");
  const auto nnz = r.get<std::uint64_t>("header");
  const std::size_t width = (flags & kFlagWide) ? 8 : 4;
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 58;
  if (n_rows >= kLimit || n_cols >= kLimit || nnz >= kLimit) {
    throw FormatError("implausible dimensions", 6);
  }
  r.require((n_rows + 1) * 8 + nnz * (width + 8), "arrays");

  std::vector<std::uint64_t> indptr(n_rows + 1);
  r.read(indptr.data(), indptr.size() * 8, "indptr");
  IndexArray indices = IndexArray::with_width(width == 8, nnz);
  const std::uint64_t indices_offset = r.offset();
  r.read(indices.raw_mut(), nnz * width, "indices");
  std::vector<double> data(nnz);
  r.read(data.data(), nnz * 8, "data");

  std::vector<std::string> names, col_names;
  if (flags & kFlagNames) {
    names = get_names(r, n_rows);
    if (bipartite) col_names = get_names(r, n_cols);
  }
  if (!r.at_end()) throw FormatError("trailing bytes", r.offset());

  try {
    CsrMatrix m(n_rows, n_cols, std::move(indptr), std::move(indices),
                std::move(data));
    if (bipartite) {
      return BipartiteGraph(std::move(m), std::move(names), std::move(col_names));
    }
    return Graph(std::move(m), flags & kFlagDirected, std::move(names));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(std::string("invalid graph payload: ") + e.what(),
                      indices_offset);
  }
}

void save_binary(const AnyGraph& g, const std::filesystem::path& path) {
  write_file_atomically(path, [&](std::ostream& out) { write_binary(g, out); });
}

AnyGraph load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_binary(in);
}

bool is_binary_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  in.read(magic, 4);
  return in.gcount() == 4 && std::memcmp(magic, kBinaryMagic, 4) == 0;
}

AnyGraph load_graph(const std::filesystem::path& path, const ParseOptions& opts) {
  if (is_binary_file(path)) return load_binary(path);
  return read_edge_list(path, opts);
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer) {
  std::random_device rd;
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot open " + tmp.string() + " for writing");
      writer(out);
      out.flush();
      if (!out) throw Error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

}  // namespace sknet
