#include "sknet/csr.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <utility>

#include "sknet/error.hpp"
#include "sknet/parallel.hpp"

namespace sknet {

IndexArray::IndexArray(std::vector<std::uint32_t> narrow)
    : wide_(false), narrow32_(std::move(narrow)) {}

IndexArray::IndexArray(std::vector<std::uint64_t> wide)
    : wide_(true), wide64_(std::move(wide)) {}

bool IndexArray::needs_wide(std::uint64_t n_cols, std::uint64_t size) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint32_t>::max();
  return n_cols > kMax || size > kMax;
}

IndexArray IndexArray::with_width(bool wide, std::size_t size) {
  if (wide) return IndexArray(std::vector<std::uint64_t>(size));
  return IndexArray(std::vector<std::uint32_t>(size));
}

const void* IndexArray::raw() const {
  return wide_ ? static_cast<const void*>(wide64_.data())
               : static_cast<const void*>(narrow32_.data());
}

void* IndexArray::raw_mut() {
  return wide_ ? static_cast<void*>(wide64_.data())
               : static_cast<void*>(narrow32_.data());
}

std::size_t IndexArray::capacity_bytes() const {
  return narrow32_.capacity() * 4 + wide64_.capacity() * 8;
}

bool operator==(const IndexArray& a, const IndexArray& b) {
  if (a.size() != b.size()) return false;
  if (a.wide_ == b.wide_) {
    return a.wide_ ? a.wide64_ == b.wide64_ : a.narrow32_ == b.narrow32_;
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

CsrMatrix::CsrMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), indptr_(n_rows + 1, 0) {
  indices_ = IndexArray::with_width(IndexArray::needs_wide(n_cols, 0), 0);
}

CsrMatrix::CsrMatrix(std::size_t n_rows, std::size_t n_cols,
                     std::vector<std::uint64_t> indptr, IndexArray indices,
                     std::vector<double> data)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      indptr_(std::move(indptr)),
      indices_(std::move(indices)),
      data_(std::move(data)) {
  if (indptr_.size() != n_rows_ + 1) {
    throw ConstructionError("indptr length " + std::to_string(indptr_.size()) +
                            " != n_rows + 1");
  }
  if (indptr_[0] != 0) throw ConstructionError("indptr[0] must be 0");
  if (indptr_[n_rows_] != data_.size() || indices_.size() != data_.size()) {
    throw ConstructionError("indptr[n_rows], indices and data sizes disagree");
  }
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (indptr_[i + 1] < indptr_[i]) {
      throw ConstructionError("indptr decreases at row " + std::to_string(i));
    }
    for (std::size_t k = indptr_[i]; k < indptr_[i + 1]; ++k) {
      if (indices_[k] >= n_cols_) {
        throw ConstructionError("column index out of range in row " +
                                std::to_string(i));
      }
      if (k > indptr_[i] && indices_[k] <= indices_[k - 1]) {
        throw ConstructionError("row " + std::to_string(i) +
                                " is not strictly increasing");
      }
    }
  }
  for (double w : data_) {
    if (!std::isfinite(w) || w < 0) {
      throw ConstructionError("weights must be finite and non-negative");
    }
  }
}

CsrMatrix CsrMatrix::from_edges(std::span<const Edge> edges, std::size_t n_rows,
                                std::size_t n_cols) {
  std::vector<std::uint64_t> counts(n_rows + 1, 0);
  for (const Edge& e : edges) {
    if (e.row >= n_rows || e.col >= n_cols) {
      throw ConstructionError("edge (" + std::to_string(e.row) + ", " +
                              std::to_string(e.col) + ") out of range for " +
                              std::to_string(n_rows) + "x" +
                              std::to_string(n_cols));
    }
    if (!std::isfinite(e.weight) || e.weight < 0) {
      throw ConstructionError("edge (" + std::to_string(e.row) + ", " +
                              std::to_string(e.col) +
                              ") has a negative or non-finite weight");
    }
    ++counts[e.row + 1];
  }
  for (std::size_t i = 0; i < n_rows; ++i) counts[i + 1] += counts[i];

  std::vector<std::pair<std::uint64_t, double>> entries(edges.size());
  {
    std::vector<std::uint64_t> next(counts.begin(), counts.end() - 1);
    for (const Edge& e : edges) entries[next[e.row]++] = {e.col, e.weight};
  }

  std::vector<std::uint64_t> indptr(n_rows + 1, 0);
  std::size_t out = 0;
  for (std::size_t i = 0; i < n_rows; ++i) {
    auto first = entries.begin() + static_cast<std::ptrdiff_t>(counts[i]);
    auto last = entries.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
    std::stable_sort(first, last, [](const auto& a, const auto& b) {
      return a.first < b.first;
    });
    for (auto it = first; it != last; ++it) {
      if (out > indptr[i] && entries[out - 1].first == it->first) {
        entries[out - 1].second += it->second;
      } else {
        entries[out++] = *it;
      }
    }
    indptr[i + 1] = out;
  }

  IndexArray indices = IndexArray::with_width(IndexArray::needs_wide(n_cols, out), out);
  std::vector<double> data(out);
  for (std::size_t k = 0; k < out; ++k) {
    indices.set(k, entries[k].first);
    data[k] = entries[k].second;
  }
  return CsrMatrix(n_rows, n_cols, std::move(indptr), std::move(indices),
                   std::move(data));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, i, 1.0});
  return from_edges(edges, n, n);
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  std::size_t lo = indptr_[i];
  std::size_t hi = indptr_[i + 1];
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t c = indices_[mid];
    if (c == j) return data_[mid];
    if (c < j) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return 0.0;
}

std::size_t CsrMatrix::memory_bytes() const {
  return indptr_.capacity() * sizeof(std::uint64_t) +
         indices_.capacity_bytes() + data_.capacity() * sizeof(double);
}

std::size_t CsrMatrix::nominal_bytes() const {
  return (n_rows_ + 1) * 8 + nnz() * (indices_.width_bytes() + 8);
}

std::vector<Edge> CsrMatrix::to_edges() const {
  std::vector<Edge> edges;
  edges.reserve(nnz());
  for (std::size_t i = 0; i < n_rows_; ++i) {
    for_each_in_row(i, [&](std::uint64_t j, double w) {
      edges.push_back({i, j, w});
    });
  }
  return edges;
}

bool operator==(const CsrMatrix& a, const CsrMatrix& b) {
  return a.n_rows_ == b.n_rows_ && a.n_cols_ == b.n_cols_ &&
         a.indptr_ == b.indptr_ && a.indices_ == b.indices_ &&
         a.data_ == b.data_;
}

CsrMatrix transpose(const CsrMatrix& m) {
  const std::size_t nnz = m.nnz();
  std::vector<std::uint64_t> indptr(m.n_cols() + 1, 0);
  m.indices().visit([&](auto idx) {
    for (std::size_t k = 0; k < nnz; ++k) ++indptr[idx[k] + 1];
  });
  for (std::size_t j = 0; j < m.n_cols(); ++j) indptr[j + 1] += indptr[j];

  IndexArray indices =
      IndexArray::with_width(IndexArray::needs_wide(m.n_rows(), nnz), nnz);
  std::vector<double> data(nnz);
  std::vector<std::uint64_t> next(indptr.begin(), indptr.end() - 1);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    m.for_each_in_row(i, [&](std::uint64_t j, double w) {
      const std::uint64_t pos = next[j]++;
      indices.set(pos, i);
      data[pos] = w;
    });
  }
  return CsrMatrix(m.n_cols(), m.n_rows(), std::move(indptr),
                   std::move(indices), std::move(data));
}

CsrMatrix symmetrize(const CsrMatrix& m) {
  if (!m.square()) {
    throw DimensionError("symmetrize requires a square matrix, got " +
                         std::to_string(m.n_rows()) + "x" +
                         std::to_string(m.n_cols()));
  }
  const CsrMatrix t = transpose(m);
  const std::size_t n = m.n_rows();
  std::vector<std::uint64_t> indptr(n + 1, 0);
  std::vector<std::uint64_t> cols;
  std::vector<double> data;
  cols.reserve(2 * m.nnz());
  data.reserve(2 * m.nnz());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = m.row_begin(i), ae = m.row_end(i);
    std::size_t b = t.row_begin(i), be = t.row_end(i);
    while (a < ae || b < be) {
      if (b == be || (a < ae && m.col(a) < t.col(b))) {
        cols.push_back(m.col(a));
        data.push_back(m.weight(a++));
      } else if (a == ae || t.col(b) < m.col(a)) {
        cols.push_back(t.col(b));
        data.push_back(t.weight(b++));
      } else {
        cols.push_back(m.col(a));
        data.push_back(m.weight(a++) + t.weight(b++));
      }
    }
    indptr[i + 1] = cols.size();
  }
  IndexArray indices =
      IndexArray::with_width(IndexArray::needs_wide(n, cols.size()), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) indices.set(k, cols[k]);
  data.shrink_to_fit();
  return CsrMatrix(n, n, std::move(indptr), std::move(indices),
                   std::move(data));
}

std::vector<double> degrees(const CsrMatrix& m, Axis axis) {
  if (axis == Axis::kRows) {
    std::vector<double> d(m.n_rows(), 0.0);
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
      double s = 0.0;
      for (std::size_t k = m.row_begin(i); k < m.row_end(i); ++k) {
        s += m.weight(k);
      }
      d[i] = s;
    }
    return d;
  }
  // Accumulate in row order so the result equals degrees(transpose(m), rows).
  std::vector<double> d(m.n_cols(), 0.0);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    m.for_each_in_row(i, [&](std::uint64_t j, double w) { d[j] += w; });
  }
  return d;
}

CsrMatrix normalize_rows(const CsrMatrix& m) {
  const std::vector<double> d = degrees(m, Axis::kRows);
  std::vector<double> data(m.data().begin(), m.data().end());
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    if (d[i] <= 0) continue;
    for (std::size_t k = m.row_begin(i); k < m.row_end(i); ++k) {
      data[k] /= d[i];
    }
  }
  return CsrMatrix(m.n_rows(), m.n_cols(),
                   std::vector<std::uint64_t>(m.indptr().begin(),
                                              m.indptr().end()),
                   m.indices(), std::move(data));
}

CsrMatrix scale(const CsrMatrix& m, std::span<const double> row_scale,
                std::span<const double> col_scale) {
  if (row_scale.size() != m.n_rows() || col_scale.size() != m.n_cols()) {
    throw DimensionError("scale vectors do not match matrix shape");
  }
  std::vector<double> data(m.nnz());
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    for (std::size_t k = m.row_begin(i); k < m.row_end(i); ++k) {
      data[k] = row_scale[i] * m.weight(k) * col_scale[m.col(k)];
    }
  }
  return CsrMatrix(m.n_rows(), m.n_cols(),
                   std::vector<std::uint64_t>(m.indptr().begin(),
                                              m.indptr().end()),
                   m.indices(), std::move(data));
}

std::size_t count_diagonal(const CsrMatrix& m) {
  std::size_t count = 0;
  const std::size_t n = std::min(m.n_rows(), m.n_cols());
  for (std::size_t i = 0; i < n; ++i) {
    m.for_each_in_row(i, [&](std::uint64_t j, double) { count += (j == i); });
  }
  return count;
}

namespace {

template <class Index>
void matvec_rows(std::span<const std::uint64_t> indptr,
                 std::span<const Index> indices, std::span<const double> data,
                 std::span<const double> x, std::span<double> y,
                 std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    double s = 0.0;
    for (std::uint64_t k = indptr[i]; k < indptr[i + 1]; ++k) {
      s += data[k] * x[indices[k]];
    }
    y[i] = s;
  }
}

void check_matvec_dims(const CsrMatrix& m, std::size_t x, std::size_t y) {
  if (x != m.n_cols() || y != m.n_rows()) {
    throw DimensionError("matvec: matrix is " + std::to_string(m.n_rows()) +
                         "x" + std::to_string(m.n_cols()) + ", x has " +
                         std::to_string(x) + " entries, y has " +
                         std::to_string(y));
  }
}

}  // namespace

std::size_t default_chunks(const CsrMatrix& m) {
  constexpr std::size_t kMinEntriesPerChunk = 1 << 16;
  return std::max<std::size_t>(
      1, std::min(num_threads(), m.nnz() / kMinEntriesPerChunk));
}

void matvec(const CsrMatrix& m, std::span<const double> x, std::span<double> y,
            std::size_t chunks) {
  check_matvec_dims(m, x.size(), y.size());
  m.indices().visit([&](auto idx) {
    parallel_for_chunks(m.n_rows(), chunks, [&](std::size_t b, std::size_t e) {
      matvec_rows(m.indptr(), idx, m.data(), x, y, b, e);
    });
  });
}

void matvec(const CsrMatrix& m, std::span<const double> x, std::span<double> y) {
  matvec(m, x, y, default_chunks(m));
}

std::vector<double> matvec(const CsrMatrix& m, std::span<const double> x) {
  std::vector<double> y(m.n_rows());
  matvec(m, x, y);
  return y;
}

void matvec_transposed(const CsrMatrix& m, std::span<const double> x,
                       std::span<double> y) {
  if (x.size() != m.n_rows() || y.size() != m.n_cols()) {
    throw DimensionError("transposed matvec: dimension mismatch");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    const double xi = x[i];
    m.for_each_in_row(i, [&](std::uint64_t j, double w) { y[j] += w * xi; });
  }
}

}  // namespace sknet
