#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sknet {

// Column-index storage for CsrMatrix. Indices are held as 32-bit words when
// both the column count and nnz fit, otherwise as 64-bit words.
class IndexArray {
 public:
  IndexArray() = default;
  explicit IndexArray(std::vector<std::uint32_t> narrow);
  explicit IndexArray(std::vector<std::uint64_t> wide);

  // Chooses the width for a matrix with n_cols columns and `size` entries.
  static bool needs_wide(std::uint64_t n_cols, std::uint64_t size);
  static IndexArray with_width(bool wide, std::size_t size);

  std::size_t size() const { return wide_ ? wide64_.size() : narrow32_.size(); }
  bool wide() const { return wide_; }
  std::size_t width_bytes() const { return wide_ ? 8 : 4; }

  std::uint64_t operator[](std::size_t k) const {
    return wide_ ? wide64_[k] : narrow32_[k];
  }
  void set(std::size_t k, std::uint64_t value) {
    if (wide_) {
      wide64_[k] = value;
    } else {
      narrow32_[k] = static_cast<std::uint32_t>(value);
    }
  }

  std::span<const std::uint32_t> narrow() const { return narrow32_; }
  std::span<const std::uint64_t> wide_span() const { return wide64_; }
  std::span<std::uint32_t> narrow_mut() { return narrow32_; }
  std::span<std::uint64_t> wide_mut() { return wide64_; }

  // Raw little-endian bytes of the active array.
  const void* raw() const;
  void* raw_mut();
  std::size_t byte_size() const { return size() * width_bytes(); }
  std::size_t capacity_bytes() const;

  // Calls f with a span of the active integer type.
  template <class F>
  decltype(auto) visit(F&& f) const {
    if (wide_) return f(std::span<const std::uint64_t>(wide64_));
    return f(std::span<const std::uint32_t>(narrow32_));
  }

  friend bool operator==(const IndexArray& a, const IndexArray& b);

 private:
  bool wide_ = false;
  std::vector<std::uint32_t> narrow32_;
  std::vector<std::uint64_t> wide64_;
};

struct Edge {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  double weight = 1.0;
};

enum class Axis { kRows, kCols };

// Compressed sparse row matrix with non-negative finite weights. Rows are
// sorted and free of duplicates. Immutable once built.
class CsrMatrix {
 public:
  CsrMatrix() : indptr_{0} {}
  // Empty n_rows x n_cols matrix.
  CsrMatrix(std::size_t n_rows, std::size_t n_cols);
  // Validates all invariants; throws ConstructionError on violation.
  CsrMatrix(std::size_t n_rows, std::size_t n_cols,
            std::vector<std::uint64_t> indptr, IndexArray indices,
            std::vector<double> data);

  // Duplicate (row, col) pairs are summed.
  static CsrMatrix from_edges(std::span<const Edge> edges, std::size_t n_rows,
                              std::size_t n_cols);
  static CsrMatrix identity(std::size_t n);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  std::size_t nnz() const { return data_.size(); }
  bool square() const { return n_rows_ == n_cols_; }

  std::span<const std::uint64_t> indptr() const { return indptr_; }
  const IndexArray& indices() const { return indices_; }
  std::span<const double> data() const { return data_; }

  std::size_t row_begin(std::size_t i) const { return indptr_[i]; }
  std::size_t row_end(std::size_t i) const { return indptr_[i + 1]; }
  std::size_t row_size(std::size_t i) const {
    return indptr_[i + 1] - indptr_[i];
  }
  std::uint64_t col(std::size_t k) const { return indices_[k]; }
  double weight(std::size_t k) const { return data_[k]; }

  // Calls f(col, weight) for every stored entry of row i, in column order.
  template <class F>
  void for_each_in_row(std::size_t i, F&& f) const {
    const std::size_t b = indptr_[i];
    const std::size_t e = indptr_[i + 1];
    indices_.visit([&](auto idx) {
      for (std::size_t k = b; k < e; ++k) f(std::uint64_t{idx[k]}, data_[k]);
    });
  }

  // Stored weight at (i, j), 0 when absent. Binary search within the row.
  double at(std::size_t i, std::size_t j) const;

  // Heap bytes held by the three arrays (capacity, not size).
  std::size_t memory_bytes() const;
  // (n_rows + 1) * 8 + nnz * (index width + 8).
  std::size_t nominal_bytes() const;

  std::vector<Edge> to_edges() const;

  friend bool operator==(const CsrMatrix& a, const CsrMatrix& b);

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::uint64_t> indptr_;
  IndexArray indices_;
  std::vector<double> data_;
};

CsrMatrix transpose(const CsrMatrix& m);
// m + transpose(m); requires a square matrix.
CsrMatrix symmetrize(const CsrMatrix& m);
std::vector<double> degrees(const CsrMatrix& m, Axis axis = Axis::kRows);
// Rows with positive sum are scaled to sum 1; zero rows stay zero.
CsrMatrix normalize_rows(const CsrMatrix& m);
// diag(row_scale) * m * diag(col_scale). Scales must be finite and >= 0.
CsrMatrix scale(const CsrMatrix& m, std::span<const double> row_scale,
                std::span<const double> col_scale);
// Number of stored diagonal entries.
std::size_t count_diagonal(const CsrMatrix& m);

// y = m x. Rows are split into `chunks` ranges processed concurrently; the
// per-row summation order is fixed, so the output does not depend on chunks.
void matvec(const CsrMatrix& m, std::span<const double> x, std::span<double> y,
            std::size_t chunks);
// Same, with a chunk count derived from num_threads() and the matrix size.
void matvec(const CsrMatrix& m, std::span<const double> x, std::span<double> y);
std::vector<double> matvec(const CsrMatrix& m, std::span<const double> x);
// y = transpose(m) x by scattering; sequential.
void matvec_transposed(const CsrMatrix& m, std::span<const double> x,
                       std::span<double> y);

std::size_t default_chunks(const CsrMatrix& m);

}  // namespace sknet
