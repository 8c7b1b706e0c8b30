#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sknet/csr.hpp"

namespace sknet {

// Linear map from dense vectors of length cols() to length rows(). The CSR
// backed implementations are views: the matrix must outlive the operator.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  // y = op(x). Implementations overwrite y.
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
};

class CsrOperator final : public LinearOperator {
 public:
  explicit CsrOperator(const CsrMatrix& m) : m_(&m) {}
  std::size_t rows() const override { return m_->n_rows(); }
  std::size_t cols() const override { return m_->n_cols(); }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const CsrMatrix* m_;
};

class TransposedCsrOperator final : public LinearOperator {
 public:
  explicit TransposedCsrOperator(const CsrMatrix& m) : m_(&m) {}
  std::size_t rows() const override { return m_->n_cols(); }
  std::size_t cols() const override { return m_->n_rows(); }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const CsrMatrix* m_;
};

// y = m x + (gamma / n_cols) * sum(x) * 1. The rank-one term is applied
// implicitly.
class RegularizedOperator final : public LinearOperator {
 public:
  RegularizedOperator(const CsrMatrix& m, double gamma);
  std::size_t rows() const override { return m_->n_rows(); }
  std::size_t cols() const override { return m_->n_cols(); }
  double gamma() const { return gamma_; }
  void apply(std::span<const double> x, std::span<double> y) const override;

 private:
  const CsrMatrix* m_;
  double gamma_;
};

// Throws ParameterError when gamma is negative or not finite.
RegularizedOperator regularized_op(const CsrMatrix& m, double gamma);

// Checked application; throws DimensionError on length mismatch.
std::vector<double> matvec(const LinearOperator& op, std::span<const double> x);

}  // namespace sknet
