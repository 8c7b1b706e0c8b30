#include "sknet/linear_op.hpp"

#include <cmath>
#include <string>

#include "sknet/error.hpp"

namespace sknet {

void CsrOperator::apply(std::span<const double> x, std::span<double> y) const {
  matvec(*m_, x, y);
}

void TransposedCsrOperator::apply(std::span<const double> x,
                                  std::span<double> y) const {
  matvec_transposed(*m_, x, y);
}

RegularizedOperator::RegularizedOperator(const CsrMatrix& m, double gamma)
    : m_(&m), gamma_(gamma) {
  if (!(gamma >= 0) || !std::isfinite(gamma)) {
    throw ParameterError("regularization must be finite and >= 0, got " +
                         std::to_string(gamma));
  }
}

void RegularizedOperator::apply(std::span<const double> x,
                                std::span<double> y) const {
  matvec(*m_, x, y);
  if (gamma_ == 0.0 || m_->n_cols() == 0) return;
  double total = 0.0;
  for (double v : x) total += v;
  const double shift = gamma_ / static_cast<double>(m_->n_cols()) * total;
  for (double& v : y) v += shift;
}

RegularizedOperator regularized_op(const CsrMatrix& m, double gamma) {
  return RegularizedOperator(m, gamma);
}

std::vector<double> matvec(const LinearOperator& op,
                           std::span<const double> x) {
  if (x.size() != op.cols()) {
    throw DimensionError("operator expects " + std::to_string(op.cols()) +
                         " entries, got " + std::to_string(x.size()));
  }
  std::vector<double> y(op.rows());
  op.apply(x, y);
  return y;
}

}  // namespace sknet
