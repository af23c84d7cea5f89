#include "circkit/linalg.hpp"

namespace circkit {

Matrix zero_matrix(Eigen::Index rows, Eigen::Index cols, Field field) {
  return Matrix::Constant(rows, cols, Scalar(mpq_class(0), field));
}

Echelon row_reduce(Matrix a) {
  Echelon e;
  const auto rows = a.rows();
  const auto cols = a.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = row;
    while (pivot < rows && a(pivot, col).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const Scalar inv = a(row, col).inverse();
    for (Eigen::Index k = col; k < cols; ++k) a(row, k) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Scalar factor = a(r, col);
      for (Eigen::Index k = col; k < cols; ++k) {
        if (!a(row, k).is_zero()) a(r, k) -= factor * a(row, k);
      }
    }
    e.pivot_columns.push_back(col);
    ++row;
  }
  e.reduced = std::move(a);
  return e;
}

std::size_t rank(const Matrix& a) { return row_reduce(a).rank(); }

Matrix nullspace(const Matrix& a) {
  const auto e = row_reduce(a);
  const auto cols = a.cols();
  const Field f = cols > 0 && a.rows() > 0 ? a(0, 0).field() : Field::rational();
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (auto c : e.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = 1;
  const auto nfree = cols - static_cast<Eigen::Index>(e.rank());
  Matrix basis = zero_matrix(cols, nfree, f);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(mpq_class(1), f);
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) {
      const auto& entry = e.reduced(static_cast<Eigen::Index>(i), free);
      if (!entry.is_zero()) basis(e.pivot_columns[i], k) = -entry;
    }
    ++k;
  }
  return basis;
}

}  // namespace circkit
