#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "circkit/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<circkit::Scalar> : GenericNumTraits<circkit::Scalar> {
  using Real = circkit::Scalar;
  using NonInteger = circkit::Scalar;
  using Nested = circkit::Scalar;
  using Literal = circkit::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 50
  };
  // Exact arithmetic: no rounding tolerance.
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
  static int max_digits10() { return 0; }
};

}  // namespace Eigen

namespace circkit {

using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// rows x cols zero matrix over `field`.
Matrix zero_matrix(Eigen::Index rows, Eigen::Index cols, Field field = Field::rational());

struct Echelon {
  Matrix reduced;  // reduced row echelon form
  std::vector<Eigen::Index> pivot_columns;
  std::size_t rank() const { return pivot_columns.size(); }
};

/// Gauss-Jordan elimination. Columns are scanned left to right and the pivot
/// is the first row (from the current one down) with a nonzero entry, so the
/// result is fully determined by the input.
Echelon row_reduce(Matrix a);

std::size_t rank(const Matrix& a);

/// Basis of {x : a x = 0}, one column per free variable, in column order;
/// each basis vector has a 1 in its free coordinate.
Matrix nullspace(const Matrix& a);

}  // namespace circkit
