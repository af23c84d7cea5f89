#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circkit/circuit.hpp"
#include "circkit/sparse_poly.hpp"

namespace circkit {

/// X (degree exactly one, may be empty), Y (parameters), Z (nonempty,
/// proper) partition the variables of a polynomial; r is its Z-degree.
struct VariablePartition {
  std::vector<std::string> x;
  std::vector<std::string> y;
  std::vector<std::string> z;
  unsigned r = 0;
};

enum class FamilyCase { Case1, Case2 };

const char* to_string(FamilyCase c);

/// f~ written as a polynomial in Z with coefficients in Y, either directly
/// (Case 1, one row) or one row per derivative d f~ / d x, x in X (Case 2).
/// coeffs[j][q] multiplies basis[q].
struct PolynomialFamily {
  VariablePartition partition;
  FamilyCase kind = FamilyCase::Case1;
  Field field;
  VarList y_vars;
  VarList z_vars;
  std::vector<Monomial> basis;  // grlex over z_vars, degree r
  std::vector<std::vector<SparsePoly>> coeffs;
  std::optional<Circuit> source;

  std::size_t k() const { return y_vars->size(); }
  std::size_t p() const { return coeffs.size(); }
  std::size_t m_prime() const { return basis.size(); }
  std::size_t m() const { return p() * m_prime(); }
  /// Row j of the family as a polynomial over Z, with coefficients in Y
  /// left symbolic (over Y followed by Z).
  SparsePoly row_polynomial(std::size_t j) const;
  /// The associated mapping F^k -> F^m: every coefficient polynomial, row by row.
  std::vector<SparsePoly> associated_map() const;
};

/// Case 1: Y and Z partition the variables, f homogeneous of degree r in Z.
/// Throws NotHomogeneousInZ, VariableMismatch.
PolynomialFamily decompose_case1(const SparsePoly& f, const std::vector<std::string>& y,
                                 const std::vector<std::string>& z);

/// Case 2: every x in X has degree exactly 1 in f; the rows decompose the
/// derivatives. Throws DegreeNotOneInX, NotHomogeneousInZ, VariableMismatch
/// (also when a derivative still involves X).
PolynomialFamily decompose_case2(const SparsePoly& f, const std::vector<std::string>& x,
                                 const std::vector<std::string>& y, const std::vector<std::string>& z);

/// Checks sum_q coeffs[j][q] * basis[q] against f (Case 1) or its
/// derivatives (Case 2), exactly.
bool reconstruction_holds(const PolynomialFamily& fam, const SparsePoly& f);

struct Specialization {
  /// One polynomial over Z per row.
  std::vector<SparsePoly> tuple;
  std::optional<Circuit> witness;
  std::size_t witness_size = 0;
  std::size_t source_size = 0;
  /// Case 1: size <= source size. Case 2: size < 5 * source size.
  bool within_bound = true;
  /// Expansion of the witness equals the tuple.
  bool witness_matches = true;
};

/// Evaluates the family at lambda (one value per Y variable, in order).
/// With a source circuit, also builds the size witness: the source with Y
/// substituted (Case 1) or its gradient in X with Y substituted (Case 2).
/// Throws DimensionMismatch.
Specialization specialize(const PolynomialFamily& fam, const std::vector<Scalar>& lambda);

enum class PermanentVariant { Case1YZ, Case2XYZ };

struct PermanentObjects {
  SparsePoly f;
  VariablePartition partition;
  PolynomialFamily family;
  Circuit circuit;
};

/// Per_n with rows split at t. Case2XYZ: X = row 1, Y = rows 2..t,
/// Z = rows t+1..n, requires 2 <= t <= n-2. Case1YZ: Y = rows 1..t,
/// Z = rows t+1..n, requires 1 <= t <= n-2. Both require n <= 5.
/// Throws ParamViolation.
PermanentObjects permanent_objects(std::size_t n, std::size_t t, PermanentVariant variant);

}  // namespace circkit
