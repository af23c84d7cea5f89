#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "circkit/monomial.hpp"
#include "circkit/scalar.hpp"

namespace circkit {

/// Shared, immutable ordered variable list.
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);

/// A multivariate polynomial as a canonical map from monomials to nonzero
/// coefficients, iterated in grlex order.
class SparsePoly {
 public:
  using TermMap = std::map<Monomial, Scalar, GrlexBefore>;

  SparsePoly() : SparsePoly(make_vars({})) {}
  explicit SparsePoly(VarList vars, Field field = Field::rational());

  static SparsePoly constant(VarList vars, const Scalar& c);
  static SparsePoly variable(VarList vars, const std::string& name, Field field = Field::rational());

  const VarList& vars() const { return vars_; }
  const std::vector<std::string>& var_names() const { return *vars_; }
  std::size_t nvars() const { return vars_->size(); }
  Field field() const { return field_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Scalar coefficient(const Monomial& m) const;
  /// Index of `name` in the variable list; throws UnknownVariable.
  VarIndex index_of(const std::string& name) const;

  /// Adds c·m (dropping the term if the sum cancels).
  void add_term(const Monomial& m, const Scalar& c);

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const Scalar& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const Scalar& c) { return a *= c; }
  SparsePoly operator-() const;
  SparsePoly pow(unsigned e) const;

  /// Same polynomial over `target`, which must contain every variable used.
  SparsePoly reembed(VarList target) const;
  /// Assigns scalars to some variables; result lives over `remaining`.
  SparsePoly specialize(const std::map<std::string, Scalar>& assignment, VarList remaining) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;

  std::string to_string() const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b);
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

 private:
  void check_compatible(const SparsePoly& o) const;

  VarList vars_;
  Field field_;
  TermMap terms_;
};

// --- free functions ---------------------------------------------------------

SparsePoly add(const SparsePoly& p, const SparsePoly& q);
SparsePoly mul(const SparsePoly& p, const SparsePoly& q);

SparsePoly partial_derivative(const SparsePoly& p, const std::string& var);
SparsePoly homogeneous_component(const SparsePoly& p, int d);

struct SubsetDegree {
  bool homogeneous = false;
  /// Common degree when homogeneous (and the polynomial is nonzero).
  std::optional<int> degree;
};

/// Whether every term has the same total degree in the variables of `subset`.
SubsetDegree degree_in_subset(const SparsePoly& p, const std::vector<std::string>& subset);
SubsetDegree degree_in_mask(const SparsePoly& p, const std::vector<bool>& mask);

struct PartialHomogeneity {
  std::vector<std::string> z;
  int degree = 0;
  friend bool operator==(const PartialHomogeneity&, const PartialHomogeneity&) = default;
};

/// Seeded closure search for nonempty proper subsets Z in which p is
/// homogeneous. Not exhaustive: an empty result only means this search found
/// nothing.
std::vector<PartialHomogeneity> detect_partial_homogeneity(const SparsePoly& p,
                                                           std::size_t max_states = 20000);

/// Monomial basis of homogeneous degree-r polynomials in `vars`, grlex order.
std::vector<Monomial> monomial_basis(const std::vector<std::string>& vars, std::uint32_t r);

/// Exact binomial coefficient C(n, k); zero when k > n.
mpz_class binomial(const mpz_class& n, unsigned long k);
mpz_class binomial(unsigned long n, unsigned long k);
/// dim Pol^r_hom in n variables = C(n + r - 1, r).
mpz_class dim_pol_hom(unsigned long n, unsigned long r);

}  // namespace circkit
