#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "circkit/linalg.hpp"
#include "circkit/sparse_poly.hpp"

namespace circkit {

/// A polynomial mapping F^n -> F^m; all components share one variable list.
class PolyMap {
 public:
  PolyMap(VarList vars, std::vector<SparsePoly> components, Field field = Field::rational());

  /// nu_k: every degree-k monomial in x1..xn, grlex order.
  static PolyMap veronese(std::size_t n, unsigned k);

  const VarList& vars() const { return vars_; }
  const std::vector<SparsePoly>& components() const { return components_; }
  const SparsePoly& component(std::size_t i) const { return components_.at(i); }
  Field field() const { return field_; }
  std::size_t n() const { return vars_->size(); }
  std::size_t m() const { return components_.size(); }
  /// Common degree when every nonzero component is homogeneous of it.
  std::optional<unsigned> homogeneous_degree() const { return degree_; }

 private:
  VarList vars_;
  std::vector<SparsePoly> components_;
  Field field_;
  std::optional<unsigned> degree_;
};

enum class Verdict { Certified, Inconclusive };
enum class CertificateKind { Dimension, Rank, Inequality };

const char* to_string(Verdict v);
const char* to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::Rank;
  std::string name;
  mpz_class s;
  unsigned r = 1;  // degree parameter of the elusiveness claim
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::pair<std::string, std::string>> evidence;

  bool certified() const { return verdict == Verdict::Certified; }
};

inline constexpr std::size_t kDefaultDimBudget = 5000;

struct HilbertValue {
  mpz_class dim_a;
  mpz_class dim_i;
  mpz_class dim_pol;  // C(m+d-1, d)
  /// Kernel basis of g -> g o f, over u0..u{m-1}.
  std::vector<SparsePoly> kernel;
};

/// Vanishing-ideal dimension count in degree d >= 1 by exact pullback.
/// Throws UnsupportedField, DomainViolation (d = 0), BudgetExceeded.
HilbertValue hilbert_value(const PolyMap& f, unsigned d, std::size_t max_dim = kDefaultDimBudget,
                           std::size_t max_terms = 200000);

/// Certified (s,r)-weakly elusive if some d <= d_max has
/// dim A^d >= C(s+rd-1, rd) + 1.
Certificate certify_by_dimension(const PolyMap& f, const mpz_class& s, unsigned r, unsigned d_max,
                                 std::size_t max_dim = kDefaultDimBudget);

/// Entry (i,j) = f_i*(a_j), where row i of fstars lists coefficients against
/// the grlex degree-r monomials in s variables and column j of points is a_j.
/// Also checks the result against fstars * nu_r(points).
/// Throws DimensionMismatch.
Matrix evaluation_map_apply(const Matrix& fstars, const Matrix& points, unsigned r);

/// nu_r applied to every column of points.
Matrix veronese_columns(const Matrix& points, unsigned r);

/// r = 1: certified (s,1)-weakly elusive iff rank(tuple) > s.
Certificate rank_criterion(const Matrix& tuple, const mpz_class& s);

/// Quadratic binomials u_a u_b - u_c u_d cutting out the image of nu_r on
/// F^s; u_i is the i-th grlex monomial. Throws BudgetExceeded.
std::vector<SparsePoly> veronese_ideal_generators(std::size_t s, unsigned r, std::size_t max_count = 200000);

struct InequalityResult {
  std::string name;
  bool holds = false;
  mpq_class lhs;
  mpq_class rhs;
  std::vector<std::pair<std::string, std::string>> evidence;
};

/// C(n+p-1, p) >= m C(s+r-1, r) / (m - s).
InequalityResult codi2(const mpz_class& n, unsigned long p, const mpz_class& m, const mpz_class& s, unsigned long r);
/// C(nx+p-1, p) >= C(ny+q-1, q) C(s+2q-2, 2q-1) / (C(ny+q-1, q) - s).
InequalityResult bih(const mpz_class& nx, unsigned long p, const mpz_class& ny, unsigned long q, const mpz_class& s);
/// C(nt+t-1, t) >= C(n, n-t) C(s+2(n-t)-2, 2(n-t)) / (C(n, n-t) - s).
InequalityResult per_inequality(unsigned long n, unsigned long t, const mpz_class& s);

struct PerFamily {
  unsigned long n;
  unsigned long t;
  mpz_class s;
};

/// n = N^4, t = N^3 (N-1), s = N^(4k).
PerFamily per_family(unsigned long big_n, unsigned long k);

Certificate to_certificate(const InequalityResult& r, const mpz_class& s, unsigned degree);

/// Span of the rows-1..t specializations of Per_n at the partial-identity
/// parameter values, one per t-subset of columns. Certificate for
/// (C(n,t)-1, 1). Throws ParamViolation.
Certificate span_minor_permanents(std::size_t n, std::size_t t);

struct Reduction {
  PolyMap reduced;
  std::size_t span_dim = 0;
  std::vector<std::size_t> kept;  // components retained, in order
};

/// Keeps a maximal linearly independent set of components (the first ones).
Reduction project_reduce(const PolyMap& f);

enum class BoundCase { General, Pt1, Pt2 };

const char* to_string(BoundCase c);

struct BoundReport {
  mpz_class s;
  unsigned r = 1;
  BoundCase which = BoundCase::General;
  mpq_class bound_squared;
  std::optional<mpq_class> bound;  // when bound_squared is a rational square
  std::string decimal;             // truncated to 12 digits
  std::string formula;
  mpz_class threshold_factor;  // 64 r^3 or 1600 r^3
};

/// sqrt(s) / (8 r^{3/2}) (GENERAL, PT1) or sqrt(s) / (40 r^{3/2}) (PT2).
BoundReport bound_formula(const mpz_class& s, unsigned r, BoundCase which);

/// Requires a certified (s, 2r-1) certificate. Throws NotCertified,
/// WrongDegreeParameter.
BoundReport lower_bound_report(const Certificate& cert, BoundCase which);

/// s0 = 64 L^2 r^3 (1600 L^2 r^3 for PT2).
mpq_class threshold_s0(const mpq_class& big_l, unsigned r, BoundCase which = BoundCase::General);

/// floor(sqrt(q) * 10^digits) / 10^digits as a decimal string.
std::string sqrt_decimal(const mpq_class& q, unsigned digits = 12);

}  // namespace circkit
