#include "circkit/elusive.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "circkit/errors.hpp"
#include "circkit/families.hpp"

namespace circkit {

namespace {

std::string str(const mpz_class& v) { return v.get_str(); }
std::string str(const mpq_class& v) { return v.get_str(); }
std::string str(std::size_t v) { return std::to_string(v); }

VarList u_vars(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 0; i < m; ++i) names.push_back("u" + std::to_string(i));
  return make_vars(std::move(names));
}

Monomial pair_monomial(VarIndex a, VarIndex b) {
  if (a == b) return Monomial::variable(a, 2);
  return Monomial::variable(a) * Monomial::variable(b);
}

mpz_class power(const mpz_class& b, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

}  // namespace

PolyMap::PolyMap(VarList vars, std::vector<SparsePoly> components, Field field)
    : vars_(std::move(vars)), components_(std::move(components)), field_(field) {
  bool homogeneous = true;
  std::optional<unsigned> deg;
  for (auto& c : components_) {
    if (c.field() != field_) throw FieldMismatch("component over " + c.field().to_string());
    if (c.vars() != vars_) {
      if (c.var_names() != *vars_) throw VariableMismatch("components must share the variable list");
      c = c.reembed(vars_);
    }
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) {
      homogeneous = false;
      continue;
    }
    const auto d = static_cast<unsigned>(c.degree());
    if (deg && *deg != d) homogeneous = false;
    deg = d;
  }
  if (homogeneous && deg) degree_ = deg;
}

PolyMap PolyMap::veronese(std::size_t n, unsigned k) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  auto vars = make_vars(std::move(names));
  std::vector<SparsePoly> comps;
  for (const auto& mono : monomial_basis(n, k)) {
    SparsePoly p(vars);
    p.add_term(mono, Scalar(1));
    comps.push_back(std::move(p));
  }
  return PolyMap(vars, std::move(comps));
}

const char* to_string(Verdict v) { return v == Verdict::Certified ? "CERTIFIED_WEAKLY_ELUSIVE" : "INCONCLUSIVE"; }

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::Dimension: return "DIMENSION";
    case CertificateKind::Rank: return "RANK";
    case CertificateKind::Inequality: return "INEQUALITY";
  }
  return "?";
}

const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::General: return "GENERAL";
    case BoundCase::Pt1: return "PT1";
    case BoundCase::Pt2: return "PT2";
  }
  return "?";
}

HilbertValue hilbert_value(const PolyMap& f, unsigned d, std::size_t max_dim, std::size_t max_terms) {
  if (!f.field().is_rational()) {
    throw UnsupportedField("dimension counts need the rationals (got " + f.field().to_string() + ")");
  }
  if (d == 0) throw DomainViolation("degree d must be at least 1");
  HilbertValue out;
  out.dim_pol = binomial(f.m() + d - 1, d);
  if (out.dim_pol > max_dim) {
    throw BudgetExceeded("C(m+d-1, d) = " + str(out.dim_pol) + " exceeds the dimension budget " + str(max_dim));
  }
  const auto cols = monomial_basis(f.m(), d);
  std::vector<SparsePoly> images;
  std::map<Monomial, Eigen::Index, GrlexBefore> rows;
  for (const auto& g : cols) {
    SparsePoly img = SparsePoly::constant(f.vars(), Scalar(1));
    for (const auto& [v, e] : g.factors()) {
      img = img * f.component(v).pow(e);
      if (img.term_count() > max_terms) throw BudgetExceeded("pullback exceeds the term budget");
    }
    for (const auto& [mono, coef] : img.terms()) rows.emplace(mono, 0);
    images.push_back(std::move(img));
  }
  if (rows.size() > max_terms) throw BudgetExceeded("pullback exceeds the term budget");
  Eigen::Index next = 0;
  for (auto& [mono, idx] : rows) idx = next++;
  Matrix a = zero_matrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [mono, coef] : images[j].terms()) a(rows.at(mono), static_cast<Eigen::Index>(j)) = coef;
  }
  const Matrix kernel = nullspace(a);
  out.dim_i = static_cast<unsigned long>(kernel.cols());
  out.dim_a = out.dim_pol - out.dim_i;
  const auto uv = u_vars(f.m());
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    SparsePoly g(uv);
    for (Eigen::Index j = 0; j < kernel.rows(); ++j) {
      if (!kernel(j, k).is_zero()) g.add_term(cols[static_cast<std::size_t>(j)], kernel(j, k));
    }
    out.kernel.push_back(std::move(g));
  }
  return out;
}

Certificate certify_by_dimension(const PolyMap& f, const mpz_class& s, unsigned r, unsigned d_max,
                                 std::size_t max_dim) {
  Certificate cert;
  cert.kind = CertificateKind::Dimension;
  cert.name = "dimension";
  cert.s = s;
  cert.r = r;
  cert.evidence.emplace_back("m", str(f.m()));
  cert.evidence.emplace_back("n", str(f.n()));
  for (unsigned d = 1; d <= d_max; ++d) {
    const std::string key = "d" + std::to_string(d);
    const mpz_class needed = binomial(s + r * d - 1, r * d) + 1;
    cert.evidence.emplace_back(key + ".required", str(needed));
    const mpz_class ceiling = binomial(f.m() + d - 1, d);
    if (ceiling < needed) {
      cert.evidence.emplace_back(key + ".dimPol", str(ceiling));
      continue;
    }
    const auto hv = hilbert_value(f, d, max_dim);
    cert.evidence.emplace_back(key + ".dimA", str(hv.dim_a));
    cert.evidence.emplace_back(key + ".dimI", str(hv.dim_i));
    if (hv.dim_a >= needed) {
      cert.verdict = Verdict::Certified;
      cert.name = "dimension(d=" + std::to_string(d) + ")";
      break;
    }
  }
  return cert;
}

Matrix veronese_columns(const Matrix& points, unsigned r) {
  const auto s = static_cast<std::size_t>(points.rows());
  const auto basis = monomial_basis(s, r);
  Matrix out = zero_matrix(static_cast<Eigen::Index>(basis.size()), points.cols());
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    for (std::size_t q = 0; q < basis.size(); ++q) {
      Scalar v(1);
      for (const auto& [var, e] : basis[q].factors()) v *= points(var, j).pow(e);
      out(static_cast<Eigen::Index>(q), j) = v;
    }
  }
  return out;
}

Matrix evaluation_map_apply(const Matrix& fstars, const Matrix& points, unsigned r) {
  const auto s = static_cast<std::size_t>(points.rows());
  const mpz_class expected = binomial(s + r - 1, r);
  if (expected != static_cast<unsigned long>(fstars.cols())) {
    throw DimensionMismatch("coefficient matrix has " + std::to_string(fstars.cols()) + " columns, expected " +
                            str(expected));
  }
  const auto basis = monomial_basis(s, r);
  Matrix direct = zero_matrix(fstars.rows(), points.cols());
  for (Eigen::Index i = 0; i < fstars.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      Scalar acc;
      for (std::size_t q = 0; q < basis.size(); ++q) {
        const Scalar& c = fstars(i, static_cast<Eigen::Index>(q));
        if (c.is_zero()) continue;
        Scalar term = c;
        for (const auto& [var, e] : basis[q].factors()) term *= points(var, j).pow(e);
        acc += term;
      }
      direct(i, j) = acc;
    }
  }
  if (fstars.rows() > 0 && points.cols() > 0) {
    const Matrix factored = fstars * veronese_columns(points, r);
    if (factored != direct) throw std::logic_error("evaluation map does not factor through the Veronese map");
  }
  return direct;
}

Certificate rank_criterion(const Matrix& tuple, const mpz_class& s) {
  Certificate cert;
  cert.kind = CertificateKind::Rank;
  cert.name = "rank";
  cert.s = s;
  cert.r = 1;
  const auto rk = rank(tuple);
  cert.evidence.emplace_back("m", str(static_cast<std::size_t>(tuple.rows())));
  cert.evidence.emplace_back("k", str(static_cast<std::size_t>(tuple.cols())));
  cert.evidence.emplace_back("rank", str(rk));
  if (mpz_class(static_cast<unsigned long>(rk)) > s) cert.verdict = Verdict::Certified;
  return cert;
}

std::vector<SparsePoly> veronese_ideal_generators(std::size_t s, unsigned r, std::size_t max_count) {
  const auto basis = monomial_basis(s, r);
  const auto uv = u_vars(basis.size());
  std::map<Monomial, std::vector<std::pair<VarIndex, VarIndex>>, GrlexBefore> groups;
  for (VarIndex a = 0; a < basis.size(); ++a) {
    for (VarIndex b = a; b < basis.size(); ++b) groups[basis[a] * basis[b]].emplace_back(a, b);
  }
  std::vector<SparsePoly> out;
  for (const auto& [sum, pairs] : groups) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        if (out.size() >= max_count) throw BudgetExceeded("more than " + str(max_count) + " generators");
        SparsePoly g(uv);
        g.add_term(pair_monomial(pairs[i].first, pairs[i].second), Scalar(1));
        g.add_term(pair_monomial(pairs[j].first, pairs[j].second), Scalar(-1));
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

InequalityResult codi2(const mpz_class& n, unsigned long p, const mpz_class& m, const mpz_class& s,
                       unsigned long r) {
  const mpz_class denom = m - s;
  if (denom <= 0) throw DomainViolation("m - s = " + str(denom) + " must be positive");
  InequalityResult res;
  res.name = "CODI2";
  const mpz_class lhs = binomial(n + p - 1, p);
  const mpz_class pol = binomial(s + r - 1, r);
  res.lhs = lhs;
  res.rhs = mpq_class(m * pol, denom);
  res.rhs.canonicalize();
  res.holds = res.lhs >= res.rhs;
  res.evidence = {{"C(n+p-1,p)", str(lhs)}, {"C(s+r-1,r)", str(pol)}, {"m-s", str(denom)}};
  return res;
}

InequalityResult bih(const mpz_class& nx, unsigned long p, const mpz_class& ny, unsigned long q, const mpz_class& s) {
  if (q == 0) throw DomainViolation("q must be at least 1");
  const mpz_class cy = binomial(ny + q - 1, q);
  const mpz_class denom = cy - s;
  if (denom <= 0) throw DomainViolation("C(nY+q-1,q) - s = " + str(denom) + " must be positive");
  InequalityResult res;
  res.name = "BIH";
  const mpz_class lhs = binomial(nx + p - 1, p);
  const mpz_class pol = binomial(s + 2 * q - 2, 2 * q - 1);
  res.lhs = lhs;
  res.rhs = mpq_class(cy * pol, denom);
  res.rhs.canonicalize();
  res.holds = res.lhs >= res.rhs;
  res.evidence = {{"C(nX+p-1,p)", str(lhs)}, {"C(nY+q-1,q)", str(cy)}, {"C(s+2q-2,2q-1)", str(pol)},
                  {"denominator", str(denom)}};
  return res;
}

InequalityResult per_inequality(unsigned long n, unsigned long t, const mpz_class& s) {
  if (t > n) throw DomainViolation("t must not exceed n");
  const mpz_class cn = binomial(n, n - t);
  const mpz_class denom = cn - s;
  if (denom <= 0) throw DomainViolation("C(n,n-t) - s = " + str(denom) + " must be positive");
  InequalityResult res;
  res.name = "PER";
  const mpz_class lhs = binomial(mpz_class(n) * t + t - 1, t);
  const mpz_class pol = binomial(s + 2 * (n - t) - 2, 2 * (n - t));
  res.lhs = lhs;
  res.rhs = mpq_class(cn * pol, denom);
  res.rhs.canonicalize();
  res.holds = res.lhs >= res.rhs;
  res.evidence = {{"C(nt+t-1,t)", str(lhs)}, {"C(n,n-t)", str(cn)}, {"C(s+2(n-t)-2,2(n-t))", str(pol)},
                  {"denominator", str(denom)}};
  return res;
}

PerFamily per_family(unsigned long big_n, unsigned long k) {
  const mpz_class nn(big_n);
  PerFamily fam;
  fam.n = power(nn, 4).get_ui();
  fam.t = mpz_class(power(nn, 3) * (nn - 1)).get_ui();
  fam.s = power(nn, 4 * k);
  return fam;
}

Certificate to_certificate(const InequalityResult& r, const mpz_class& s, unsigned degree) {
  Certificate cert;
  cert.kind = CertificateKind::Inequality;
  cert.name = r.name;
  cert.s = s;
  cert.r = degree;
  cert.verdict = r.holds ? Verdict::Certified : Verdict::Inconclusive;
  cert.evidence = r.evidence;
  cert.evidence.emplace_back("lhs", str(r.lhs));
  cert.evidence.emplace_back("rhs", str(r.rhs));
  return cert;
}

Certificate span_minor_permanents(std::size_t n, std::size_t t) {
  if (n > 5 || t < 1 || t + 2 > n) {
    throw ParamViolation("need 1 <= t <= n-2 and n <= 5 (n = " + std::to_string(n) + ", t = " + std::to_string(t) +
                         ")");
  }
  auto obj = permanent_objects(n, t, PermanentVariant::Case1YZ);
  obj.family.source.reset();
  const auto& fam = obj.family;
  std::vector<std::vector<std::size_t>> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != t) continue;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (1u << c)) cols.push_back(c);
    }
    subsets.push_back(std::move(cols));
  }
  std::sort(subsets.begin(), subsets.end());
  Matrix coeffs = zero_matrix(static_cast<Eigen::Index>(subsets.size()), static_cast<Eigen::Index>(fam.m_prime()));
  for (std::size_t row = 0; row < subsets.size(); ++row) {
    std::vector<Scalar> lambda(fam.k(), Scalar(0));
    for (std::size_t i = 0; i < t; ++i) lambda[i * n + subsets[row][i]] = Scalar(1);
    const auto spec = specialize(fam, lambda);
    for (std::size_t q = 0; q < fam.m_prime(); ++q) {
      coeffs(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(q)) = spec.tuple[0].coefficient(fam.basis[q]);
    }
  }
  const auto span = rank(coeffs);
  const mpz_class expected = binomial(n, n - t);
  if (expected != static_cast<unsigned long>(span)) {
    throw std::logic_error("span of minor permanents has dimension " + str(span) + ", expected " + str(expected));
  }
  Certificate cert;
  cert.kind = CertificateKind::Rank;
  cert.name = "span-minor-permanents";
  cert.s = expected - 1;
  cert.r = 1;
  cert.verdict = Verdict::Certified;
  cert.evidence = {{"n", str(n)},
                   {"t", str(t)},
                   {"specializations", str(subsets.size())},
                   {"spanDim", str(span)},
                   {"C(n,n-t)", str(expected)}};
  return cert;
}

Reduction project_reduce(const PolyMap& f) {
  std::map<Monomial, Eigen::Index, GrlexBefore> rows;
  for (const auto& c : f.components()) {
    for (const auto& [mono, coef] : c.terms()) rows.emplace(mono, 0);
  }
  Eigen::Index next = 0;
  for (auto& [mono, idx] : rows) idx = next++;
  Matrix a = zero_matrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(f.m()), f.field());
  for (std::size_t j = 0; j < f.m(); ++j) {
    for (const auto& [mono, coef] : f.component(j).terms()) a(rows.at(mono), static_cast<Eigen::Index>(j)) = coef;
  }
  const auto e = row_reduce(a);
  std::vector<std::size_t> kept;
  std::vector<SparsePoly> comps;
  for (auto c : e.pivot_columns) {
    kept.push_back(static_cast<std::size_t>(c));
    comps.push_back(f.component(static_cast<std::size_t>(c)));
  }
  return Reduction{PolyMap(f.vars(), std::move(comps), f.field()), kept.size(), std::move(kept)};
}

mpq_class threshold_s0(const mpq_class& big_l, unsigned r, BoundCase which) {
  const mpz_class factor = (which == BoundCase::Pt2 ? 1600 : 64) * power(mpz_class(r), 3);
  mpq_class out = mpq_class(factor) * big_l * big_l;
  out.canonicalize();
  return out;
}

std::string sqrt_decimal(const mpq_class& q, unsigned digits) {
  if (sgn(q) < 0) throw DomainViolation("square root of a negative number");
  const mpz_class scale = power(mpz_class(10), digits);
  const mpz_class scaled = q.get_num() * scale * scale / q.get_den();
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  const mpz_class whole = root / scale;
  std::string frac = mpz_class(root % scale).get_str();
  if (digits == 0) return whole.get_str();
  frac.insert(0, digits - frac.size(), '0');
  return whole.get_str() + "." + frac;
}

BoundReport bound_formula(const mpz_class& s, unsigned r, BoundCase which) {
  if (r == 0) throw DomainViolation("r must be at least 1");
  if (s < 0) throw DomainViolation("s must be nonnegative");
  BoundReport rep;
  rep.s = s;
  rep.r = r;
  rep.which = which;
  rep.threshold_factor = (which == BoundCase::Pt2 ? 1600 : 64) * power(mpz_class(r), 3);
  rep.bound_squared = mpq_class(s, rep.threshold_factor);
  rep.bound_squared.canonicalize();
  const auto& num = rep.bound_squared.get_num();
  const auto& den = rep.bound_squared.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class a, b;
    mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
    rep.bound = mpq_class(a, b);
  }
  rep.decimal = sqrt_decimal(rep.bound_squared);
  rep.formula = which == BoundCase::Pt2 ? "sqrt(s)/(40*r^(3/2))" : "sqrt(s)/(8*r^(3/2))";
  const bool dual = rep.threshold_factor * rep.bound_squared == mpq_class(s) &&
                    (!rep.bound || threshold_s0(*rep.bound, r, which) == mpq_class(s));
  if (!dual) throw std::logic_error("bound and threshold disagree");
  return rep;
}

BoundReport lower_bound_report(const Certificate& cert, BoundCase which) {
  if (!cert.certified()) throw NotCertified("certificate verdict is " + std::string(to_string(cert.verdict)));
  if (cert.r % 2 == 0) {
    throw WrongDegreeParameter("degree parameter " + std::to_string(cert.r) + " is not of the form 2r-1");
  }
  return bound_formula(cert.s, (cert.r + 1) / 2, which);
}

}  // namespace circkit
