#include "circkit/families.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "circkit/circuit_ops.hpp"
#include "circkit/errors.hpp"
#include "circkit/gradient.hpp"
#include "circkit/normalizer.hpp"
#include "circkit/permanent.hpp"

namespace circkit {

const char* to_string(FamilyCase c) { return c == FamilyCase::Case1 ? "CASE1" : "CASE2"; }

namespace {

struct Split {
  std::vector<bool> y_mask, z_mask;
  std::vector<VarIndex> y_remap, z_remap;
};

Split make_split(const SparsePoly& f, const std::vector<std::string>& y, const std::vector<std::string>& z) {
  Split s;
  const auto n = f.nvars();
  s.y_mask.assign(n, false);
  s.z_mask.assign(n, false);
  s.y_remap.assign(n, 0);
  s.z_remap.assign(n, 0);
  for (VarIndex i = 0; i < y.size(); ++i) {
    const auto v = f.index_of(y[i]);
    s.y_mask[v] = true;
    s.y_remap[v] = i;
  }
  for (VarIndex i = 0; i < z.size(); ++i) {
    const auto v = f.index_of(z[i]);
    s.z_mask[v] = true;
    s.z_remap[v] = i;
  }
  return s;
}

void check_partition(const SparsePoly& f, const std::vector<std::string>& x, const std::vector<std::string>& y,
                     const std::vector<std::string>& z) {
  std::set<std::string> seen;
  for (const auto* part : {&x, &y, &z}) {
    for (const auto& v : *part) {
      f.index_of(v);
      if (!seen.insert(v).second) throw VariableMismatch("variable `" + v + "` appears in two blocks");
    }
  }
  if (seen.size() != f.nvars()) throw VariableMismatch("X, Y and Z must cover every variable");
  if (z.empty()) throw VariableMismatch("Z must be nonempty");
  if (z.size() == f.nvars()) throw VariableMismatch("Z must be a proper subset");
}

unsigned z_degree(const SparsePoly& f, const std::vector<std::string>& z) {
  const auto d = degree_in_subset(f, z);
  if (!d.homogeneous || !d.degree) throw NotHomogeneousInZ("polynomial is not homogeneous in Z");
  return static_cast<unsigned>(*d.degree);
}

// Coefficients of g (which may not involve X) against the degree-r Z basis.
std::vector<SparsePoly> collect(const SparsePoly& g, const Split& s, const PolynomialFamily& fam,
                                const std::map<Monomial, std::size_t, GrlexBefore>& index) {
  std::vector<SparsePoly> row(fam.basis.size(), SparsePoly(fam.y_vars, fam.field));
  for (const auto& [mono, coef] : g.terms()) {
    const Monomial zpart = mono.restricted(s.z_mask, s.z_remap);
    auto it = index.find(zpart);
    if (it == index.end()) throw NotHomogeneousInZ("term of unexpected Z-degree");
    row[it->second].add_term(mono.restricted(s.y_mask, s.y_remap), coef);
  }
  return row;
}

PolynomialFamily skeleton(const SparsePoly& f, const std::vector<std::string>& x, const std::vector<std::string>& y,
                          const std::vector<std::string>& z, unsigned r, FamilyCase kind) {
  PolynomialFamily fam;
  fam.partition = VariablePartition{x, y, z, r};
  fam.kind = kind;
  fam.field = f.field();
  fam.y_vars = make_vars(y);
  fam.z_vars = make_vars(z);
  fam.basis = monomial_basis(z.size(), r);
  return fam;
}

std::map<Monomial, std::size_t, GrlexBefore> basis_index(const PolynomialFamily& fam) {
  std::map<Monomial, std::size_t, GrlexBefore> index;
  for (std::size_t q = 0; q < fam.basis.size(); ++q) index.emplace(fam.basis[q], q);
  return index;
}

}  // namespace

SparsePoly PolynomialFamily::row_polynomial(std::size_t j) const {
  std::vector<std::string> names = *y_vars;
  names.insert(names.end(), z_vars->begin(), z_vars->end());
  const auto vars = make_vars(names);
  const auto ny = static_cast<VarIndex>(y_vars->size());
  SparsePoly out(vars, field);
  for (std::size_t q = 0; q < basis.size(); ++q) {
    std::vector<Monomial::Factor> zf;
    for (const auto& [v, e] : basis[q].factors()) zf.emplace_back(v + ny, e);
    const Monomial zm = Monomial::from_factors(zf);
    for (const auto& [mono, coef] : coeffs.at(j)[q].terms()) out.add_term(mono * zm, coef);
  }
  return out;
}

std::vector<SparsePoly> PolynomialFamily::associated_map() const {
  std::vector<SparsePoly> out;
  for (const auto& row : coeffs) out.insert(out.end(), row.begin(), row.end());
  return out;
}

PolynomialFamily decompose_case1(const SparsePoly& f, const std::vector<std::string>& y,
                                 const std::vector<std::string>& z) {
  check_partition(f, {}, y, z);
  const unsigned r = z_degree(f, z);
  auto fam = skeleton(f, {}, y, z, r, FamilyCase::Case1);
  const auto s = make_split(f, y, z);
  fam.coeffs.push_back(collect(f, s, fam, basis_index(fam)));
  return fam;
}

PolynomialFamily decompose_case2(const SparsePoly& f, const std::vector<std::string>& x,
                                 const std::vector<std::string>& y, const std::vector<std::string>& z) {
  check_partition(f, x, y, z);
  if (x.empty()) throw VariableMismatch("Case 2 needs a nonempty X");
  std::vector<bool> x_mask(f.nvars(), false);
  for (const auto& v : x) x_mask[f.index_of(v)] = true;
  for (const auto& v : x) {
    const auto i = f.index_of(v);
    std::uint32_t top = 0;
    for (const auto& [mono, coef] : f.terms()) top = std::max(top, mono.exponent(i));
    if (top != 1) throw DegreeNotOneInX("`" + v + "` has degree " + std::to_string(top) + " in the polynomial");
  }
  const unsigned r = z_degree(f, z);
  auto fam = skeleton(f, x, y, z, r, FamilyCase::Case2);
  const auto s = make_split(f, y, z);
  const auto index = basis_index(fam);
  for (const auto& v : x) {
    const auto d = partial_derivative(f, v);
    for (const auto& [mono, coef] : d.terms()) {
      if (mono.degree_in(x_mask) != 0) {
        throw VariableMismatch("derivative in `" + v + "` still involves X variables");
      }
    }
    fam.coeffs.push_back(collect(d, s, fam, index));
  }
  return fam;
}

bool reconstruction_holds(const PolynomialFamily& fam, const SparsePoly& f) {
  for (std::size_t j = 0; j < fam.p(); ++j) {
    const SparsePoly target = fam.kind == FamilyCase::Case1 ? f : partial_derivative(f, fam.partition.x.at(j));
    const SparsePoly rebuilt = fam.row_polynomial(j);
    if (target.reembed(rebuilt.vars()) != rebuilt) return false;
  }
  return true;
}

Specialization specialize(const PolynomialFamily& fam, const std::vector<Scalar>& lambda) {
  if (lambda.size() != fam.k()) {
    throw DimensionMismatch("expected " + std::to_string(fam.k()) + " parameter values, got " +
                            std::to_string(lambda.size()));
  }
  Specialization out;
  for (std::size_t j = 0; j < fam.p(); ++j) {
    SparsePoly g(fam.z_vars, fam.field);
    for (std::size_t q = 0; q < fam.m_prime(); ++q) {
      const Scalar c = fam.coeffs[j][q].evaluate(lambda);
      if (!c.is_zero()) g.add_term(fam.basis[q], c);
    }
    out.tuple.push_back(std::move(g));
  }
  if (!fam.source) return out;

  const Circuit& src = *fam.source;
  std::map<std::string, Scalar> assignment;
  const auto inputs = src.variables();
  for (std::size_t i = 0; i < fam.k(); ++i) {
    const auto& name = (*fam.y_vars)[i];
    if (std::find(inputs.begin(), inputs.end(), name) != inputs.end()) assignment.emplace(name, lambda[i]);
  }
  out.source_size = src.size();
  if (fam.kind == FamilyCase::Case1) {
    out.witness = substitute(src, assignment);
    out.witness_size = out.witness->size();
    out.within_bound = out.witness_size <= out.source_size;
  } else {
    const Circuit base = metrics(src).fanin > 2 ? binarize(src) : src;
    for (const auto& x : fam.partition.x) {
      if (std::find(inputs.begin(), inputs.end(), x) == inputs.end()) {
        throw VariableMismatch("source circuit has no input `" + x + "`");
      }
    }
    const auto grad = gradient_circuit(base, fam.partition.x);
    out.witness = substitute(grad.circuit, assignment);
    out.witness_size = out.witness->size();
    out.within_bound = out.witness_size < 5 * out.source_size;
  }
  const auto expanded = expand(*out.witness);
  out.witness_matches = expanded.size() == out.tuple.size();
  for (std::size_t j = 0; out.witness_matches && j < expanded.size(); ++j) {
    try {
      out.witness_matches = expanded[j].reembed(fam.z_vars) == out.tuple[j];
    } catch (const VariableMismatch&) {
      out.witness_matches = false;
    }
  }
  return out;
}

PermanentObjects permanent_objects(std::size_t n, std::size_t t, PermanentVariant variant) {
  const std::size_t t_min = variant == PermanentVariant::Case2XYZ ? 2 : 1;
  if (n > 5 || t < t_min || t + 2 > n) {
    throw ParamViolation("need " + std::to_string(t_min) + " <= t <= n-2 and n <= 5 (n = " + std::to_string(n) +
                         ", t = " + std::to_string(t) + ")");
  }
  PermanentObjects obj;
  obj.f = permanent_poly(n);
  obj.circuit = permanent_circuit(n);
  std::vector<std::string> x, y, z;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const auto name = matrix_var(n, i, j);
      if (variant == PermanentVariant::Case2XYZ && i == 1) {
        x.push_back(name);
      } else if (i <= t) {
        y.push_back(name);
      } else {
        z.push_back(name);
      }
    }
  }
  obj.family = variant == PermanentVariant::Case2XYZ ? decompose_case2(obj.f, x, y, z) : decompose_case1(obj.f, y, z);
  obj.family.source = obj.circuit;
  obj.partition = obj.family.partition;
  return obj;
}

}  // namespace circkit
