#include "circkit/sparse_poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "circkit/errors.hpp"

namespace circkit {

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

SparsePoly::SparsePoly(VarList vars, Field field) : vars_(std::move(vars)), field_(field) {}

SparsePoly SparsePoly::constant(VarList vars, const Scalar& c) {
  SparsePoly p(std::move(vars), c.field());
  p.add_term(Monomial(), c);
  return p;
}

SparsePoly SparsePoly::variable(VarList vars, const std::string& name, Field field) {
  SparsePoly p(std::move(vars), field);
  p.add_term(Monomial::variable(p.index_of(name)), Scalar(mpq_class(1), field));
  return p;
}

int SparsePoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.degree());
}

bool SparsePoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Scalar SparsePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(mpq_class(0), field_) : it->second;
}

VarIndex SparsePoly::index_of(const std::string& name) const {
  auto it = std::find(vars_->begin(), vars_->end(), name);
  if (it == vars_->end()) throw UnknownVariable("unknown variable `" + name + "`");
  return static_cast<VarIndex>(it - vars_->begin());
}

void SparsePoly::add_term(const Monomial& m, const Scalar& c) {
  if (c.field() != field_) throw FieldMismatch("coefficient field differs from polynomial field");
  if (c.is_zero()) return;
  if (m.span_width() > vars_->size()) throw VariableMismatch("monomial uses a variable outside the list");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SparsePoly::check_compatible(const SparsePoly& o) const {
  if (field_ != o.field_) throw FieldMismatch("polynomials over different fields");
  if (vars_ != o.vars_ && *vars_ != *o.vars_) throw VariableMismatch("polynomials over different variable lists");
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const Scalar& c) {
  if (c.field() != field_) throw FieldMismatch("scalar field differs from polynomial field");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.check_compatible(b);
  SparsePoly out(a.vars_, a.field_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result = constant(vars_, Scalar(mpq_class(1), field_));
  SparsePoly base = *this;
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

SparsePoly SparsePoly::reembed(VarList target) const {
  std::vector<VarIndex> remap(vars_->size());
  std::vector<bool> used(vars_->size(), false);
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) used[f.first] = true;
  }
  std::vector<bool> keep(vars_->size(), true);
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
    if (it == target->end()) {
      if (used[i]) throw VariableMismatch("variable `" + (*vars_)[i] + "` missing from target list");
      keep[i] = false;
      continue;
    }
    remap[i] = static_cast<VarIndex>(it - target->begin());
  }
  SparsePoly out(std::move(target), field_);
  for (const auto& [m, c] : terms_) out.add_term(m.restricted(keep, remap), c);
  return out;
}

SparsePoly SparsePoly::specialize(const std::map<std::string, Scalar>& assignment, VarList remaining) const {
  const std::size_t n = vars_->size();
  std::vector<const Scalar*> value(n, nullptr);
  for (const auto& [name, v] : assignment) {
    const VarIndex i = index_of(name);
    if (v.field() != field_) throw FieldMismatch("assigned value over a different field");
    value[i] = &v;
  }
  std::vector<VarIndex> remap(n, 0);
  std::vector<bool> keep(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (value[i] != nullptr) continue;
    auto it = std::find(remaining->begin(), remaining->end(), (*vars_)[i]);
    if (it != remaining->end()) {
      keep[i] = true;
      remap[i] = static_cast<VarIndex>(it - remaining->begin());
    }
  }
  SparsePoly out(std::move(remaining), field_);
  for (const auto& [m, c] : terms_) {
    Scalar coef = c;
    for (const auto& [v, e] : m.factors()) {
      if (value[v] != nullptr) {
        coef *= value[v]->pow(e);
      } else if (!keep[v]) {
        throw VariableMismatch("variable `" + (*vars_)[v] + "` neither assigned nor kept");
      }
    }
    if (!coef.is_zero()) out.add_term(m.restricted(keep, remap), coef);
  }
  return out;
}

Scalar SparsePoly::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != vars_->size()) throw DimensionMismatch("evaluation point has wrong length");
  Scalar sum(mpq_class(0), field_);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (const auto& [v, e] : m.factors()) t *= point[v].pow(e);
    sum += t;
  }
  return sum;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = field_.is_rational() && sgn(c.value()) < 0;
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    first = false;
    Scalar mag = negative ? -c : c;
    if (m.is_one()) {
      os << mag;
    } else {
      if (!mag.is_one()) os << mag << "*";
      os << m.to_string(*vars_);
    }
  }
  return os.str();
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  if (a.field_ != b.field_) return false;
  if (a.vars_ != b.vars_ && *a.vars_ != *b.vars_) return false;
  return a.terms_ == b.terms_;
}

SparsePoly add(const SparsePoly& p, const SparsePoly& q) { return p + q; }
SparsePoly mul(const SparsePoly& p, const SparsePoly& q) { return p * q; }

SparsePoly partial_derivative(const SparsePoly& p, const std::string& var) {
  const VarIndex v = p.index_of(var);
  SparsePoly out(p.vars(), p.field());
  for (const auto& [m, c] : p.terms()) {
    const std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    out.add_term(m.divided_by_variable(v), c * Scalar(mpq_class(e), p.field()));
  }
  return out;
}

SparsePoly homogeneous_component(const SparsePoly& p, int d) {
  SparsePoly out(p.vars(), p.field());
  if (d < 0) return out;
  for (const auto& [m, c] : p.terms()) {
    if (static_cast<int>(m.degree()) == d) out.add_term(m, c);
  }
  return out;
}

SubsetDegree degree_in_mask(const SparsePoly& p, const std::vector<bool>& mask) {
  SubsetDegree result;
  result.homogeneous = true;
  for (const auto& [m, c] : p.terms()) {
    const int d = static_cast<int>(m.degree_in(mask));
    if (!result.degree) {
      result.degree = d;
    } else if (*result.degree != d) {
      return SubsetDegree{false, std::nullopt};
    }
  }
  return result;
}

SubsetDegree degree_in_subset(const SparsePoly& p, const std::vector<std::string>& subset) {
  std::vector<bool> mask(p.nvars(), false);
  for (const auto& name : subset) mask[p.index_of(name)] = true;
  return degree_in_mask(p, mask);
}

namespace {

std::string mask_key(const std::vector<bool>& mask) {
  std::string key(mask.size(), '0');
  for (std::size_t i = 0; i < mask.size(); ++i) key[i] = mask[i] ? '1' : '0';
  return key;
}

}  // namespace

std::vector<PartialHomogeneity> detect_partial_homogeneity(const SparsePoly& p, std::size_t max_states) {
  const std::size_t n = p.nvars();
  std::vector<std::vector<std::uint32_t>> exps;
  std::vector<bool> used(n, false);
  for (const auto& [m, c] : p.terms()) {
    exps.push_back(m.to_dense(n));
    for (const auto& f : m.factors()) used[f.first] = true;
  }
  const auto used_count = static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
  std::vector<PartialHomogeneity> found;
  if (p.degree() <= 0) return found;

  std::set<std::string> seen;
  std::set<std::string> recorded;
  std::vector<std::vector<bool>> stack;
  for (std::size_t v = n; v-- > 0;) {
    if (!used[v]) continue;
    std::vector<bool> seed(n, false);
    seed[v] = true;
    stack.push_back(seed);
  }
  while (!stack.empty() && seen.size() < max_states) {
    std::vector<bool> z = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(mask_key(z)).second) continue;

    std::vector<std::uint32_t> zdeg(exps.size(), 0);
    std::uint32_t dmax = 0;
    for (std::size_t t = 0; t < exps.size(); ++t) {
      for (std::size_t v = 0; v < n; ++v) {
        if (z[v]) zdeg[t] += exps[t][v];
      }
      dmax = std::max(dmax, zdeg[t]);
    }
    const bool homogeneous = std::all_of(zdeg.begin(), zdeg.end(), [&](auto d) { return d == dmax; });
    std::size_t zsize = 0;
    for (std::size_t v = 0; v < n; ++v) zsize += (z[v] && used[v]) ? 1 : 0;
    if (homogeneous) {
      // proper: some used variable stays outside Z
      if (zsize < used_count && recorded.insert(mask_key(z)).second) {
        PartialHomogeneity ph;
        for (std::size_t v = 0; v < n; ++v) {
          if (z[v]) ph.z.push_back(p.var_names()[v]);
        }
        ph.degree = static_cast<int>(dmax);
        found.push_back(std::move(ph));
      }
      continue;
    }
    // Variables that can lift deficit terms without touching top terms.
    std::vector<bool> in_top(n, false), in_deficit(n, false);
    for (std::size_t t = 0; t < exps.size(); ++t) {
      for (std::size_t v = 0; v < n; ++v) {
        if (exps[t][v] == 0 || z[v]) continue;
        (zdeg[t] == dmax ? in_top : in_deficit)[v] = true;
      }
    }
    std::vector<std::size_t> candidates;
    for (std::size_t v = 0; v < n; ++v) {
      if (in_deficit[v] && !in_top[v]) candidates.push_back(v);
    }
    if (candidates.empty()) {
      for (std::size_t v = 0; v < n; ++v) {
        if (in_deficit[v]) candidates.push_back(v);
      }
    }
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      std::vector<bool> next = z;
      next[*it] = true;
      if (seen.count(mask_key(next)) == 0) stack.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end(), [&](const PartialHomogeneity& a, const PartialHomogeneity& b) {
    std::vector<VarIndex> ia, ib;
    for (const auto& s : a.z) ia.push_back(p.index_of(s));
    for (const auto& s : b.z) ib.push_back(p.index_of(s));
    return ia < ib;
  });
  return found;
}

std::vector<Monomial> monomial_basis(const std::vector<std::string>& vars, std::uint32_t r) {
  return monomial_basis(vars.size(), r);
}

mpz_class binomial(const mpz_class& n, unsigned long k) {
  if (n < 0) return 0;
  mpz_class out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class dim_pol_hom(unsigned long n, unsigned long r) { return binomial(n + r - 1, r); }

}  // namespace circkit
