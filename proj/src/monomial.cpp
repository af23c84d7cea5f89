#include "circkit/monomial.hpp"

#include <algorithm>

namespace circkit {

Monomial Monomial::from_dense(std::span<const std::uint32_t> exponents) {
  Monomial m;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] != 0) {
      m.factors_.emplace_back(static_cast<VarIndex>(i), exponents[i]);
      m.degree_ += exponents[i];
    }
  }
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
    m.degree_ += e;
  }
  return m;
}

Monomial Monomial::variable(VarIndex v, std::uint32_t e) {
  Monomial m;
  if (e != 0) {
    m.factors_.emplace_back(v, e);
    m.degree_ = e;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarIndex v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v, 0});
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::vector<std::uint32_t> Monomial::to_dense(std::size_t nvars) const {
  std::vector<std::uint32_t> out(nvars, 0);
  for (const auto& [v, e] : factors_) out.at(v) = e;
  return out;
}

std::uint32_t Monomial::degree_in(const std::vector<bool>& mask) const {
  std::uint32_t d = 0;
  for (const auto& [v, e] : factors_) {
    if (v < mask.size() && mask[v]) d += e;
  }
  return d;
}

Monomial Monomial::divided_by_variable(VarIndex v) const {
  Monomial m = *this;
  auto it = std::lower_bound(m.factors_.begin(), m.factors_.end(), Factor{v, 0});
  if (it == m.factors_.end() || it->first != v) return m;
  if (--it->second == 0) m.factors_.erase(it);
  --m.degree_;
  return m;
}

Monomial Monomial::restricted(const std::vector<bool>& mask, const std::vector<VarIndex>& remap) const {
  std::vector<Factor> kept;
  for (const auto& [v, e] : factors_) {
    if (mask[v]) kept.emplace_back(remap[v], e);
  }
  return from_factors(std::move(kept));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      m.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      m.factors_.push_back(*j++);
    } else {
      m.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

std::string Monomial::to_string(const std::vector<std::string>& names) const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += '*';
    out += v < names.size() ? names[v] : "v" + std::to_string(v);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first != fb[j].first) {
      // the monomial holding the smaller (earlier) variable is larger
      return fa[i].first < fb[j].first ? -1 : 1;
    }
    if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

bool GrlexBefore::operator()(const Monomial& a, const Monomial& b) const {
  return grlex_compare(a, b) < 0;
}

namespace {

void enumerate(std::size_t var, std::size_t nvars, std::uint32_t remaining,
               std::vector<std::uint32_t>& exps, std::vector<Monomial>& out) {
  if (var + 1 == nvars) {
    exps[var] = remaining;
    out.push_back(Monomial::from_dense(exps));
    exps[var] = 0;
    return;
  }
  for (std::uint32_t e = remaining + 1; e-- > 0;) {
    exps[var] = e;
    enumerate(var + 1, nvars, remaining - e, exps, out);
  }
  exps[var] = 0;
}

}  // namespace

std::vector<Monomial> monomial_basis(std::size_t nvars, std::uint32_t r) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (r == 0) out.emplace_back();
    return out;
  }
  std::vector<std::uint32_t> exps(nvars, 0);
  enumerate(0, nvars, r, exps, out);
  return out;
}

}  // namespace circkit
