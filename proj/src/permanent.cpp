#include "circkit/permanent.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "circkit/errors.hpp"

namespace circkit {

std::string matrix_var(std::size_t n, std::size_t i, std::size_t j) {
  if (n <= 9) return "x" + std::to_string(i) + std::to_string(j);
  return "x" + std::to_string(i) + "_" + std::to_string(j);
}

std::vector<std::string> matrix_vars(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) names.push_back(matrix_var(n, i, j));
  }
  return names;
}

Circuit permanent_circuit(std::size_t n, Field field) {
  if (n == 0 || n > 20) throw DomainViolation("permanent size must be in [1, 20]");
  CircuitBuilder b(field);
  std::vector<NodeId> x;
  for (const auto& name : matrix_vars(n)) x.push_back(b.input(name));

  // minor[mask] = permanent of rows n-|mask|+1 .. n restricted to the columns in mask
  std::map<std::uint32_t, NodeId> minor;
  auto build = [&](auto&& self, std::uint32_t mask) -> NodeId {
    if (auto it = minor.find(mask); it != minor.end()) return it->second;
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    const std::size_t row = n - k;
    NodeId result;
    if (k == 1) {
      result = x[row * n + static_cast<std::size_t>(std::countr_zero(mask))];
    } else {
      std::vector<NodeId> parts;
      for (std::size_t col = 0; col < n; ++col) {
        if ((mask >> col & 1U) == 0) continue;
        const NodeId rest = self(self, mask & ~(1U << col));
        parts.push_back(b.product(std::vector<NodeId>{x[row * n + col], rest}));
      }
      result = parts.front();
      for (std::size_t i = 1; i < parts.size(); ++i) {
        result = b.sum({{b.one_scalar(), result}, {b.one_scalar(), parts[i]}});
      }
    }
    minor.emplace(mask, result);
    return result;
  };
  const NodeId root = build(build, (1U << n) - 1U);
  b.output(root);
  return b.build();
}

SparsePoly permanent_poly(std::size_t n, Field field) {
  const auto vars = make_vars(matrix_vars(n));
  SparsePoly p(vars, field);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::uint32_t> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + perm[i]] = 1;
    p.add_term(Monomial::from_dense(e), Scalar(mpq_class(1), field));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

}  // namespace circkit
