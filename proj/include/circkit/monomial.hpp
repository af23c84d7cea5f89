#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace circkit {

using VarIndex = std::uint32_t;

/// A power product over an ambient variable list. Only the nonzero exponents
/// are stored, sorted by variable index, so that monomials over thousands of
/// variables (edge-label variables of a universal graph) stay small.
class Monomial {
 public:
  using Factor = std::pair<VarIndex, std::uint32_t>;

  Monomial() = default;
  static Monomial from_dense(std::span<const std::uint32_t> exponents);
  static Monomial from_factors(std::vector<Factor> factors);
  static Monomial variable(VarIndex v, std::uint32_t e = 1);

  std::uint32_t degree() const { return degree_; }
  std::uint32_t exponent(VarIndex v) const;
  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  /// Largest variable index used plus one (0 for the unit monomial).
  VarIndex span_width() const { return factors_.empty() ? 0 : factors_.back().first + 1; }

  std::vector<std::uint32_t> to_dense(std::size_t nvars) const;
  /// Total degree restricted to the variables flagged in `mask`.
  std::uint32_t degree_in(const std::vector<bool>& mask) const;

  /// Exponent of v lowered by one; requires exponent(v) > 0.
  Monomial divided_by_variable(VarIndex v) const;
  /// Keeps the factors flagged in `mask`, reindexed through `remap`.
  Monomial restricted(const std::vector<bool>& mask, const std::vector<VarIndex>& remap) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order: higher total degree first, then lexicographic
/// with the first declared variable largest. `operator()` is "a comes before b".
struct GrlexBefore {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// -1, 0, +1 as a sorts before, equal to, or after b in grlex order.
int grlex_compare(const Monomial& a, const Monomial& b);

/// All monomials of total degree r in `nvars` variables, in grlex order.
std::vector<Monomial> monomial_basis(std::size_t nvars, std::uint32_t r);

}  // namespace circkit
