#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "circkit/circuit.hpp"
#include "circkit/sparse_poly.hpp"

namespace circkit {

struct Metrics {
  std::size_t size = 0;   // edges
  std::size_t depth = 0;  // longest directed path, in edges
  std::size_t fanin = 0;  // largest in-degree
};

Metrics metrics(const Circuit& c);

/// Syntactic degree of every node: one 0, input 1, sum max over children,
/// product sum over children (empty sum 0, empty product 0). Saturates at
/// UINT64_MAX instead of wrapping.
std::vector<std::uint64_t> syntactic_degree(const Circuit& c);

/// Value of every output at `point`, which must assign every input variable.
std::vector<Scalar> evaluate(const Circuit& c, const std::map<std::string, Scalar>& point);

inline constexpr std::size_t kDefaultTermBudget = 200000;

/// Output polynomials by gate-by-gate symbolic expansion over the circuit's
/// own input variables (or over `vars`, which must contain all of them).
/// Throws BudgetExceeded once any gate polynomial exceeds `max_terms` terms.
std::vector<SparsePoly> expand(const Circuit& c, std::size_t max_terms = kDefaultTermBudget);
std::vector<SparsePoly> expand(const Circuit& c, const VarList& vars, std::size_t max_terms = kDefaultTermBudget);
/// The polynomial of every node, not just the outputs.
std::vector<SparsePoly> expand_nodes(const Circuit& c, const VarList& vars, std::size_t max_terms = kDefaultTermBudget);

/// Replaces the assigned inputs by one-gates, scaling their outgoing labels
/// by the assigned values. Zero values delete edges and propagate.
Circuit substitute(const Circuit& c, const std::map<std::string, Scalar>& assignment);

/// Drops every non-input node with no path to an output.
Circuit remove_dead(const Circuit& c);

}  // namespace circkit
