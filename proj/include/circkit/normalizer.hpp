#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "circkit/circuit.hpp"
#include "circkit/circuit_ops.hpp"

namespace circkit {

struct DegreeCount {
  std::size_t n_plus = 0;   // sum gates
  std::size_t n_times = 0;  // product gates and input gates
  friend bool operator==(const DegreeCount&, const DegreeCount&) = default;
};

/// Gate counts grouped by syntactic degree. One-gates are tallied apart and
/// do not enter N.
struct GateCensus {
  std::map<std::uint64_t, DegreeCount> by_degree;
  std::size_t total = 0;  // N
  std::size_t one_gates = 0;

  std::size_t n_plus(std::uint64_t j) const;
  std::size_t n_times(std::uint64_t j) const;
};

GateCensus gate_census(const Circuit& c);

/// The normal-form bounds for a circuit derived from a source of size s
/// computing degree-r outputs.
struct CensusBounds {
  std::size_t s = 0;
  unsigned r = 0;
  std::uint64_t n_times_max = 0;  // 8s
  std::uint64_t n_max = 0;        // 24sr
  std::uint64_t low_plus_max = 0; // 16s(r-1), strict, for the sums below degree r
  bool n_times_ok = false;
  bool n_ok = false;
  bool low_plus_ok = false;
  /// The stronger per-degree claim N_j^+ <= 8s; recorded, not enforced.
  bool per_degree_plus_ok = false;
  std::vector<std::uint64_t> per_degree_plus_failures;
  /// n_times_ok && n_ok.
  bool ok = false;
};

CensusBounds census_bounds(const GateCensus& census, std::size_t s, unsigned r);

/// Splices gates of in-degree 1 (outputs excepted) and replaces gates of
/// in-degree above 2 by chains of binary gates. Size at most doubles.
Circuit binarize(const Circuit& c);

/// Splits every node into its homogeneous parts of degree 0..r, dropping
/// higher degrees and syntactically zero parts. Requires fanin <= 2
/// (NotBinarized otherwise). Outputs become their degree-r parts.
Circuit homogenize(const Circuit& c, unsigned r);

struct NormalizeOptions {
  bool trace = false;
  std::size_t max_terms = kDefaultTermBudget;
};

struct NormalizeResult {
  Circuit circuit;
  GateCensus census;
  CensusBounds bounds;
  std::size_t source_size = 0;
  std::size_t binarized_size = 0;
  unsigned r = 0;
  /// (step name, circuit after that step) when tracing.
  std::vector<std::pair<std::string, Circuit>> trace;
};

/// Transforms a circuit for homogeneous degree-r outputs into normal
/// homogeneous form. Throws DegreeZeroOutput (r == 0 or a nonzero constant
/// output) and NotHomogeneousOutputs (message carries the degree found).
NormalizeResult normalize(const Circuit& c, unsigned r, const NormalizeOptions& options = {});

struct Violation {
  /// 1..6 for the normal-form conditions, 7 for homogeneity.
  int condition = 0;
  std::string node;
  std::string detail;
};

struct NormalFormReport {
  bool ok = true;
  std::vector<Violation> violations;
  /// False when per-node expansion ran out of budget and only the syntactic
  /// homogeneity test was applied.
  bool semantic_check_done = false;
};

NormalFormReport check_normal_form(const Circuit& c, bool semantic = true,
                                   std::size_t max_terms = kDefaultTermBudget);

}  // namespace circkit
