#pragma once

#include <random>
#include <vector>

#include "circkit/circuit.hpp"

namespace circkit::testing {

/// {-3, -2, -1, 1/2, 1, 2, 3}
const std::vector<Scalar>& label_grid();

struct HomogeneousSpec {
  std::size_t n = 3;         // variables x1..xn
  unsigned r = 3;            // output degree
  std::size_t m = 1;         // outputs
  std::size_t max_size = 30; // edges
  /// First output is (A + c) * B - c * B with deg A + deg B = r: homogeneous
  /// only after cancellation.
  bool correction = false;
};

/// Random circuit whose outputs are homogeneous of degree r.
Circuit random_homogeneous(std::mt19937_64& rng, const HomogeneousSpec& spec);

/// Random single-output circuit over x1..xn, sums and products of fan-in
/// 2 or 3, possibly using a constant gate. Syntactic degree stays <= 8.
Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t max_size);

/// A corpus spread over n in 1..4, r in 1..5, m in 1..2, size <= 30; one
/// circuit in four uses the correction pattern.
std::vector<std::pair<Circuit, unsigned>> homogeneous_corpus(std::size_t count, std::uint64_t seed);

}  // namespace circkit::testing
