#pragma once

#include <string>
#include <vector>

#include "circkit/circuit.hpp"
#include "circkit/sparse_poly.hpp"

namespace circkit {

/// Variable name of entry (i, j), 1-based: `x12` for n <= 9, `x1_12` beyond.
std::string matrix_var(std::size_t n, std::size_t i, std::size_t j);
/// x11 .. xnn in row-major order.
std::vector<std::string> matrix_vars(std::size_t n);

/// Per_n as a fanin-2 circuit, by first-row expansion with the minors on the
/// remaining rows shared across column subsets.
Circuit permanent_circuit(std::size_t n, Field field = Field::rational());

/// Per_n over matrix_vars(n), summing over all permutations.
SparsePoly permanent_poly(std::size_t n, Field field = Field::rational());

}  // namespace circkit
