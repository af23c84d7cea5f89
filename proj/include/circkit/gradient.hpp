#pragma once

#include <string>
#include <vector>

#include "circkit/circuit.hpp"

namespace circkit {

struct GradientResult {
  /// One output per requested variable, in request order.
  Circuit circuit;
  std::size_t size = 0;
  std::size_t source_size = 0;
  /// Size < 5 * source_size. Reported rather than enforced: a circuit that
  /// outputs a bare input has size 0 and its gradient needs one edge.
  bool within_bound = false;
};

/// Reverse-mode (Baur-Strassen) gradient of a single-output circuit of fanin
/// at most 2 with respect to `wrt`, which must name inputs of `c`.
/// Throws MultipleOutputs, FaninTooLarge, UnknownVariable.
GradientResult gradient_circuit(const Circuit& c, const std::vector<std::string>& wrt);

}  // namespace circkit
