#pragma once

#include <string>
#include <string_view>

#include "circkit/circuit.hpp"

namespace circkit {

// Circuit text format, one declaration per line, `#` comments:
//
//   field Q
//   input x1
//   one c
//   g = + 1:x1 -2/3:x2
//   h = * 1:g 1:g
//   output h
//
// Every gate must be declared before it is referenced, so a parsed file is
// already in topological order. Serialization writes nodes in the canonical
// order, which makes parse(serialize(c)) == c.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit& c);

}  // namespace circkit
