#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "circkit/sparse_poly.hpp"

namespace circkit {

// Line-oriented polynomial text format:
//
//   field Q            (or `field F7`)
//   vars x1 x2 x3
//   3/2 2 0 1          coefficient followed by one exponent per variable
//
// `#` starts a comment. Terms are written in grlex order, so serialization is
// canonical and round-trips bit-exactly.
SparsePoly parse_poly(std::string_view text);
std::string serialize_poly(const SparsePoly& p);

// The same header followed by `component` lines, each opening the term list
// of one coordinate of a polynomial mapping.
std::vector<SparsePoly> parse_poly_map(std::string_view text);
std::string serialize_poly_map(const std::vector<SparsePoly>& components);

}  // namespace circkit
