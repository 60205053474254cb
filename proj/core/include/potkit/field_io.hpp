#pragma once

#include <string>

#include "potkit/grid.hpp"

namespace potkit {

// AFIELD text format:
//   AFIELD 1
//   n=2 d=2 shape=16 real=1
//   xi=(0,1): (0,-0.5) (0,0)
// One line per stored frequency, signed tuples sorted lexicographically;
// omitted frequencies are zero. Values use 17 significant digits, so write ->
// parse round-trips bit-exactly.
TorusField parse_field_text(const std::string& text);
std::string write_field_text(const TorusField& field);

// Compact binary variant: "AFIELDB1\n", four little-endian int32 headers
// (n, d, shape, real), then the dense complex coefficient array in lattice
// order. Readers detect the variant from the magic.
TorusField read_field_file(const std::string& path);
void write_field_file(const TorusField& field, const std::string& path, bool binary = false);

}  // namespace potkit
