#pragma once

#include <string>

#include "potkit/diffop.hpp"

namespace potkit {

// Text operator files:
//   # comment
//   n=2
//   order=1
//   dim_from=2
//   dim_to=1
//   term alpha=(1,0): [[1, 0]]
//   term alpha=(0,1): [[0, 1]]
// Rationals are written in lowest terms with a positive denominator; terms are
// sorted graded-lex, so parse -> write -> parse is the identity.
DiffOp parse_operator_text(const std::string& text);
std::string write_operator_text(const DiffOp& op);

DiffOp read_operator_file(const std::string& path);
void write_operator_file(const DiffOp& op, const std::string& path);

}  // namespace potkit
