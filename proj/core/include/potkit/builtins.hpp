#pragma once

#include <string>
#include <vector>

#include "potkit/diffop.hpp"

namespace potkit {

// Standard operators with fixed sign/index conventions (see README table):
//   grad_scalar  scalar -> n-vector,       (grad u)_i = d_i u
//   grad_vector  n-vector -> n*n matrix,   row-major (i,j) entry d_j u_i
//   div          n-vector -> scalar,       sum_i d_i u_i
//   curl3d       3-vector -> 3-vector,     (curl u)_i = eps_{ijk} d_j u_k   (n = 3 only)
//   curl2d_rowwise 2x2 matrix (row-major) -> 2-vector, row i |-> d_1 F_{i2} - d_2 F_{i1}  (n = 2 only)
//   symgrad      n-vector -> n(n+1)/2 upper-triangle (i<=j lex), (d_i u_j + d_j u_i)/2
//   laplacian    scalar -> scalar,         sum_i d_i^2
//   zero         scalar -> scalar, order 1, identically zero
DiffOp builtin(const std::string& name, int n);

const std::vector<std::string>& builtin_names();

}  // namespace potkit
