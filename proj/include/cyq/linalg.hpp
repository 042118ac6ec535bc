#pragma once

#include <gmpxx.h>

#include <vector>

namespace cyq {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

// Exact rank by fraction-free (Bareiss) elimination after clearing
// denominators row by row.
std::size_t matrix_rank(const RationalMatrix& m);
bool is_zero_matrix(const RationalMatrix& m);
// a (r x s) times b (s x t).
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace cyq
