#include "cyq/linalg.hpp"

#include <utility>

namespace cyq {

std::size_t matrix_rank(const RationalMatrix& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::vector<std::vector<mpz_class>> a;
  a.reserve(m.size());
  for (const auto& row : m) {
    mpz_class lcm = 1;
    bool nonzero = false;
    for (const auto& q : row) {
      if (sgn(q) == 0) continue;
      nonzero = true;
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    if (!nonzero) continue;
    std::vector<mpz_class> r(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      r[j] = row[j].get_num() * (lcm / row[j].get_den());
    }
    a.push_back(std::move(r));
  }
  const std::size_t rows = a.size();
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

bool is_zero_matrix(const RationalMatrix& m) {
  for (const auto& row : m) {
    for (const auto& q : row) {
      if (sgn(q) != 0) return false;
    }
  }
  return true;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  RationalMatrix out(a.size(), std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(b[k][j]) != 0) out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

}  // namespace cyq
