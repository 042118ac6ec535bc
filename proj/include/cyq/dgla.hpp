#pragma once

#include <map>
#include <string>
#include <vector>

#include "cyq/linalg.hpp"
#include "cyq/words.hpp"

namespace cyq {

constexpr int kDefaultWindow = 6;

/// Canonical nonzero cyclic words of coh.deg n and cyc.deg k.
struct BigradedPiece {
  int n = 0;
  int k = 0;
  std::vector<CyclicWord> basis;
  // The whole bidegree lies in g_can when k >= n + 2.
  bool in_g_can = false;
  std::vector<bool> in_h;
  std::vector<bool> alpha_only;

  std::size_t size() const { return basis.size(); }
  // Index of a canonical word, or -1.
  long index_of(const CyclicWord& w) const;
};

BigradedPiece bigraded_basis(const AlphabetPtr& alphabet, int n, int k);

/// Matrix of D = {W_can, .} from piece (n, k) to piece (n+1, k+1).
struct DifferentialMatrix {
  BigradedPiece source;
  BigradedPiece target;
  RationalMatrix matrix;  // target.size() rows, source.size() columns
};

// Verifies D^2 = 0 on every source basis vector (throws internal otherwise).
DifferentialMatrix differential_matrix(const AlphabetPtr& alphabet, int n, int k);

struct DglaRow {
  int n = 0;
  int k = 0;
  std::size_t dim_hat = 0;
  std::size_t dim_can = 0;
  std::size_t dim_g = 0;
  std::size_t rank_out = 0;
  std::size_t rank_in = 0;
  std::size_t dim_h = 0;
  std::size_t dim_alpha = 0;
  std::size_t h_alpha = 0;
  std::size_t h_rest = 0;
  bool in_g_can = false;
  bool alpha_split = true;
};

struct DglaReport {
  int d = 0;
  int window = 0;
  std::vector<DglaRow> rows;
  bool d_squared_zero = true;
  bool direct_sum = true;
  bool alpha_split = true;
  // Every word without alpha has coh.deg <= d-2.
  bool rest_degree_bound = true;
  // H^n(g_can) vanishes in the window for every n > d-2.
  bool g_can_vanishing = true;
  std::map<int, std::size_t> h_g_can_by_n;
  std::vector<std::string> notes;
};

// Window: all bidegrees with 1 <= k <= window.
DglaReport cohomology_ranks(const AlphabetPtr& alphabet, int window = kDefaultWindow);

struct PsiRow {
  int i = 0;
  int k = 0;
  std::size_t dim_h = 0;       // H^i of h (trivial differential)
  std::size_t dim_g_can = 0;   // H^i of g_can at this cyc.deg
};

struct PsiReport {
  bool lands_in_g_can = true;
  bool closed_in_degree_one = true;
  bool bracket_compatible = true;
  bool h_differential_trivial = true;
  // Always set: finite windows cannot decide the full statements.
  bool window_caveat = true;
  std::vector<PsiRow> rows;
  std::vector<std::string> notes;
};

PsiReport psi_probe(const AlphabetPtr& alphabet, int window = kDefaultWindow);

// Bracket using only the x/xi dual pairs.
CyclicSeries h_bracket(const CyclicSeries& f, const CyclicSeries& g);

}  // namespace cyq
