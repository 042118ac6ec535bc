#include "cyq/dgla.hpp"

#include <algorithm>
#include <functional>

#include "cyq/calculus.hpp"
#include "cyq/error.hpp"
#include "cyq/potential_io.hpp"

namespace cyq {

long BigradedPiece::index_of(const CyclicWord& w) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), w, CyclicWordOrder{});
  if (it == basis.end() || !(*it == w)) return -1;
  return it - basis.begin();
}

namespace {

bool h_letter(const Alphabet& a, Letter z, int n) {
  const auto k = a.at(z).kind;
  if (k == CoordKind::alpha || k == CoordKind::beta) return false;
  return !(n == 1 && a.is_ideal_generator(z));
}

}  // namespace

BigradedPiece bigraded_basis(const AlphabetPtr& alphabet, int n, int k) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "cyc.deg must be at least 1");
  const Alphabet& a = *alphabet;
  const int func = n - a.dimension() + 2;
  BigradedPiece piece;
  piece.n = n;
  piece.k = k;
  piece.in_g_can = k >= n + 2;
  int lo = 0, hi = 0;
  for (std::size_t z = 0; z < a.size(); ++z) {
    lo = std::min(lo, a.degree(static_cast<Letter>(z)));
    hi = std::max(hi, a.degree(static_cast<Letter>(z)));
  }
  Word w;
  w.reserve(static_cast<std::size_t>(k));
  // Depth-first over closed words whose first letter is their smallest
  // letter; only least rotations that survive the sign rule are kept.
  std::function<void(int)> grow = [&](int degree) {
    const int left = k - static_cast<int>(w.size());
    if (left == 0) {
      if (degree != func || !is_closed(a, w)) return;
      auto c = canonical_cyclic(a, w);
      if (!c.zero && c.word.letters == w) piece.basis.push_back(c.word);
      return;
    }
    if (func - degree < lo * left || func - degree > hi * left) return;
    const Letter first = w.empty() ? 0 : w.front();
    for (std::size_t z = static_cast<std::size_t>(first); z < a.size(); ++z) {
      const Letter l = static_cast<Letter>(z);
      if (!w.empty() && a.at(w.back()).target != a.at(l).source) continue;
      w.push_back(l);
      grow(degree + a.degree(l));
      w.pop_back();
    }
  };
  grow(0);
  std::sort(piece.basis.begin(), piece.basis.end(), CyclicWordOrder{});
  const bool h_degree = (n == 0 && k >= 2) || (n == 1 && k >= 3);
  for (const auto& word : piece.basis) {
    bool only_h = h_degree;
    bool only_alpha = true;
    for (Letter z : word.letters) {
      only_h = only_h && h_letter(a, z, n);
      only_alpha = only_alpha && a.at(z).kind == CoordKind::alpha;
    }
    piece.in_h.push_back(only_h);
    piece.alpha_only.push_back(only_alpha);
  }
  return piece;
}

DifferentialMatrix differential_matrix(const AlphabetPtr& alphabet, int n, int k) {
  DifferentialMatrix dm{bigraded_basis(alphabet, n, k), bigraded_basis(alphabet, n + 1, k + 1), {}};
  const CyclicSeries wcan = build_W_can(alphabet);
  dm.matrix.assign(dm.target.size(), std::vector<Rational>(dm.source.size()));
  for (std::size_t j = 0; j < dm.source.size(); ++j) {
    CyclicSeries b(alphabet);
    b.add_canonical(dm.source.basis[j], Rational(1));
    const CyclicSeries image = necklace_bracket(wcan, b);
    for (const auto& [w, c] : image.terms()) {
      const long i = dm.target.index_of(w);
      if (i < 0) {
        throw Error(ErrorCode::internal, "D left the expected bidegree at '" +
                                             print_word(*alphabet, w.letters, w.vertex) + "'");
      }
      dm.matrix[static_cast<std::size_t>(i)][j] = c;
    }
    if (!necklace_bracket(wcan, image).is_zero()) {
      throw Error(ErrorCode::internal, "D^2 != 0 on '" +
                                           print_word(*alphabet, dm.source.basis[j].letters) + "'");
    }
  }
  return dm;
}

namespace {

RationalMatrix block(const DifferentialMatrix& dm, bool rows_alpha, bool cols_alpha) {
  RationalMatrix out;
  for (std::size_t i = 0; i < dm.target.size(); ++i) {
    if (dm.target.alpha_only[i] != rows_alpha) continue;
    std::vector<Rational> row;
    for (std::size_t j = 0; j < dm.source.size(); ++j) {
      if (dm.source.alpha_only[j] == cols_alpha) row.push_back(dm.matrix[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

struct Ranks {
  std::size_t all = 0;
  std::size_t alpha = 0;
  std::size_t rest = 0;
  bool split = true;
};

Ranks ranks_of(const DifferentialMatrix& dm) {
  Ranks r;
  r.all = matrix_rank(dm.matrix);
  r.alpha = matrix_rank(block(dm, true, true));
  r.rest = matrix_rank(block(dm, false, false));
  r.split = is_zero_matrix(block(dm, true, false)) && is_zero_matrix(block(dm, false, true));
  return r;
}

// Coh.deg range of words of length k.
std::pair<int, int> coh_range(const Alphabet& a, int k) {
  int lo = 0, hi = 0;
  for (std::size_t z = 0; z < a.size(); ++z) {
    lo = std::min(lo, a.degree(static_cast<Letter>(z)));
    hi = std::max(hi, a.degree(static_cast<Letter>(z)));
  }
  const int shift = a.dimension() - 2;
  return {lo * k + shift, hi * k + shift};
}

}  // namespace

DglaReport cohomology_ranks(const AlphabetPtr& alphabet, int window) {
  if (window < 1) throw Error(ErrorCode::invalid_argument, "window must be at least 1");
  const Alphabet& a = *alphabet;
  const int d = a.dimension();
  DglaReport report;
  report.d = d;
  report.window = window;
  std::map<std::pair<int, int>, Ranks> outgoing;
  std::map<std::pair<int, int>, BigradedPiece> pieces;
  for (int k = 1; k <= window; ++k) {
    const auto [lo, hi] = coh_range(a, k);
    for (int n = lo; n <= hi; ++n) {
      DifferentialMatrix dm;
      try {
        dm = differential_matrix(alphabet, n, k);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::internal) throw;
        report.d_squared_zero = false;
        report.notes.push_back(e.what());
        continue;
      }
      outgoing[{n, k}] = ranks_of(dm);
      pieces.emplace(std::make_pair(n, k), std::move(dm.source));
    }
  }
  for (const auto& [key, piece] : pieces) {
    const auto [n, k] = key;
    if (piece.size() == 0) continue;
    DglaRow row;
    row.n = n;
    row.k = k;
    row.in_g_can = piece.in_g_can;
    row.dim_hat = piece.size();
    row.dim_can = piece.in_g_can ? piece.size() : 0;
    row.dim_g = piece.in_g_can ? 0 : piece.size();
    const Ranks out = outgoing[key];
    Ranks in;
    if (auto it = outgoing.find({n - 1, k - 1}); it != outgoing.end()) in = it->second;
    row.rank_out = out.all;
    row.rank_in = in.all;
    row.dim_h = row.dim_hat - out.all - in.all;
    row.dim_alpha = static_cast<std::size_t>(
        std::count(piece.alpha_only.begin(), piece.alpha_only.end(), true));
    row.h_alpha = row.dim_alpha - out.alpha - in.alpha;
    row.h_rest = (row.dim_hat - row.dim_alpha) - out.rest - in.rest;
    row.alpha_split = out.split && in.split && row.h_alpha + row.h_rest == row.dim_h;
    report.alpha_split = report.alpha_split && row.alpha_split;
    report.direct_sum = report.direct_sum && row.dim_hat == row.dim_can + row.dim_g;
    for (std::size_t i = 0; i < piece.size(); ++i) {
      if (!piece.alpha_only[i] && n > d - 2) {
        bool has_alpha = false;
        for (Letter z : piece.basis[i].letters) has_alpha = has_alpha || a.at(z).kind == CoordKind::alpha;
        if (!has_alpha) report.rest_degree_bound = false;
      }
    }
    if (piece.in_g_can) {
      report.h_g_can_by_n[n] += row.dim_h;
      if (n > d - 2 && row.dim_h != 0) {
        report.g_can_vanishing = false;
        report.notes.push_back("H^" + std::to_string(n) + "(g_can) has rank " +
                               std::to_string(row.dim_h) + " at cyc.deg " + std::to_string(k));
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

CyclicSeries h_bracket(const CyclicSeries& f, const CyclicSeries& g) {
  const Alphabet& a = f.alphabet();
  std::vector<bool> mask(a.size());
  for (std::size_t z = 0; z < a.size(); ++z) {
    const auto k = a.at(static_cast<Letter>(z)).kind;
    mask[z] = k == CoordKind::x || k == CoordKind::xi;
  }
  return partial_bracket(f, g, mask);
}

PsiReport psi_probe(const AlphabetPtr& alphabet, int window) {
  const DglaReport ranks = cohomology_ranks(alphabet, window);
  const CyclicSeries wcan = build_W_can(alphabet);
  PsiReport report;
  std::map<std::pair<int, int>, std::size_t> h_dims;
  std::vector<CyclicSeries> samples;
  for (int k = 1; k <= window; ++k) {
    for (int i = 0; i <= 1; ++i) {
      const BigradedPiece piece = bigraded_basis(alphabet, i, k);
      for (std::size_t b = 0; b < piece.size(); ++b) {
        if (!piece.in_h[b]) continue;
        ++h_dims[{i, k}];
        if (!piece.in_g_can) report.lands_in_g_can = false;
        CyclicSeries w(alphabet);
        w.add_canonical(piece.basis[b], Rational(1));
        const CyclicSeries dw = necklace_bracket(wcan, w);
        if (i == 1 && !dw.is_zero()) {
          report.closed_in_degree_one = false;
          report.notes.push_back("D does not vanish on '" +
                                 print_word(*alphabet, piece.basis[b].letters) + "'");
        }
        if (i == 0 && k + 1 <= window + 1) {
          const BigradedPiece next = bigraded_basis(alphabet, 1, k + 1);
          for (const auto& [word, c] : dw.terms()) {
            const long j = next.index_of(word);
            if (j >= 0 && next.in_h[static_cast<std::size_t>(j)]) report.h_differential_trivial = false;
          }
        }
        if (samples.size() < 24) samples.push_back(std::move(w));
      }
    }
  }
  for (std::size_t p = 0; p < samples.size(); ++p) {
    for (std::size_t q = p; q < samples.size(); ++q) {
      if (!(h_bracket(samples[p], samples[q]) == necklace_bracket(samples[p], samples[q]))) {
        report.bracket_compatible = false;
      }
    }
  }
  for (int i = 0; i <= 2; ++i) {
    for (int k = 1; k <= window; ++k) {
      PsiRow row{i, k, 0, 0};
      if (auto it = h_dims.find({i, k}); it != h_dims.end()) row.dim_h = it->second;
      for (const auto& r : ranks.rows) {
        if (r.n == i && r.k == k && r.in_g_can) row.dim_g_can = r.dim_h;
      }
      report.rows.push_back(row);
    }
  }
  report.notes.push_back("ranks compare finite cyc.deg windows only; they do not decide "
                         "statements about the full cohomology");
  return report;
}

}  // namespace cyq
