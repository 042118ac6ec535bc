#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "cyq/calculus.hpp"
#include "cyq/potential_io.hpp"
#include "cyq/quiver.hpp"
#include "cyq/words.hpp"

namespace cyq::testing {

struct LoopSpec {
  std::string id;
  int degree;
};

// One vertex "1" with the given primal loops, doubled.
inline GradedQuiver one_vertex(int d, const std::vector<LoopSpec>& loops) {
  GradedQuiver q{d, {"1"}, {}, true};
  for (const auto& l : loops) q.arrows.push_back({l.id, 0, 0, l.degree, -1, true});
  return double_quiver(q);
}

inline AlphabetPtr one_vertex_alphabet(int d, const std::vector<LoopSpec>& loops) {
  return Alphabet::from_double_quiver(one_vertex(d, loops));
}

// A loop in every allowed degree of Q.
inline AlphabetPtr full_loops(int d) {
  std::vector<LoopSpec> loops;
  for (int r = 0; r >= min_half_degree(d); --r) loops.push_back({"x" + std::to_string(-r), r});
  return one_vertex_alphabet(d, loops);
}

inline CyclicSeries parse(const AlphabetPtr& a, const std::string& text) {
  return parse_potential(text, a).series;
}

inline bool all_zero(const std::vector<PathSeries>& v) {
  for (const auto& p : v) {
    if (!p.is_zero()) return false;
  }
  return true;
}

// Random closed word of the given length over `letters`; empty if none found.
inline Word random_closed_word(std::mt19937& rng, const Alphabet& a,
                               const std::vector<Letter>& letters, int length) {
  if (letters.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Word w{letters[pick(rng)]};
    bool stuck = false;
    while (static_cast<int>(w.size()) < length && !stuck) {
      std::vector<Letter> next;
      for (Letter z : letters) {
        if (a.at(z).source == a.at(w.back()).target) next.push_back(z);
      }
      if (next.empty()) {
        stuck = true;
      } else {
        std::uniform_int_distribution<std::size_t> pn(0, next.size() - 1);
        w.push_back(next[pn(rng)]);
      }
    }
    if (!stuck && is_closed(a, w)) return w;
  }
  return {};
}

// Random homogeneous series of function degree `degree` with terms of length
// in [min_len, max_len] over `letters`. May come out zero.
inline CyclicSeries random_series(std::mt19937& rng, const AlphabetPtr& a,
                                  const std::vector<Letter>& letters, int degree, int min_len,
                                  int max_len, int terms) {
  CyclicSeries out(a);
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> coeff(-3, 3);
  int added = 0;
  for (int attempt = 0; attempt < 4000 && added < terms; ++attempt) {
    Word w = random_closed_word(rng, *a, letters, len(rng));
    if (w.empty() || word_degree(*a, w) != degree) continue;
    int c = coeff(rng);
    if (c == 0) c = 1;
    if (out.add_word(w, Rational(c))) ++added;
  }
  return out;
}

inline std::vector<Letter> all_letters(const Alphabet& a) {
  std::vector<Letter> out;
  for (std::size_t z = 0; z < a.size(); ++z) out.push_back(static_cast<Letter>(z));
  return out;
}

// Letters allowed in W0: x and xi of degree != 2-d.
inline std::vector<Letter> w0_letters(const Alphabet& a) {
  std::vector<Letter> out;
  for (std::size_t z = 0; z < a.size(); ++z) {
    if (!a.is_ideal_generator(static_cast<Letter>(z))) out.push_back(static_cast<Letter>(z));
  }
  return out;
}

// Random path from `source` to `target` of the given length; empty if none found.
inline Word random_path(std::mt19937& rng, const Alphabet& a, const std::vector<Letter>& letters,
                        int source, int target, int length) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Word w;
    int at = source;
    while (static_cast<int>(w.size()) < length) {
      std::vector<Letter> next;
      for (Letter z : letters) {
        if (a.at(z).source == at) next.push_back(z);
      }
      if (next.empty()) break;
      w.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
      at = a.at(w.back()).target;
    }
    if (static_cast<int>(w.size()) == length && at == target) return w;
  }
  return {};
}

// Random element of the gauge group: a diagonal scaling plus nonlinear terms
// of length 2..max_len, where images of ideal generators stay in the ideal.
inline Automorphism random_gauge(std::mt19937& rng, const AlphabetPtr& a, int max_len) {
  const auto letters = all_letters(*a);
  std::vector<PathSeries> images;
  std::uniform_int_distribution<int> len(2, max_len);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (Letter z : letters) {
    const auto& c = a->at(z);
    PathSeries img(a, c.source, c.target);
    int scale = coeff(rng);
    if (scale == 0) scale = 1;
    img.add_word({z}, Rational(scale));
    for (int attempt = 0; attempt < 60; ++attempt) {
      Word w = random_path(rng, *a, letters, c.source, c.target, len(rng));
      if (w.empty() || word_degree(*a, w) != c.degree) continue;
      const bool hits = std::any_of(w.begin(), w.end(),
                                    [&](Letter y) { return a->is_ideal_generator(y); });
      if (a->is_ideal_generator(z) && !hits) continue;
      img.add_word(w, Rational(coeff(rng)));
    }
    images.push_back(std::move(img));
  }
  return Automorphism(a, std::move(images));
}

// Random valid Ext table with up to `max_vertices` vertices and entries <= max_dim.
inline ExtTable random_ext_table(std::mt19937& rng, int d, int max_vertices, int max_dim) {
  std::uniform_int_distribution<int> nv(1, max_vertices);
  std::uniform_int_distribution<int> dim(0, max_dim);
  const int n = nv(rng);
  ExtTable t;
  t.d = d;
  for (int i = 0; i < n; ++i) t.vertices.push_back(std::to_string(i + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t.set(i, j, std::vector<int>(d + 1, 0));
  }
  for (int i = 0; i < n; ++i) {
    t.dims[{i, i}][0] = 1;
    t.dims[{i, i}][d] = 1;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 1; k < d; ++k) {
        // Fill each CY-symmetric pair once.
        if (std::make_pair(i, k) > std::make_pair(j, d - k)) continue;
        if (i == j && 2 * k == d) {
          t.dims[{i, i}][k] = 2 * std::uniform_int_distribution<int>(0, 1)(rng);
          continue;
        }
        const int v = dim(rng);
        t.dims[{i, j}][k] = v;
        t.dims[{j, i}][d - k] = v;
      }
    }
  }
  return t;
}

}  // namespace cyq::testing
