#pragma once

#include <gmpxx.h>

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cyq/quiver.hpp"

namespace cyq {

using Rational = mpq_class;
using Letter = int;
using Word = std::vector<Letter>;

// Precision of a series: coefficients of words of length <= precision are
// exact. kExact marks polynomial (untruncated) data.
constexpr int kExact = std::numeric_limits<int>::max();

enum class CoordKind { alpha = 0, x = 1, xi = 2, beta = 3 };

struct Coordinate {
  std::string id;
  CoordKind kind = CoordKind::x;
  int source = 0;
  int target = 0;
  int degree = 0;
  Letter dual = -1;
  // Arrow index in the double quiver, -1 for alpha/beta.
  int arrow = -1;
};

/// Graded coordinates of a double quiver: one x/xi letter per arrow plus
/// alpha_i (degree 1) and beta_i (degree 1-d) at each vertex. Letters are
/// numbered in the global order alpha < x < xi < beta, then vertex, degree,
/// and arrow index, so comparing letter indices compares coordinates.
class Alphabet {
 public:
  static std::shared_ptr<const Alphabet> from_double_quiver(const GradedQuiver& qbar);

  int dimension() const { return quiver_.d; }
  std::size_t size() const { return coords_.size(); }
  const Coordinate& at(Letter z) const { return coords_.at(static_cast<std::size_t>(z)); }
  int degree(Letter z) const { return coords_[static_cast<std::size_t>(z)].degree; }
  std::optional<Letter> find(std::string_view id) const;
  Letter alpha(int vertex) const { return alpha_.at(static_cast<std::size_t>(vertex)); }
  Letter beta(int vertex) const { return beta_.at(static_cast<std::size_t>(vertex)); }
  const GradedQuiver& quiver() const { return quiver_; }
  std::size_t vertex_count() const { return quiver_.vertices.size(); }

  bool is_primal(Letter z) const;
  // Generators of the ideal killed by the gauge projection: alpha, beta and
  // the xi letters of degree 2-d.
  bool is_ideal_generator(Letter z) const;
  // Sign attached to the dual pair (u, u-dual) in the necklace bracket.
  int bracket_sign(Letter u) const;

  bool operator==(const Alphabet& other) const;

 private:
  GradedQuiver quiver_;
  std::vector<Coordinate> coords_;
  std::vector<Letter> alpha_;
  std::vector<Letter> beta_;
  std::unordered_map<std::string, Letter> by_id_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline int koszul_sign(long a, long b) { return ((a * b) % 2 != 0) ? -1 : 1; }

int word_degree(const Alphabet& alphabet, std::span<const Letter> word);
bool is_composable(const Alphabet& alphabet, std::span<const Letter> word);
bool is_closed(const Alphabet& alphabet, std::span<const Letter> word);
// Sign of moving the first k letters of a word to its end.
int rotation_sign(const Alphabet& alphabet, std::span<const Letter> word, std::size_t k);

struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// A closed word modulo graded rotation, stored by its lexicographically
/// least rotation. The empty word is the idempotent of `vertex`.
struct CyclicWord {
  Word letters;
  int vertex = -1;

  bool operator==(const CyclicWord&) const = default;
};

struct CyclicWordOrder {
  bool operator()(const CyclicWord& a, const CyclicWord& b) const {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    if (a.letters != b.letters) return a.letters < b.letters;
    return a.vertex < b.vertex;
  }
};

struct CanonicalForm {
  CyclicWord word;
  // word == sign * representative; zero when some rotation fixes the word
  // with Koszul sign -1.
  int sign = 1;
  bool zero = false;
};

CanonicalForm canonical_cyclic(const Alphabet& alphabet, std::span<const Letter> word,
                               int empty_vertex = -1);

struct Grading {
  int func_degree = 0;
  int cyc_degree = 0;
  int coh_degree = 0;
};

Grading grading(const Alphabet& alphabet, std::span<const Letter> word);

class PathSeries;

/// Finitely supported rational combination of cyclic words.
class CyclicSeries {
 public:
  using Terms = std::map<CyclicWord, Rational, CyclicWordOrder>;

  explicit CyclicSeries(AlphabetPtr alphabet, int precision = kExact);

  const Alphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  const Terms& terms() const { return terms_; }
  int precision() const { return precision_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Drops every term longer than `precision` and lowers the precision.
  void truncate(int precision);
  // Adds c times the class of a closed word; returns false when the word is
  // killed by graded cyclic symmetry.
  bool add_word(std::span<const Letter> closed_word, const Rational& c, int empty_vertex = -1);
  void add_canonical(const CyclicWord& w, const Rational& c);
  Rational coefficient(const CyclicWord& w) const;

  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous() const;
  // Minimal length of a supported word; kExact for the zero series.
  int min_length() const;
  int max_length() const;

  CyclicSeries& operator+=(const CyclicSeries& other);
  CyclicSeries& operator-=(const CyclicSeries& other);
  CyclicSeries& operator*=(const Rational& c);
  friend CyclicSeries operator+(CyclicSeries a, const CyclicSeries& b) { return a += b; }
  friend CyclicSeries operator-(CyclicSeries a, const CyclicSeries& b) { return a -= b; }
  friend CyclicSeries operator*(CyclicSeries a, const Rational& c) { return a *= c; }
  friend CyclicSeries operator*(const Rational& c, CyclicSeries a) { return a *= c; }
  CyclicSeries operator-() const;

  // Equal support and coefficients; precision is not compared.
  bool operator==(const CyclicSeries& other) const;

 private:
  void check_compatible(const CyclicSeries& other) const;

  AlphabetPtr alphabet_;
  Terms terms_;
  int precision_;
};

/// Finitely supported rational combination of words with common endpoints.
class PathSeries {
 public:
  using Terms = std::map<Word, Rational, ShortLex>;

  PathSeries(AlphabetPtr alphabet, int source, int target, int precision = kExact);
  static PathSeries letter(AlphabetPtr alphabet, Letter z);

  const Alphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  int source() const { return source_; }
  int target() const { return target_; }
  const Terms& terms() const { return terms_; }
  int precision() const { return precision_; }
  bool is_zero() const { return terms_.empty(); }

  void truncate(int precision);
  void add_word(const Word& w, const Rational& c);
  Rational coefficient(const Word& w) const;
  std::optional<int> homogeneous_degree() const;
  int min_length() const;

  PathSeries& operator+=(const PathSeries& other);
  PathSeries& operator-=(const PathSeries& other);
  PathSeries& operator*=(const Rational& c);
  friend PathSeries operator+(PathSeries a, const PathSeries& b) { return a += b; }
  friend PathSeries operator-(PathSeries a, const PathSeries& b) { return a -= b; }
  friend PathSeries operator*(PathSeries a, const Rational& c) { return a *= c; }
  friend PathSeries operator*(const Rational& c, PathSeries a) { return a *= c; }
  bool operator==(const PathSeries& other) const;

  // Concatenation, keeping words of length <= max_length.
  PathSeries times(const PathSeries& other, int max_length = kExact) const;
  // Cyclic class of a closed path series.
  CyclicSeries close() const;

 private:
  AlphabetPtr alphabet_;
  int source_;
  int target_;
  Terms terms_;
  int precision_;
};

// Adds two precisions without overflowing kExact.
int precision_add(int p, int q);

CyclicSeries restrict_series(const CyclicSeries& series, const std::vector<Letter>& kill);
bool is_minimal(const CyclicSeries& series);

}  // namespace cyq
