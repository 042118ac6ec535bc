#include "cyq/words.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "cyq/error.hpp"

namespace cyq {

std::shared_ptr<const Alphabet> Alphabet::from_double_quiver(const GradedQuiver& qbar) {
  if (qbar.half) {
    throw Error(ErrorCode::invalid_argument,
                "coordinates are defined on a double quiver");
  }
  auto report = validate_quiver(qbar);
  if (!report.ok()) throw Error(ErrorCode::invalid_quiver, report.summary());

  auto out = std::make_shared<Alphabet>();
  out->quiver_ = qbar;
  const int d = qbar.d;
  const int nv = static_cast<int>(qbar.vertices.size());

  std::vector<Coordinate> coords;
  for (int v = 0; v < nv; ++v) {
    coords.push_back({"alpha_" + qbar.vertices[v], CoordKind::alpha, v, v, 1, -1, -1});
    coords.push_back({"beta_" + qbar.vertices[v], CoordKind::beta, v, v, 1 - d, -1, -1});
  }
  for (std::size_t a = 0; a < qbar.arrows.size(); ++a) {
    const Arrow& ar = qbar.arrows[a];
    coords.push_back({ar.id, ar.primal ? CoordKind::x : CoordKind::xi, ar.source,
                      ar.target, ar.degree, -1, static_cast<int>(a)});
  }
  std::sort(coords.begin(), coords.end(), [](const Coordinate& a, const Coordinate& b) {
    return std::make_tuple(static_cast<int>(a.kind), a.source, a.target, a.degree, a.arrow) <
           std::make_tuple(static_cast<int>(b.kind), b.source, b.target, b.degree, b.arrow);
  });

  std::vector<Letter> by_arrow(qbar.arrows.size(), -1);
  out->alpha_.assign(nv, -1);
  out->beta_.assign(nv, -1);
  for (std::size_t z = 0; z < coords.size(); ++z) {
    const Letter l = static_cast<Letter>(z);
    out->by_id_[coords[z].id] = l;
    if (coords[z].kind == CoordKind::alpha) out->alpha_[coords[z].source] = l;
    if (coords[z].kind == CoordKind::beta) out->beta_[coords[z].source] = l;
    if (coords[z].arrow >= 0) by_arrow[coords[z].arrow] = l;
  }
  if (out->by_id_.size() != coords.size()) {
    throw Error(ErrorCode::invalid_quiver, "coordinate ids collide with alpha_/beta_ names");
  }
  for (auto& c : coords) {
    if (c.kind == CoordKind::alpha) c.dual = out->beta_[c.source];
    else if (c.kind == CoordKind::beta) c.dual = out->alpha_[c.source];
    else c.dual = by_arrow[qbar.arrows[c.arrow].dual];
  }
  out->coords_ = std::move(coords);
  return out;
}

std::optional<Letter> Alphabet::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::is_primal(Letter z) const {
  const auto k = at(z).kind;
  return k == CoordKind::alpha || k == CoordKind::x;
}

bool Alphabet::is_ideal_generator(Letter z) const {
  const auto& c = at(z);
  if (c.kind == CoordKind::alpha || c.kind == CoordKind::beta) return true;
  return c.kind == CoordKind::xi && c.degree == 2 - dimension();
}

int Alphabet::bracket_sign(Letter u) const {
  const int deg = degree(u);
  if (is_primal(u)) return koszul_sign(dimension(), deg);
  return (deg + 1) % 2 != 0 ? -1 : 1;
}

bool Alphabet::operator==(const Alphabet& other) const {
  if (coords_.size() != other.coords_.size() || quiver_.d != other.quiver_.d ||
      quiver_.vertices != other.quiver_.vertices) {
    return false;
  }
  for (std::size_t z = 0; z < coords_.size(); ++z) {
    const auto& a = coords_[z];
    const auto& b = other.coords_[z];
    if (a.id != b.id || a.kind != b.kind || a.source != b.source || a.target != b.target ||
        a.degree != b.degree || a.dual != b.dual) {
      return false;
    }
  }
  return true;
}

int word_degree(const Alphabet& alphabet, std::span<const Letter> word) {
  int s = 0;
  for (Letter z : word) s += alphabet.degree(z);
  return s;
}

bool is_composable(const Alphabet& alphabet, std::span<const Letter> word) {
  for (std::size_t k = 0; k + 1 < word.size(); ++k) {
    if (alphabet.at(word[k]).target != alphabet.at(word[k + 1]).source) return false;
  }
  return true;
}

bool is_closed(const Alphabet& alphabet, std::span<const Letter> word) {
  if (!is_composable(alphabet, word)) return false;
  return word.empty() || alphabet.at(word.back()).target == alphabet.at(word.front()).source;
}

int rotation_sign(const Alphabet& alphabet, std::span<const Letter> word, std::size_t k) {
  const int head = word_degree(alphabet, word.first(k));
  const int tail = word_degree(alphabet, word.subspan(k));
  return koszul_sign(head, tail);
}

CanonicalForm canonical_cyclic(const Alphabet& alphabet, std::span<const Letter> word,
                               int empty_vertex) {
  CanonicalForm out;
  if (word.empty()) {
    if (empty_vertex < 0 || empty_vertex >= static_cast<int>(alphabet.vertex_count())) {
      throw Error(ErrorCode::invalid_argument, "empty cyclic word needs a vertex");
    }
    out.word.vertex = empty_vertex;
    return out;
  }
  if (!is_closed(alphabet, word)) {
    throw Error(ErrorCode::invalid_argument, "cyclic word must be a closed composable path");
  }
  const std::size_t n = word.size();
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const Letter a = word[(k + i) % n];
      const Letter b = word[(best + i) % n];
      if (a != b) {
        if (a < b) best = k;
        break;
      }
    }
  }
  std::size_t period = n;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = word[i] == word[(i + p) % n];
    if (same) {
      period = p;
      break;
    }
  }
  if (period < n && rotation_sign(alphabet, word, period) < 0) out.zero = true;
  out.sign = rotation_sign(alphabet, word, best);
  out.word.letters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.word.letters.push_back(word[(best + i) % n]);
  return out;
}

Grading grading(const Alphabet& alphabet, std::span<const Letter> word) {
  Grading g;
  g.func_degree = word_degree(alphabet, word);
  g.cyc_degree = static_cast<int>(word.size());
  g.coh_degree = g.func_degree + alphabet.dimension() - 2;
  return g;
}

int precision_add(int p, int q) {
  if (p == kExact || q == kExact) return kExact;
  return p + q;
}

CyclicSeries::CyclicSeries(AlphabetPtr alphabet, int precision)
    : alphabet_(std::move(alphabet)), precision_(precision) {
  if (!alphabet_) throw Error(ErrorCode::invalid_argument, "series needs an alphabet");
}

void CyclicSeries::truncate(int precision) {
  precision_ = std::min(precision_, precision);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (static_cast<int>(it->first.letters.size()) > precision_) it = terms_.erase(it);
    else ++it;
  }
}

bool CyclicSeries::add_word(std::span<const Letter> closed_word, const Rational& c,
                            int empty_vertex) {
  auto canon = canonical_cyclic(*alphabet_, closed_word, empty_vertex);
  if (canon.zero) return false;
  if (canon.sign < 0) add_canonical(canon.word, -c);
  else add_canonical(canon.word, c);
  return true;
}

void CyclicSeries::add_canonical(const CyclicWord& w, const Rational& c) {
  if (sgn(c) == 0 || static_cast<int>(w.letters.size()) > precision_) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational CyclicSeries::coefficient(const CyclicWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> CyclicSeries::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [w, c] : terms_) {
    const int e = word_degree(*alphabet_, w.letters);
    if (deg && *deg != e) return std::nullopt;
    deg = e;
  }
  return deg;
}

bool CyclicSeries::is_homogeneous() const {
  return terms_.empty() || homogeneous_degree().has_value();
}

int CyclicSeries::min_length() const {
  if (terms_.empty()) return kExact;
  return static_cast<int>(terms_.begin()->first.letters.size());
}

int CyclicSeries::max_length() const {
  if (terms_.empty()) return 0;
  return static_cast<int>(terms_.rbegin()->first.letters.size());
}

void CyclicSeries::check_compatible(const CyclicSeries& other) const {
  if (alphabet_ != other.alphabet_ && !(*alphabet_ == *other.alphabet_)) {
    throw Error(ErrorCode::invalid_argument, "series over different coordinate spaces");
  }
}

CyclicSeries& CyclicSeries::operator+=(const CyclicSeries& other) {
  check_compatible(other);
  precision_ = std::min(precision_, other.precision_);
  truncate(precision_);
  for (const auto& [w, c] : other.terms_) add_canonical(w, c);
  return *this;
}

CyclicSeries& CyclicSeries::operator-=(const CyclicSeries& other) {
  check_compatible(other);
  precision_ = std::min(precision_, other.precision_);
  truncate(precision_);
  for (const auto& [w, c] : other.terms_) add_canonical(w, -c);
  return *this;
}

CyclicSeries& CyclicSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

CyclicSeries CyclicSeries::operator-() const {
  CyclicSeries out(*this);
  out *= Rational(-1);
  return out;
}

bool CyclicSeries::operator==(const CyclicSeries& other) const {
  return terms_ == other.terms_;
}

PathSeries::PathSeries(AlphabetPtr alphabet, int source, int target, int precision)
    : alphabet_(std::move(alphabet)), source_(source), target_(target), precision_(precision) {
  if (!alphabet_) throw Error(ErrorCode::invalid_argument, "series needs an alphabet");
}

PathSeries PathSeries::letter(AlphabetPtr alphabet, Letter z) {
  const auto& c = alphabet->at(z);
  PathSeries out(alphabet, c.source, c.target);
  out.add_word({z}, Rational(1));
  return out;
}

void PathSeries::truncate(int precision) {
  precision_ = std::min(precision_, precision);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (static_cast<int>(it->first.size()) > precision_) it = terms_.erase(it);
    else ++it;
  }
}

void PathSeries::add_word(const Word& w, const Rational& c) {
  if (sgn(c) == 0 || static_cast<int>(w.size()) > precision_) return;
  if (w.empty()) {
    if (source_ != target_) {
      throw Error(ErrorCode::invalid_argument, "idempotent between distinct vertices");
    }
  } else if (!is_composable(*alphabet_, w) || alphabet_->at(w.front()).source != source_ ||
             alphabet_->at(w.back()).target != target_) {
    throw Error(ErrorCode::invalid_argument, "word does not match the path endpoints");
  }
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational PathSeries::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> PathSeries::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [w, c] : terms_) {
    const int e = word_degree(*alphabet_, w);
    if (deg && *deg != e) return std::nullopt;
    deg = e;
  }
  return deg;
}

int PathSeries::min_length() const {
  if (terms_.empty()) return kExact;
  return static_cast<int>(terms_.begin()->first.size());
}

PathSeries& PathSeries::operator+=(const PathSeries& other) {
  if (source_ != other.source_ || target_ != other.target_) {
    throw Error(ErrorCode::invalid_argument, "adding paths with different endpoints");
  }
  truncate(std::min(precision_, other.precision_));
  for (const auto& [w, c] : other.terms_) add_word(w, c);
  return *this;
}

PathSeries& PathSeries::operator-=(const PathSeries& other) {
  if (source_ != other.source_ || target_ != other.target_) {
    throw Error(ErrorCode::invalid_argument, "adding paths with different endpoints");
  }
  truncate(std::min(precision_, other.precision_));
  for (const auto& [w, c] : other.terms_) add_word(w, -c);
  return *this;
}

PathSeries& PathSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

bool PathSeries::operator==(const PathSeries& other) const {
  return source_ == other.source_ && target_ == other.target_ && terms_ == other.terms_;
}

PathSeries PathSeries::times(const PathSeries& other, int max_length) const {
  if (target_ != other.source_) {
    throw Error(ErrorCode::invalid_argument, "paths are not composable");
  }
  // A product is exact up to the smaller of p_a + min_b and p_b + min_a.
  const int p = std::min({precision_add(precision_, other.min_length()),
                          precision_add(other.precision_, min_length()), max_length});
  PathSeries out(alphabet_, source_, other.target_, p);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      if (static_cast<int>(a.size() + b.size()) > p) continue;
      Word w = a;
      w.insert(w.end(), b.begin(), b.end());
      out.add_word(w, ca * cb);
    }
  }
  return out;
}

CyclicSeries PathSeries::close() const {
  if (source_ != target_) {
    throw Error(ErrorCode::invalid_argument, "only closed paths have a cyclic class");
  }
  CyclicSeries out(alphabet_, precision_);
  for (const auto& [w, c] : terms_) out.add_word(w, c, source_);
  return out;
}

CyclicSeries restrict_series(const CyclicSeries& series, const std::vector<Letter>& kill) {
  std::set<Letter> dead(kill.begin(), kill.end());
  CyclicSeries out(series.alphabet_ptr(), series.precision());
  for (const auto& [w, c] : series.terms()) {
    const bool hit = std::any_of(w.letters.begin(), w.letters.end(),
                                 [&](Letter z) { return dead.count(z) != 0; });
    if (!hit) out.add_canonical(w, c);
  }
  return out;
}

bool is_minimal(const CyclicSeries& series) {
  return series.is_zero() || series.min_length() >= 3;
}

}  // namespace cyq
