#include "cyq/calculus.hpp"

#include <algorithm>
#include <optional>

#include "cyq/error.hpp"
#include "cyq/linalg.hpp"
#include "cyq/potential_io.hpp"

namespace cyq {

namespace {

int lower_precision(int p, int by) { return p == kExact ? kExact : p - by; }

// Letters after position k followed by the letters before it.
Word complement(const Word& w, std::size_t k) {
  Word out;
  out.reserve(w.size() - 1);
  out.insert(out.end(), w.begin() + static_cast<long>(k) + 1, w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(k));
  return out;
}

void require_degree(const CyclicSeries& w, int degree, const char* what) {
  for (const auto& [word, c] : w.terms()) {
    const int e = word_degree(w.alphabet(), word.letters);
    if (e != degree) {
      throw Error(ErrorCode::parse, std::string(what) + ": term '" +
                                        print_word(w.alphabet(), word.letters, word.vertex) +
                                        "' has degree " + std::to_string(e) + ", expected " +
                                        std::to_string(degree));
    }
  }
}

}  // namespace

PathSeries cyclic_derivative(const CyclicSeries& p, Letter z) {
  const Alphabet& a = p.alphabet();
  const auto& cz = a.at(z);
  PathSeries out(p.alphabet_ptr(), cz.target, cz.source, lower_precision(p.precision(), 1));
  for (const auto& [w, c] : p.terms()) {
    const Word& letters = w.letters;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (letters[k] != z) continue;
      const int s = rotation_sign(a, letters, k);
      out.add_word(complement(letters, k), s < 0 ? Rational(-c) : c);
    }
  }
  return out;
}

CyclicSeries partial_bracket(const CyclicSeries& f, const CyclicSeries& g,
                             const std::vector<bool>& pairs, int max_length) {
  if (f.alphabet_ptr() != g.alphabet_ptr() && !(f.alphabet() == g.alphabet())) {
    throw Error(ErrorCode::invalid_argument, "bracket of series over different coordinate spaces");
  }
  const Alphabet& a = f.alphabet();
  int p = std::min(precision_add(f.precision(), g.min_length()),
                   precision_add(g.precision(), f.min_length()));
  p = std::min(lower_precision(p, 2), max_length);
  CyclicSeries out(f.alphabet_ptr(), p);
  std::vector<std::optional<PathSeries>> dg(a.size());
  for (const auto& [w, c] : f.terms()) {
    const Word& letters = w.letters;
    const int deg_w = word_degree(a, letters);
    for (std::size_t k = 0; k < letters.size(); ++k) {
      const Letter u = letters[k];
      const Letter v = a.at(u).dual;
      if (!pairs.empty() && !pairs[static_cast<std::size_t>(u)]) continue;
      if (!dg[v]) dg[v] = cyclic_derivative(g, v);
      if (dg[v]->is_zero()) continue;
      const int s = a.bracket_sign(u) * koszul_sign(a.degree(u), deg_w) *
                    rotation_sign(a, letters, k);
      const Word rest = complement(letters, k);
      const int vertex = a.at(u).target;
      for (const auto& [tail, ct] : dg[v]->terms()) {
        if (static_cast<int>(rest.size() + tail.size()) > p) continue;
        Word joined = rest;
        joined.insert(joined.end(), tail.begin(), tail.end());
        Rational coeff = c * ct;
        if (s < 0) coeff = -coeff;
        out.add_word(joined, coeff, vertex);
      }
    }
  }
  return out;
}

CyclicSeries necklace_bracket(const CyclicSeries& f, const CyclicSeries& g, int max_length) {
  return partial_bracket(f, g, {}, max_length);
}

CyclicSeries build_W_can(const AlphabetPtr& alphabet) {
  const Alphabet& a = *alphabet;
  const int d = a.dimension();
  CyclicSeries w(alphabet);
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    const Letter al = a.alpha(static_cast<int>(v));
    w.add_word(Word{al, al, a.beta(static_cast<int>(v))}, Rational(1));
  }
  for (std::size_t z = 0; z < a.size(); ++z) {
    const auto& c = a.at(static_cast<Letter>(z));
    if (c.kind != CoordKind::x) continue;
    const Letter x = static_cast<Letter>(z);
    const Letter xd = c.dual;
    if (xd < 0) throw Error(ErrorCode::invalid_quiver, "arrow '" + c.id + "' has no dual");
    // The second term carries -1 except for odd-degree arrows at even d,
    // where the Koszul sign of the rotation already flips it.
    const int t = -koszul_sign(c.degree, d + 1);
    w.add_word(Word{a.alpha(c.source), x, xd}, Rational(1));
    w.add_word(Word{a.alpha(c.target), xd, x}, Rational(t));
  }
  return w;
}

std::vector<Letter> ideal_generators(const Alphabet& alphabet) {
  std::vector<Letter> out;
  for (std::size_t z = 0; z < alphabet.size(); ++z) {
    if (alphabet.is_ideal_generator(static_cast<Letter>(z))) out.push_back(static_cast<Letter>(z));
  }
  return out;
}

std::vector<AdmissibilityIssue> admissibility_issues(const CyclicSeries& w0) {
  const Alphabet& a = w0.alphabet();
  const int d = a.dimension();
  std::vector<AdmissibilityIssue> out;
  for (const auto& [w, c] : w0.terms()) {
    const std::string text = print_word(a, w.letters, w.vertex);
    for (Letter z : w.letters) {
      const auto& cz = a.at(z);
      if (cz.kind == CoordKind::alpha || cz.kind == CoordKind::beta) {
        out.push_back({text, "contains the canonical coordinate " + cz.id});
        break;
      }
      if (a.is_ideal_generator(z)) {
        out.push_back({text, "degree-impossible variable " + cz.id + " (degree 2-d)"});
        break;
      }
    }
    if (w.letters.size() < 3) out.push_back({text, "not minimal (length < 3)"});
    const int e = word_degree(a, w.letters);
    if (e != 3 - d) {
      out.push_back({text, "degree " + std::to_string(e) + " differs from 3-d = " +
                               std::to_string(3 - d)});
    }
  }
  return out;
}

CyclicSeries lift_potential(const CyclicSeries& w0) {
  auto issues = admissibility_issues(w0);
  if (!issues.empty()) {
    std::string msg = "inadmissible W0:";
    for (const auto& i : issues) msg += " [" + i.word + ": " + i.reason + "]";
    throw Error(ErrorCode::inadmissible_potential, msg);
  }
  CyclicSeries w = build_W_can(w0.alphabet_ptr());
  w += w0;
  return w;
}

MasterReport check_master(const CyclicSeries& w) {
  require_degree(w, 3 - w.alphabet().dimension(), "master equation");
  MasterReport r{necklace_bracket(w, w), false, kExact};
  r.precision = r.residual.precision();
  r.pass = r.residual.is_zero();
  return r;
}

MasterReport maurer_cartan_check(const CyclicSeries& gamma) {
  const int d = gamma.alphabet().dimension();
  for (const auto& [w, c] : gamma.terms()) {
    if (w.letters.size() < 3 || word_degree(gamma.alphabet(), w.letters) != 3 - d) {
      throw Error(ErrorCode::inadmissible_potential,
                  "term '" + print_word(gamma.alphabet(), w.letters, w.vertex) +
                      "' is outside coh.deg 1, cyc.deg >= 3");
    }
  }
  const CyclicSeries wcan = build_W_can(gamma.alphabet_ptr());
  CyclicSeries residual = necklace_bracket(wcan, gamma);
  residual += necklace_bracket(gamma, gamma) * Rational(1, 2);
  const CyclicSeries full = wcan + gamma;
  const CyclicSeries half_master = necklace_bracket(full, full) * Rational(1, 2);
  if (!(half_master == residual)) {
    throw Error(ErrorCode::internal,
                "Maurer-Cartan residual disagrees with half the master residual");
  }
  return {residual, residual.is_zero(), residual.precision()};
}

Derivation hamiltonian_derivation(const CyclicSeries& h) {
  const Alphabet& a = h.alphabet();
  if (!h.is_homogeneous()) {
    throw Error(ErrorCode::invalid_argument, "Hamiltonian must be homogeneous");
  }
  const int hd = h.homogeneous_degree().value_or(0);
  Derivation x{h.alphabet_ptr(), {}, hd + a.dimension() - 2};
  x.images.reserve(a.size());
  for (std::size_t z = 0; z < a.size(); ++z) {
    const Letter v = a.at(static_cast<Letter>(z)).dual;
    PathSeries img = cyclic_derivative(h, v);
    img *= Rational(a.bracket_sign(v) * koszul_sign(a.degree(v), hd));
    x.images.push_back(std::move(img));
  }
  return x;
}

PathSeries apply_derivation(const Derivation& x, const PathSeries& p, int max_length) {
  const Alphabet& a = p.alphabet();
  PathSeries out(p.alphabet_ptr(), p.source(), p.target(), std::min(p.precision(), max_length));
  for (const auto& [w, c] : p.terms()) {
    int before = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const int s = koszul_sign(x.degree, before);
      for (const auto& [v, cv] : x.images[static_cast<std::size_t>(w[k])].terms()) {
        if (static_cast<int>(w.size() + v.size()) - 1 > out.precision()) continue;
        Word nw(w.begin(), w.begin() + static_cast<long>(k));
        nw.insert(nw.end(), v.begin(), v.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(k) + 1, w.end());
        Rational coeff = c * cv;
        if (s < 0) coeff = -coeff;
        out.add_word(nw, coeff);
      }
      before += a.degree(w[k]);
    }
  }
  return out;
}

CyclicSeries apply_derivation(const Derivation& x, const CyclicSeries& p, int max_length) {
  const Alphabet& a = p.alphabet();
  CyclicSeries out(p.alphabet_ptr(), std::min(p.precision(), max_length));
  for (const auto& [w, c] : p.terms()) {
    if (w.letters.empty()) continue;
    const int vertex = a.at(w.letters.front()).source;
    int before = 0;
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
      const Letter z = w.letters[k];
      const int s = koszul_sign(x.degree, before);
      for (const auto& [v, cv] : x.images[static_cast<std::size_t>(z)].terms()) {
        if (static_cast<int>(w.letters.size() + v.size()) - 1 > out.precision()) continue;
        Word nw(w.letters.begin(), w.letters.begin() + static_cast<long>(k));
        nw.insert(nw.end(), v.begin(), v.end());
        nw.insert(nw.end(), w.letters.begin() + static_cast<long>(k) + 1, w.letters.end());
        Rational coeff = c * cv;
        if (s < 0) coeff = -coeff;
        out.add_word(nw, coeff, vertex);
      }
      before += a.degree(z);
    }
  }
  return out;
}

void require_flow_generator(const CyclicSeries& h) {
  const int d = h.alphabet().dimension();
  for (const auto& [w, c] : h.terms()) {
    const std::string text = print_word(h.alphabet(), w.letters, w.vertex);
    if (w.letters.size() < 3) {
      throw Error(ErrorCode::inadmissible_transform,
                  "flow generator term '" + text + "' has cyc.deg < 3");
    }
    if (word_degree(h.alphabet(), w.letters) + d - 2 != 0) {
      throw Error(ErrorCode::inadmissible_transform,
                  "flow generator term '" + text + "' is not in coh.deg 0");
    }
  }
}

CyclicSeries hamiltonian_flow(const CyclicSeries& h, const CyclicSeries& p, int truncation) {
  require_flow_generator(h);
  if (truncation < 1) throw Error(ErrorCode::invalid_argument, "truncation must be positive");
  CyclicSeries out(p);
  out.truncate(truncation);
  CyclicSeries term(out);
  for (int k = 1; !term.is_zero(); ++k) {
    term = necklace_bracket(h, term, truncation);
    term *= Rational(1, k);
    out += term;
  }
  out.truncate(truncation);
  return out;
}

Automorphism Automorphism::identity(AlphabetPtr alphabet) {
  std::vector<PathSeries> images;
  for (std::size_t z = 0; z < alphabet->size(); ++z) {
    images.push_back(PathSeries::letter(alphabet, static_cast<Letter>(z)));
  }
  return Automorphism(alphabet, std::move(images));
}

Automorphism::Automorphism(AlphabetPtr alphabet, std::vector<PathSeries> images, int precision)
    : alphabet_(std::move(alphabet)), images_(std::move(images)), precision_(precision) {
  if (images_.size() != alphabet_->size()) {
    throw Error(ErrorCode::invalid_argument, "automorphism needs one image per coordinate");
  }
}

std::vector<std::string> Automorphism::problems() const {
  const Alphabet& a = *alphabet_;
  std::vector<std::string> out;
  const std::size_t n = a.size();
  RationalMatrix linear(n, std::vector<Rational>(n));
  for (std::size_t z = 0; z < n; ++z) {
    const auto& c = a.at(static_cast<Letter>(z));
    const PathSeries& img = images_[z];
    if (img.source() != c.source || img.target() != c.target) {
      out.push_back("image of " + c.id + " does not preserve the vertices");
      continue;
    }
    for (const auto& [w, coeff] : img.terms()) {
      if (w.empty()) {
        out.push_back("image of " + c.id + " has a constant term");
        continue;
      }
      if (word_degree(a, w) != c.degree) {
        out.push_back("image of " + c.id + " contains '" + print_word(a, w) +
                      "' of the wrong degree");
      }
      if (w.size() == 1) linear[z][static_cast<std::size_t>(w[0])] = coeff;
    }
  }
  if (out.empty() && matrix_rank(linear) != n) out.push_back("linear part is not invertible");
  return out;
}

void Automorphism::require_admissible() const {
  auto p = problems();
  if (p.empty()) return;
  std::string msg = "inadmissible transform:";
  for (const auto& s : p) msg += " [" + s + "]";
  throw Error(ErrorCode::inadmissible_transform, msg);
}

PathSeries Automorphism::apply(const PathSeries& p, int max_length) const {
  const int limit = std::min({max_length, precision_, p.precision()});
  PathSeries out(p.alphabet_ptr(), p.source(), p.target(), limit);
  for (const auto& [w, c] : p.terms()) {
    PathSeries acc(alphabet_, p.source(), p.source(), limit);
    acc.add_word({}, c);
    for (Letter z : w) acc = acc.times(images_[static_cast<std::size_t>(z)], limit);
    out += acc;
  }
  out.truncate(limit);
  return out;
}

CyclicSeries Automorphism::apply(const CyclicSeries& p, int max_length) const {
  const int limit = std::min({max_length, precision_, p.precision()});
  CyclicSeries out(p.alphabet_ptr(), limit);
  for (const auto& [w, c] : p.terms()) {
    const int v = w.letters.empty() ? w.vertex : alphabet_->at(w.letters.front()).source;
    PathSeries acc(alphabet_, v, v, limit);
    acc.add_word({}, c);
    for (Letter z : w.letters) acc = acc.times(images_[static_cast<std::size_t>(z)], limit);
    for (const auto& [word, coeff] : acc.terms()) out.add_word(word, coeff, v);
  }
  return out;
}

Automorphism Automorphism::compose(const Automorphism& other, int max_length) const {
  std::vector<PathSeries> images;
  images.reserve(images_.size());
  for (const auto& img : other.images_) images.push_back(apply(img, max_length));
  return Automorphism(alphabet_, std::move(images),
                      std::min({precision_, other.precision_, max_length}));
}

Automorphism hamiltonian_automorphism(const CyclicSeries& h, int truncation) {
  require_flow_generator(h);
  const Derivation x = hamiltonian_derivation(h);
  const AlphabetPtr& a = h.alphabet_ptr();
  std::vector<PathSeries> images;
  for (std::size_t z = 0; z < a->size(); ++z) {
    PathSeries sum = PathSeries::letter(a, static_cast<Letter>(z));
    sum.truncate(truncation);
    PathSeries term = sum;
    for (int k = 1; !term.is_zero(); ++k) {
      term = apply_derivation(x, term, truncation);
      term *= Rational(1, k);
      sum += term;
    }
    images.push_back(std::move(sum));
  }
  return Automorphism(a, std::move(images), truncation);
}

Automorphism project_gauge(const Automorphism& phi) {
  phi.require_admissible();
  const Alphabet& a = phi.alphabet();
  auto in_ideal = [&](const Word& w) {
    return std::any_of(w.begin(), w.end(), [&](Letter z) { return a.is_ideal_generator(z); });
  };
  std::vector<PathSeries> images;
  for (std::size_t z = 0; z < a.size(); ++z) {
    const Letter l = static_cast<Letter>(z);
    const PathSeries& img = phi.image(l);
    if (a.is_ideal_generator(l)) {
      for (const auto& [w, c] : img.terms()) {
        if (!in_ideal(w)) {
          throw Error(ErrorCode::inadmissible_transform,
                      "image of " + a.at(l).id + " leaves the ideal of alpha, beta and xi_{2-d}");
        }
      }
      images.push_back(PathSeries::letter(phi.alphabet_ptr(), l));
      continue;
    }
    PathSeries kept(phi.alphabet_ptr(), img.source(), img.target(), img.precision());
    for (const auto& [w, c] : img.terms()) {
      if (!in_ideal(w)) kept.add_word(w, c);
    }
    images.push_back(std::move(kept));
  }
  Automorphism out(phi.alphabet_ptr(), std::move(images), phi.precision());
  out.require_admissible();
  return out;
}

std::vector<PathSeries> cyclic_identity_residual(const CyclicSeries& p) {
  const Alphabet& a = p.alphabet();
  std::vector<PathSeries> out;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    out.emplace_back(p.alphabet_ptr(), static_cast<int>(v), static_cast<int>(v), p.precision());
  }
  for (const auto& [w, c] : p.terms()) {
    const Word& letters = w.letters;
    const int deg_w = word_degree(a, letters);
    for (std::size_t k = 0; k < letters.size(); ++k) {
      const Letter z = letters[k];
      const auto& cz = a.at(z);
      Rational coeff = rotation_sign(a, letters, k) < 0 ? Rational(-c) : c;
      const Word rest = complement(letters, k);
      Word front{z};
      front.insert(front.end(), rest.begin(), rest.end());
      out[static_cast<std::size_t>(cz.source)].add_word(front, coeff);
      Word back = rest;
      back.push_back(z);
      const int s = koszul_sign(cz.degree, deg_w - cz.degree);
      out[static_cast<std::size_t>(cz.target)].add_word(back, s < 0 ? coeff : Rational(-coeff));
    }
  }
  return out;
}

}  // namespace cyq
