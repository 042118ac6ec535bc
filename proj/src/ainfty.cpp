#include "cyq/ainfty.hpp"

#include <algorithm>

#include "cyq/calculus.hpp"
#include "cyq/error.hpp"

namespace cyq {

namespace {

void accumulate(Vector& v, Letter z, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = v.try_emplace(z, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) v.erase(it);
  }
}

// (-1)^{sum_k (n-k)|e_{y_k}|} for the first n entries of y, k = 1..n.
int desuspension_sign(const Alphabet& a, const Word& y, std::size_t n) {
  long e = 0;
  for (std::size_t k = 1; k <= n; ++k) e += static_cast<long>(n - k) * basis_degree(a, y[k - 1]);
  return e % 2 != 0 ? -1 : 1;
}

void require_potential_degree(const CyclicSeries& w) {
  const int d = w.alphabet().dimension();
  for (const auto& [word, c] : w.terms()) {
    if (word_degree(w.alphabet(), word.letters) != 3 - d) {
      throw Error(ErrorCode::parse, "structure constants need a potential homogeneous of degree 3-d");
    }
  }
}

int resolve_arity(const CyclicSeries& w, int max_arity) {
  if (max_arity >= 0) return max_arity;
  return std::max(0, w.max_length() - 1);
}

}  // namespace

int basis_degree(const Alphabet& alphabet, Letter z) { return 1 - alphabet.degree(z); }

std::string basis_id(const Alphabet& alphabet, Letter z) { return "e_" + alphabet.at(z).id; }

Rational Pairing::operator()(Letter u, Letter v) const {
  if (alphabet_->at(u).dual != v) return 0;
  return Rational(koszul_sign(alphabet_->dimension(), 1) * alphabet_->bracket_sign(v));
}

const Vector* StructureConstants::find(const Word& inputs) const {
  auto it = products.find(inputs);
  return it == products.end() ? nullptr : &it->second;
}

bool StructureConstants::has_m1() const {
  return std::any_of(products.begin(), products.end(),
                     [](const auto& kv) { return kv.first.size() == 1 && !kv.second.empty(); });
}

Rational polarization(const CyclicSeries& w, const Word& y) {
  if (y.empty()) return 0;
  return cyclic_derivative(w, y.front()).coefficient(Word(y.begin() + 1, y.end()));
}

std::map<Word, Rational, ShortLex> polarization_table(const CyclicSeries& w) {
  const Alphabet& a = w.alphabet();
  std::map<Word, Rational, ShortLex> out;
  for (const auto& [word, c] : w.terms()) {
    const Word& l = word.letters;
    for (std::size_t k = 0; k < l.size(); ++k) {
      Word y(l.begin() + static_cast<long>(k), l.end());
      y.insert(y.end(), l.begin(), l.begin() + static_cast<long>(k));
      Rational v = rotation_sign(a, l, k) < 0 ? Rational(-c) : c;
      auto [it, inserted] = out.try_emplace(std::move(y), v);
      if (!inserted) {
        it->second += v;
        if (sgn(it->second) == 0) out.erase(it);
      }
    }
  }
  return out;
}

Rational cyclic_form_from_potential(const CyclicSeries& w, const Word& y) {
  if (y.empty()) return 0;
  const std::size_t n = y.size();
  const Alphabet& a = w.alphabet();
  long e = static_cast<long>(n) + 1;
  for (std::size_t k = 1; k < n; ++k) e += static_cast<long>(n - k) * basis_degree(a, y[k - 1]);
  Rational pol = polarization(w, y);
  return e % 2 != 0 ? Rational(-pol) : pol;
}

Rational cyclic_form(const StructureConstants& m, const Pairing& pairing, const Word& y) {
  if (y.size() < 2) return 0;
  const Word inputs(y.begin(), y.end() - 1);
  const Vector* out = m.find(inputs);
  if (!out) return 0;
  Rational total = 0;
  for (const auto& [z, c] : *out) total += c * pairing(z, y.back());
  return total;
}

StructureConstants extract_products(const CyclicSeries& w, const Pairing& pairing,
                                    int max_arity) {
  require_potential_degree(w);
  const Alphabet& a = w.alphabet();
  StructureConstants m{w.alphabet_ptr(), resolve_arity(w, max_arity), {}};
  for (const auto& entry : polarization_table(w)) {
    const Word& y = entry.first;
    const std::size_t n = y.size() - 1;
    if (n < 1 || static_cast<int>(n) > m.max_arity) continue;
    // W_N(y) = (m(y_1..y_n), e_{y_N}) and only z = dual(y_N) pairs with e_{y_N}.
    const Letter last = y.back();
    const Letter z = a.at(last).dual;
    const Rational wn = cyclic_form_from_potential(w, y);
    accumulate(m.products[Word(y.begin(), y.end() - 1)], z, wn / pairing(z, last));
  }
  std::erase_if(m.products, [](const auto& kv) { return kv.second.empty(); });
  return m;
}

StructureConstants products_from_vector_field(const CyclicSeries& w, int max_arity) {
  require_potential_degree(w);
  const Alphabet& a = w.alphabet();
  StructureConstants m{w.alphabet_ptr(), resolve_arity(w, max_arity), {}};
  const Derivation h = hamiltonian_derivation(w);
  for (std::size_t z = 0; z < a.size(); ++z) {
    for (const auto& [y, b] : h.images[z].terms()) {
      if (y.empty() || static_cast<int>(y.size()) > m.max_arity) continue;
      // Q_W = -H_W, then desuspend.
      const int s = -desuspension_sign(a, y, y.size());
      accumulate(m.products[y], static_cast<Letter>(z), s < 0 ? Rational(-b) : b);
    }
  }
  std::erase_if(m.products, [](const auto& kv) { return kv.second.empty(); });
  return m;
}

int default_relation_arity(const CyclicSeries& w) { return std::max(1, 2 * w.max_length() - 3); }

AinftyReport check_ainfty(const StructureConstants& m, int max_arity) {
  const Alphabet& a = *m.alphabet;
  std::vector<std::vector<std::pair<const Word*, Rational>>> by_output(a.size());
  for (const auto& [inputs, out] : m.products) {
    for (const auto& [z, c] : out) by_output[static_cast<std::size_t>(z)].push_back({&inputs, c});
  }
  std::map<Word, Vector, ShortLex> residual;
  for (const auto& [outer, result] : m.products) {
    const std::size_t p = outer.size();
    long prefix_degree = 0;
    for (std::size_t j = 0; j < p; ++j) {
      for (const auto& [inner, c_in] : by_output[static_cast<std::size_t>(outer[j])]) {
        const std::size_t s = inner->size();
        const std::size_t n = p - 1 + s;
        if (static_cast<int>(n) > max_arity) continue;
        const std::size_t r = j;
        const std::size_t t = p - 1 - j;
        const long e = static_cast<long>(r + s * t) + static_cast<long>(s) * prefix_degree;
        Word tuple(outer.begin(), outer.begin() + static_cast<long>(j));
        tuple.insert(tuple.end(), inner->begin(), inner->end());
        tuple.insert(tuple.end(), outer.begin() + static_cast<long>(j) + 1, outer.end());
        Vector& acc = residual[tuple];
        for (const auto& [z, c_out] : result) {
          Rational v = c_in * c_out;
          accumulate(acc, z, e % 2 != 0 ? Rational(-v) : v);
        }
      }
      prefix_degree += basis_degree(a, outer[j]);
    }
  }
  AinftyReport report;
  report.max_arity = max_arity;
  for (auto& [tuple, v] : residual) {
    if (!v.empty()) report.violations.push_back({tuple, std::move(v)});
  }
  report.pass = report.violations.empty();
  return report;
}

UnitReport check_strict_unit(const StructureConstants& m) {
  const Alphabet& a = *m.alphabet;
  UnitReport r;
  auto fail = [&](std::string note) {
    r.strict = false;
    r.notes.push_back(std::move(note));
  };
  for (std::size_t i = 0; i < a.vertex_count(); ++i) {
    const Letter u = a.alpha(static_cast<int>(i));
    for (std::size_t z = 0; z < a.size(); ++z) {
      const Letter v = static_cast<Letter>(z);
      const auto& c = a.at(v);
      if (c.source == static_cast<int>(i)) {
        const Vector* left = m.find(Word{u, v});
        if (!left || *left != Vector{{v, Rational(1)}}) {
          fail("m_2(" + basis_id(a, u) + ", " + basis_id(a, v) + ") != " + basis_id(a, v));
        }
      }
      if (c.target == static_cast<int>(i)) {
        const Vector* right = m.find(Word{v, u});
        if (!right || right->size() != 1 || right->begin()->first != v ||
            abs(right->begin()->second) != 1) {
          fail("m_2(" + basis_id(a, v) + ", " + basis_id(a, u) + ") != +-" + basis_id(a, v));
        }
      }
    }
  }
  for (const auto& [inputs, out] : m.products) {
    if (inputs.size() < 3 || out.empty()) continue;
    for (Letter y : inputs) {
      if (a.at(y).kind == CoordKind::alpha) {
        fail("m_" + std::to_string(inputs.size()) + " is nonzero with a unit argument");
        break;
      }
    }
  }
  return r;
}

CyclicityReport check_cyclicity_and_unit(const StructureConstants& m, const Pairing& pairing,
                                         const CyclicSeries& w) {
  const Alphabet& a = *m.alphabet;
  const int d = a.dimension();
  CyclicityReport r;
  // (i) W_N(y_N, y_1..y_{N-1}) = (-1)^{n + |e_N| (|e_1|+...+|e_{N-1}|)} W_N(y).
  for (const auto& [inputs, out] : m.products) {
    for (const auto& [z, c] : out) {
      Word y = inputs;
      y.push_back(a.at(z).dual);
      const Rational value = cyclic_form(m, pairing, y);
      if (sgn(value) == 0) continue;
      const std::size_t n = inputs.size();
      long rest = 0;
      for (Letter l : inputs) rest += basis_degree(a, l);
      const int eps = koszul_sign(basis_degree(a, y.back()), rest) * koszul_sign(static_cast<long>(n), 1);
      Word rotated{y.back()};
      rotated.insert(rotated.end(), inputs.begin(), inputs.end());
      if (static_cast<int>(n) <= m.max_arity && cyclic_form(m, pairing, rotated) != eps * value) {
        r.cyclic = false;
        r.notes.push_back("W_" + std::to_string(n + 1) + " is not invariant under the cyclic shift");
      }
    }
  }
  // (ii) graded symmetry of the pairing in total degree d.
  for (std::size_t z = 0; z < a.size(); ++z) {
    const Letter u = static_cast<Letter>(z);
    const Letter v = a.at(u).dual;
    const int du = basis_degree(a, u), dv = basis_degree(a, v);
    if (du + dv != d || pairing(u, v) != koszul_sign(du, dv) * pairing(v, u) ||
        sgn(pairing(u, v)) == 0) {
      r.pairing_symmetric = false;
      r.notes.push_back("pairing on " + basis_id(a, u) + " is not graded-symmetric");
    }
  }
  // (iii) and (iv) on the canonical part.
  const CyclicSeries wcan = build_W_can(m.alphabet);
  r.contains_canonical = true;
  for (const auto& [word, c] : wcan.terms()) {
    if (w.coefficient(word) != c) r.contains_canonical = false;
  }
  const StructureConstants mcan = extract_products(wcan, pairing);
  auto unit = check_strict_unit(mcan);
  r.canonical_unit = unit.strict;
  for (auto& n : unit.notes) r.notes.push_back("canonical part: " + n);
  r.canonical_associative = check_ainfty(mcan, 3).pass;
  if (!r.canonical_associative) r.notes.push_back("m_2 of W_can is not associative");
  auto full = check_strict_unit(m);
  r.full_unit = full.strict;
  if (!full.strict) {
    r.notes.push_back("the full structure is not strictly unital (reported, not required)");
  }
  r.pass = r.cyclic && r.pairing_symmetric && r.canonical_unit && r.canonical_associative;
  return r;
}

}  // namespace cyq
