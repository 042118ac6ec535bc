#pragma once

#include <map>
#include <string>
#include <vector>

#include "cyq/words.hpp"

namespace cyq {

using Vector = std::map<Letter, Rational>;

// e_z, the basis vector dual to coordinate z; unshifted degree 1 - deg(z).
int basis_degree(const Alphabet& alphabet, Letter z);
std::string basis_id(const Alphabet& alphabet, Letter z);

/// The Calabi-Yau pairing on basis vectors, +-1 on (e_u, e_{u-dual}).
class Pairing {
 public:
  explicit Pairing(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const { return *alphabet_; }
  Rational operator()(Letter u, Letter v) const;

 private:
  AlphabetPtr alphabet_;
};

/// m_n on basis tuples: inputs (as letters, composable as a word) -> vector.
struct StructureConstants {
  AlphabetPtr alphabet;
  int max_arity = 0;
  std::map<Word, Vector, ShortLex> products;

  const Vector* find(const Word& inputs) const;
  bool has_m1() const;
};

// Coefficient of y_2...y_N in dW/dy_1, the full graded-cyclic symmetrization
// of W evaluated on the tuple.
Rational polarization(const CyclicSeries& w, const Word& y);
std::map<Word, Rational, ShortLex> polarization_table(const CyclicSeries& w);

// W_N read off the potential (sign of the desuspension times polarization).
Rational cyclic_form_from_potential(const CyclicSeries& w, const Word& y);
// W_N(y) = (m_{N-1}(y_1..y_{N-1}), e_{y_N}).
Rational cyclic_form(const StructureConstants& m, const Pairing& pairing, const Word& y);

// max_arity < 0 means every arity the potential supports.
StructureConstants extract_products(const CyclicSeries& w, const Pairing& pairing,
                                    int max_arity = -1);
// The same constants read from the Hamiltonian vector field -{W, .}.
StructureConstants products_from_vector_field(const CyclicSeries& w, int max_arity = -1);
int default_relation_arity(const CyclicSeries& w);

struct RelationViolation {
  Word inputs;
  Vector residual;
};

struct AinftyReport {
  bool pass = true;
  int max_arity = 0;
  std::vector<RelationViolation> violations;
};

AinftyReport check_ainfty(const StructureConstants& m, int max_arity);

struct CyclicityReport {
  bool cyclic = true;
  bool pairing_symmetric = true;
  bool canonical_unit = true;
  bool canonical_associative = true;
  bool contains_canonical = false;
  // Strict unitality of the full structure, reported only.
  bool full_unit = true;
  bool pass = true;
  std::vector<std::string> notes;
};

struct UnitReport {
  bool strict = true;
  std::vector<std::string> notes;
};

UnitReport check_strict_unit(const StructureConstants& m);
CyclicityReport check_cyclicity_and_unit(const StructureConstants& m, const Pairing& pairing,
                                         const CyclicSeries& w);

}  // namespace cyq
