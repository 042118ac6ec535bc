#pragma once

#include <map>
#include <string>
#include <vector>

#include "cyq/words.hpp"

namespace cyq {

constexpr int kDefaultTruncation = 8;

// Sum over occurrences of z of the complementary path (letters after z, then
// letters before), each with the sign of rotating z to the front. The result
// runs from target(z) to source(z).
PathSeries cyclic_derivative(const CyclicSeries& p, Letter z);

CyclicSeries necklace_bracket(const CyclicSeries& f, const CyclicSeries& g,
                              int max_length = kExact);

// The bracket summed only over dual pairs (u, u-dual) with pairs[u] set;
// an empty mask means all pairs.
CyclicSeries partial_bracket(const CyclicSeries& f, const CyclicSeries& g,
                             const std::vector<bool>& pairs, int max_length = kExact);

CyclicSeries build_W_can(const AlphabetPtr& alphabet);

struct AdmissibilityIssue {
  std::string word;
  std::string reason;
};

std::vector<AdmissibilityIssue> admissibility_issues(const CyclicSeries& w0);
// W_can + W0; throws inadmissible_potential listing every offending word.
CyclicSeries lift_potential(const CyclicSeries& w0);
// The coordinates set to zero by restriction and gauge projection.
std::vector<Letter> ideal_generators(const Alphabet& alphabet);

struct MasterReport {
  CyclicSeries residual;
  bool pass = false;
  int precision = kExact;
};

MasterReport check_master(const CyclicSeries& w);
// Residual {W_can, g} + 1/2 {g, g}; also confirms it equals 1/2 {W_can+g, W_can+g}.
MasterReport maurer_cartan_check(const CyclicSeries& gamma);

/// A derivation of the path algebra given on letters. `degree` is the parity
/// used for Koszul signs when it passes letters.
struct Derivation {
  AlphabetPtr alphabet;
  std::vector<PathSeries> images;
  int degree = 0;
};

// z -> pi(z-dual) (-1)^{|z-dual| |h|} d h / d z-dual, so that the derivation
// agrees with {h, .} on cyclic words.
Derivation hamiltonian_derivation(const CyclicSeries& h);
PathSeries apply_derivation(const Derivation& x, const PathSeries& p, int max_length = kExact);
CyclicSeries apply_derivation(const Derivation& x, const CyclicSeries& p,
                              int max_length = kExact);

// exp({h, .}) P, exact up to cyc.deg n.
CyclicSeries hamiltonian_flow(const CyclicSeries& h, const CyclicSeries& p,
                              int truncation = kDefaultTruncation);
void require_flow_generator(const CyclicSeries& h);

/// Grading- and vertex-preserving substitution z -> images[z].
class Automorphism {
 public:
  static Automorphism identity(AlphabetPtr alphabet);
  Automorphism(AlphabetPtr alphabet, std::vector<PathSeries> images, int precision = kExact);

  const Alphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  const PathSeries& image(Letter z) const { return images_.at(static_cast<std::size_t>(z)); }
  const std::vector<PathSeries>& images() const { return images_; }
  int precision() const { return precision_; }

  // Empty when admissible; otherwise one message per problem.
  std::vector<std::string> problems() const;
  void require_admissible() const;

  PathSeries apply(const PathSeries& p, int max_length = kExact) const;
  CyclicSeries apply(const CyclicSeries& p, int max_length = kExact) const;
  // (this o other)(z) = this(other(z)).
  Automorphism compose(const Automorphism& other, int max_length = kExact) const;

 private:
  AlphabetPtr alphabet_;
  std::vector<PathSeries> images_;
  int precision_;
};

Automorphism hamiltonian_automorphism(const CyclicSeries& h,
                                      int truncation = kDefaultTruncation);
// Kills alpha, beta and the degree 2-d xi letters in every image; the
// ideal generators themselves are left fixed.
Automorphism project_gauge(const Automorphism& phi);

// sum_z (z * dP/dz - (-1)^{|z|(|P|-|z|)} dP/dz * z) in the free path algebra,
// one series per vertex. Each series is zero for every P.
std::vector<PathSeries> cyclic_identity_residual(const CyclicSeries& p);

}  // namespace cyq
