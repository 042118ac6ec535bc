#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cyq/words.hpp"

namespace cyq {

struct ParsedTerm {
  std::size_t offset = 0;
  std::string text;
  int degree = 0;
  int length = 0;
};

struct ParsedPotential {
  CyclicSeries series;
  std::vector<ParsedTerm> terms;
  std::vector<std::string> warnings;
};

// Grammar: series ::= ['+'|'-'] term (('+'|'-') term)*,
// term ::= [rational '*'] ident ('*' ident)* | rational (only "0" is allowed
// as a bare number). Identifiers are coordinate ids, "alpha_v", "beta_v", or
// "id_v" for the idempotent of vertex v.
ParsedPotential parse_potential(std::string_view text, const AlphabetPtr& alphabet);

// Same grammar for an open path from `source` to `target`.
PathSeries parse_path(std::string_view text, const AlphabetPtr& alphabet, int source,
                      int target);

// Throws a parse error naming the first term whose degree differs.
void require_homogeneous(const ParsedPotential& parsed, int degree);
void require_minimal(const ParsedPotential& parsed);

std::string print_word(const Alphabet& alphabet, const Word& w, int vertex = -1);
std::string print_rational(const Rational& q);
std::string print_potential(const CyclicSeries& series);
std::string print_path(const PathSeries& series);

}  // namespace cyq
