#include "cyq/potential_io.hpp"

#include <cctype>
#include <sstream>

#include "cyq/error.hpp"

namespace cyq {

namespace {

bool ident_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == ':' ||
         ch == '\'' || ch == '>' || ch == '.';
}

struct RawTerm {
  std::size_t offset = 0;
  std::string text;
  Rational coeff{1};
  Word letters;
  int vertex = -1;  // for a bare idempotent
};

class Lexer {
 public:
  Lexer(std::string_view text, const Alphabet& alphabet) : s_(text), alphabet_(alphabet) {}

  std::vector<RawTerm> terms() {
    std::vector<RawTerm> out;
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      out.push_back(term(sign));
      skip();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse, "offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Rational rational() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string num(s_.substr(start, pos_ - start));
    std::string den = "1";
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip();
      const std::size_t d0 = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d0 == pos_) fail("malformed rational");
      den = std::string(s_.substr(d0, pos_ - d0));
    }
    mpz_class n(num), q(den);
    if (q == 0) fail("zero denominator");
    Rational r(n, q);
    r.canonicalize();
    return r;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    if (pos_ >= s_.size() ||
        !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      fail("expected an identifier");
    }
    while (pos_ < s_.size()) {
      const char ch = s_[pos_];
      if (ident_char(ch)) {
        ++pos_;
      } else if (ch == '-' && ((pos_ > start && s_[pos_ - 1] == ':') ||
                               (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>'))) {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  void factor(RawTerm& t) {
    const std::size_t at = pos_;
    std::string id = identifier();
    if (auto z = alphabet_.find(id)) {
      t.letters.push_back(*z);
      return;
    }
    if (id.rfind("id_", 0) == 0) {
      const auto& vs = alphabet_.quiver().vertices;
      for (std::size_t v = 0; v < vs.size(); ++v) {
        if (vs[v] == id.substr(3)) {
          if (t.vertex >= 0 && t.vertex != static_cast<int>(v)) {
            pos_ = at;
            fail("idempotents of different vertices multiply to zero");
          }
          t.vertex = static_cast<int>(v);
          return;
        }
      }
    }
    pos_ = at;
    fail("unknown identifier '" + id + "'");
  }

  RawTerm term(int sign) {
    RawTerm t;
    t.offset = pos_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      t.coeff = rational();
      skip();
      if (pos_ == s_.size() || s_[pos_] != '*') {
        if (t.coeff != 0) fail("a bare number is only allowed as 0");
        t.coeff = 0;
        t.text = std::string(s_.substr(t.offset, pos_ - t.offset));
        return t;
      }
      ++pos_;
      skip();
    }
    factor(t);
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      skip();
      factor(t);
      skip();
    }
    if (sign < 0) t.coeff = -t.coeff;
    std::string text(s_.substr(t.offset, pos_ - t.offset));
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    t.text = std::move(text);
    if (!t.letters.empty() && t.vertex >= 0) {
      const auto& c = alphabet_.at(t.letters.front());
      if (c.source != t.vertex) fail("idempotent does not match the word's endpoints");
      t.vertex = -1;
    }
    return t;
  }

  std::string_view s_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

[[noreturn]] void term_error(const RawTerm& t, const std::string& what) {
  throw Error(ErrorCode::parse, "offset " + std::to_string(t.offset) + ": " + what +
                                    " in term '" + t.text + "'");
}

}  // namespace

ParsedPotential parse_potential(std::string_view text, const AlphabetPtr& alphabet) {
  ParsedPotential out{CyclicSeries(alphabet), {}, {}};
  Lexer lex(text, *alphabet);
  for (auto& t : lex.terms()) {
    if (t.coeff == 0 && t.letters.empty() && t.vertex < 0) continue;
    if (t.letters.empty()) {
      out.terms.push_back({t.offset, t.text, 0, 0});
      out.series.add_word(t.letters, t.coeff, t.vertex);
      continue;
    }
    if (!is_composable(*alphabet, t.letters)) term_error(t, "non-composable word");
    if (!is_closed(*alphabet, t.letters)) term_error(t, "word is not a closed path");
    out.terms.push_back({t.offset, t.text, word_degree(*alphabet, t.letters),
                         static_cast<int>(t.letters.size())});
    if (!out.series.add_word(t.letters, t.coeff)) {
      out.warnings.push_back("symmetry-killed term '" + t.text + "' at offset " +
                             std::to_string(t.offset));
    }
  }
  return out;
}

PathSeries parse_path(std::string_view text, const AlphabetPtr& alphabet, int source,
                      int target) {
  PathSeries out(alphabet, source, target);
  Lexer lex(text, *alphabet);
  for (auto& t : lex.terms()) {
    if (t.coeff == 0 && t.letters.empty() && t.vertex < 0) continue;
    if (t.letters.empty()) {
      if (t.vertex != source || source != target) term_error(t, "idempotent with wrong endpoints");
      out.add_word({}, t.coeff);
      continue;
    }
    if (!is_composable(*alphabet, t.letters)) term_error(t, "non-composable word");
    if (alphabet->at(t.letters.front()).source != source ||
        alphabet->at(t.letters.back()).target != target) {
      term_error(t, "path endpoints do not match");
    }
    out.add_word(t.letters, t.coeff);
  }
  return out;
}

void require_homogeneous(const ParsedPotential& parsed, int degree) {
  for (const auto& t : parsed.terms) {
    if (t.degree != degree) {
      throw Error(ErrorCode::parse, "offset " + std::to_string(t.offset) + ": term '" + t.text +
                                        "' has degree " + std::to_string(t.degree) +
                                        ", expected " + std::to_string(degree));
    }
  }
}

void require_minimal(const ParsedPotential& parsed) {
  for (const auto& t : parsed.terms) {
    if (t.length < 3) {
      throw Error(ErrorCode::parse, "offset " + std::to_string(t.offset) + ": term '" + t.text +
                                        "' has length " + std::to_string(t.length) +
                                        ", minimal potentials need length at least 3");
    }
  }
}

std::string print_word(const Alphabet& alphabet, const Word& w, int vertex) {
  if (w.empty()) return "id_" + alphabet.quiver().vertices.at(static_cast<std::size_t>(vertex));
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += '*';
    out += alphabet.at(w[k]).id;
  }
  return out;
}

std::string print_rational(const Rational& q) { return q.get_str(); }

namespace {

template <class Terms, class WordOf>
std::string print_terms(const Terms& terms, WordOf word_text) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) out += mag.get_str() + "*";
    out += word_text(w);
  }
  return out;
}

}  // namespace

std::string print_potential(const CyclicSeries& series) {
  const Alphabet& a = series.alphabet();
  return print_terms(series.terms(),
                     [&](const CyclicWord& w) { return print_word(a, w.letters, w.vertex); });
}

std::string print_path(const PathSeries& series) {
  const Alphabet& a = series.alphabet();
  return print_terms(series.terms(),
                     [&](const Word& w) { return print_word(a, w, series.source()); });
}

}  // namespace cyq
