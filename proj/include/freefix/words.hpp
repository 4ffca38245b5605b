#pragma once

// Reduced words and morphisms of a finitely generated free group.
//
// All values are immutable after construction and all operations are pure, so
// everything here is safe to share across threads.
//
// Text conventions (alphabet size <= 26): lowercase letters are generators,
// uppercase their inverses, "1" is the empty word. A word prints like
// "baccbCCBA"; a morphism prints one line per generator, "a -> ab".

#include <algorithm>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace freefix {

// Signed letter: generator i has code 2i, its inverse 2i+1.
using Lit = int;

constexpr Lit lit(int letter, bool inverse = false) {
  return 2 * letter + (inverse ? 1 : 0);
}
constexpr Lit lit_inverse(Lit c) { return c ^ 1; }
constexpr int lit_letter(Lit c) { return c >> 1; }
constexpr bool lit_positive(Lit c) { return (c & 1) == 0; }

class Alphabet {
 public:
  explicit Alphabet(int size) : n_(size) {
    if (size < 1) throw DomainError("alphabet size must be at least 1");
  }

  int size() const { return n_; }
  int lit_count() const { return 2 * n_; }

  bool valid(Lit c) const { return c >= 0 && c < 2 * n_; }

  std::string symbol(Lit c) const {
    if (!valid(c)) throw AlphabetError("signed letter out of range");
    if (n_ <= 26) {
      char base = lit_positive(c) ? 'a' : 'A';
      return std::string(1, static_cast<char>(base + lit_letter(c)));
    }
    return (lit_positive(c) ? "[" : "[-") + std::to_string(lit_letter(c)) + "]";
  }

  bool operator==(const Alphabet&) const = default;

 private:
  int n_;
};

inline void require_same(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw AlphabetError("values over different alphabets");
}

class Word {
 public:
  // Freely reduces the given letter sequence.
  Word(const Alphabet& a, std::vector<Lit> raw) : alpha_(a) {
    lits_.reserve(raw.size());
    for (Lit c : raw) {
      if (!a.valid(c)) throw AlphabetError("letter outside the alphabet");
      if (!lits_.empty() && lits_.back() == lit_inverse(c)) {
        lits_.pop_back();
      } else {
        lits_.push_back(c);
      }
    }
  }

  static Word identity(const Alphabet& a) { return Word(a, {}); }
  static Word letter(const Alphabet& a, Lit c) { return Word(a, {c}); }

  const Alphabet& alphabet() const { return alpha_; }
  std::span<const Lit> lits() const { return lits_; }
  size_t length() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  Lit at(size_t i) const { return lits_[i]; }

  Word inverse() const {
    std::vector<Lit> out;
    out.reserve(lits_.size());
    for (auto it = lits_.rbegin(); it != lits_.rend(); ++it)
      out.push_back(lit_inverse(*it));
    return Word(alpha_, std::move(out));
  }

  bool operator==(const Word&) const = default;

 private:
  Alphabet alpha_;
  std::vector<Lit> lits_;
};

inline Word reduce(const Alphabet& a, std::vector<Lit> raw) {
  return Word(a, std::move(raw));
}

inline Word concat(const Word& u, const Word& v) {
  require_same(u.alphabet(), v.alphabet());
  std::vector<Lit> raw(u.lits().begin(), u.lits().end());
  raw.insert(raw.end(), v.lits().begin(), v.lits().end());
  return Word(u.alphabet(), std::move(raw));
}

inline Word power(const Word& w, int k) {
  Word base = k < 0 ? w.inverse() : w;
  int times = k < 0 ? -k : k;
  std::vector<Lit> raw;
  raw.reserve(base.length() * static_cast<size_t>(times));
  for (int i = 0; i < times; ++i)
    raw.insert(raw.end(), base.lits().begin(), base.lits().end());
  return Word(w.alphabet(), std::move(raw));
}

// Length-then-lexicographic order on reduced words; the enumeration order used
// everywhere a "first" word is picked.
inline bool lenlex_less(const Word& u, const Word& v) {
  if (u.length() != v.length()) return u.length() < v.length();
  return std::lexicographical_compare(u.lits().begin(), u.lits().end(),
                                      v.lits().begin(), v.lits().end());
}

// Largest k with w = u^k as a literal reduced word; u is the shortest period.
// k = 1 and u = w when w is not a proper power. Errors on the empty word.
inline std::pair<Word, int> root(const Word& w) {
  if (w.empty()) throw DomainError("root of the empty word is undefined");
  size_t len = w.length();
  for (size_t p = 1; p <= len; ++p) {
    if (len % p != 0) continue;
    bool periodic = true;
    for (size_t i = p; i < len && periodic; ++i)
      periodic = w.at(i) == w.at(i % p);
    if (periodic) {
      std::vector<Lit> u(w.lits().begin(), w.lits().begin() + p);
      return {Word(w.alphabet(), std::move(u)), static_cast<int>(len / p)};
    }
  }
  return {w, 1};  // unreachable, p = len always matches
}

class Morphism {
 public:
  Morphism(const Alphabet& a, std::vector<Word> images)
      : alpha_(a), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != a.size())
      throw AlphabetError("morphism needs exactly one image per generator");
    for (const Word& w : images_) require_same(w.alphabet(), a);
  }

  static Morphism identity(const Alphabet& a) {
    std::vector<Word> im;
    for (int i = 0; i < a.size(); ++i) im.push_back(Word::letter(a, lit(i)));
    return Morphism(a, std::move(im));
  }

  // Inner automorphism x -> w^-1 x w.
  static Morphism inner(const Word& w) {
    const Alphabet& a = w.alphabet();
    Word wi = w.inverse();
    std::vector<Word> im;
    for (int i = 0; i < a.size(); ++i)
      im.push_back(concat(concat(wi, Word::letter(a, lit(i))), w));
    return Morphism(a, std::move(im));
  }

  const Alphabet& alphabet() const { return alpha_; }
  const Word& image(int letter) const { return images_[letter]; }
  const std::vector<Word>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < alpha_.size(); ++i) {
      if (images_[i].length() != 1 || images_[i].at(0) != lit(i)) return false;
    }
    return true;
  }

  bool operator==(const Morphism&) const = default;

 private:
  Alphabet alpha_;
  std::vector<Word> images_;
};

inline Word apply(const Morphism& m, const Word& w) {
  require_same(m.alphabet(), w.alphabet());
  std::vector<Lit> raw;
  for (Lit c : w.lits()) {
    const Word& im = m.image(lit_letter(c));
    if (lit_positive(c)) {
      raw.insert(raw.end(), im.lits().begin(), im.lits().end());
    } else {
      for (auto it = im.lits().rbegin(); it != im.lits().rend(); ++it)
        raw.push_back(lit_inverse(*it));
    }
  }
  return Word(w.alphabet(), std::move(raw));
}

// First m1, then m2: compose(m1, m2) maps x to apply(m2, apply(m1, x)).
inline Morphism compose(const Morphism& m1, const Morphism& m2) {
  require_same(m1.alphabet(), m2.alphabet());
  std::vector<Word> im;
  for (int i = 0; i < m1.alphabet().size(); ++i)
    im.push_back(apply(m2, m1.image(i)));
  return Morphism(m1.alphabet(), std::move(im));
}

// Maps letter j of w to images[j] (over the target alphabet of the images).
inline Word substitute(const Word& w, const std::vector<Word>& images,
                       const Alphabet& target) {
  std::vector<Lit> raw;
  for (Lit c : w.lits()) {
    int j = lit_letter(c);
    if (j >= static_cast<int>(images.size()))
      throw AlphabetError("substitution is missing an image");
    const Word& im = images[j];
    require_same(im.alphabet(), target);
    if (lit_positive(c)) {
      raw.insert(raw.end(), im.lits().begin(), im.lits().end());
    } else {
      for (auto it = im.lits().rbegin(); it != im.lits().rend(); ++it)
        raw.push_back(lit_inverse(*it));
    }
  }
  return Word(target, std::move(raw));
}

// ---- text format ----

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Lit c : w.lits()) out += w.alphabet().symbol(c);
  return out;
}

inline Word parse_word(const Alphabet& a, std::string_view text) {
  if (a.size() > 26)
    throw ParseError("text format supports alphabets up to 26 letters");
  std::vector<Lit> raw;
  bool sawOne = false;
  size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(i + 1));
  };
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '1') {
      sawOne = true;
      ++i;
      continue;
    }
    Lit c;
    if (ch >= 'a' && ch <= 'z') {
      c = lit(ch - 'a');
    } else if (ch >= 'A' && ch <= 'Z') {
      c = lit(ch - 'A', true);
    } else {
      fail(std::string("unexpected character '") + ch + "'");
      continue;  // unreachable
    }
    if (!a.valid(c)) fail(std::string("letter '") + ch + "' outside the alphabet");
    ++i;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        fail("exponent expects digits");
      long e = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        e = e * 10 + (text[i] - '0');
        if (e > 1000000) fail("exponent too large");
        ++i;
      }
      Lit base = neg ? lit_inverse(c) : c;
      for (long k = 0; k < e; ++k) raw.push_back(base);
    } else {
      raw.push_back(c);
    }
  }
  if (sawOne && !raw.empty())
    throw ParseError("'1' denotes the empty word and cannot mix with letters");
  return Word(a, std::move(raw));
}

inline std::string to_string(const Morphism& m) {
  std::string out;
  for (int i = 0; i < m.alphabet().size(); ++i) {
    out += m.alphabet().symbol(lit(i));
    out += " -> ";
    out += to_string(m.image(i));
    out += '\n';
  }
  return out;
}

// One line per generator, "a -> ab"; every generator exactly once. Line
// numbers in errors are 1-based within the given chunk.
inline Morphism parse_morphism(const Alphabet& a, std::string_view text) {
  std::vector<std::optional<Word>> images(a.size());
  size_t lineNo = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find_first_of("\n;", pos);
    std::string_view line = text.substr(
        pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++lineNo;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto fail = [&](const std::string& what) {
      throw ParseError("line " + std::to_string(lineNo) + ": " + what);
    };
    size_t arrow = line.find("->");
    if (arrow == std::string_view::npos) fail("expected 'letter -> word'");
    std::string_view lhs = line.substr(0, arrow);
    size_t le = lhs.find_last_not_of(" \t");
    if (le == std::string_view::npos) fail("missing generator before '->'");
    lhs = lhs.substr(0, le + 1);
    if (lhs.size() != 1 || lhs[0] < 'a' || lhs[0] > 'z')
      fail("left side must be a single lowercase generator");
    int letter = lhs[0] - 'a';
    if (letter >= a.size()) fail("generator outside the alphabet");
    if (images[letter]) fail("duplicate image for generator");
    try {
      images[letter] = parse_word(a, line.substr(arrow + 2));
    } catch (const ParseError& pe) {
      fail(pe.what());
    }
  }
  std::vector<Word> out;
  for (int i = 0; i < a.size(); ++i) {
    if (!images[i])
      throw ParseError("missing image for generator '" +
                       a.symbol(lit(i)) + "'");
    out.push_back(*images[i]);
  }
  return Morphism(a, std::move(out));
}

}  // namespace freefix
