#include <catch2/catch_amalgamated.hpp>

#include <freefix/freefix.hpp>

#include "oracles.hpp"

using namespace freefix;

TEST_CASE("signed letter codes pair generators with their inverses") {
  CHECK(lit(0) == 0);
  CHECK(lit(0, true) == 1);
  CHECK(lit(2) == 4);
  CHECK(lit_inverse(lit(2)) == lit(2, true));
  CHECK(lit_inverse(lit_inverse(lit(1))) == lit(1));
  CHECK(lit_letter(lit(3, true)) == 3);
  CHECK(lit_positive(lit(3)));
  CHECK_FALSE(lit_positive(lit(3, true)));
}

TEST_CASE("alphabet validates sizes and symbols") {
  Alphabet a(3);
  CHECK(a.size() == 3);
  CHECK(a.lit_count() == 6);
  CHECK(a.symbol(lit(0)) == "a");
  CHECK(a.symbol(lit(2, true)) == "C");
  CHECK(a.valid(lit(2, true)));
  CHECK_FALSE(a.valid(lit(3)));
  CHECK_THROWS_AS(Alphabet(0), DomainError);
  CHECK_THROWS_AS(a.symbol(lit(5)), AlphabetError);
}

TEST_CASE("words reduce freely on construction") {
  Alphabet a(2);
  Word w(a, {lit(0), lit(1), lit(1, true), lit(0, true), lit(0)});
  CHECK(to_string(w) == "a");
  CHECK(Word(a, {lit(0), lit(0, true)}).empty());
  CHECK(to_string(Word::identity(a)) == "1");
  CHECK_THROWS_AS(Word(a, {lit(2)}), AlphabetError);
}

TEST_CASE("inverse, concat and power behave like group operations") {
  Alphabet a(2);
  Word w = parse_word(a, "abAB");
  CHECK(to_string(w.inverse()) == "baBA");
  CHECK(concat(w, w.inverse()).empty());
  CHECK(to_string(concat(parse_word(a, "ab"), parse_word(a, "Ba"))) == "aa");
  CHECK(to_string(power(parse_word(a, "ab"), 3)) == "ababab");
  CHECK(to_string(power(parse_word(a, "ab"), -2)) == "BABA");
  CHECK(power(parse_word(a, "ab"), 0).empty());
}

TEST_CASE("root finds the literal period") {
  Alphabet a(2);
  auto [u1, k1] = root(parse_word(a, "ababab"));
  CHECK(to_string(u1) == "ab");
  CHECK(k1 == 3);
  auto [u2, k2] = root(parse_word(a, "aba"));
  CHECK(to_string(u2) == "aba");
  CHECK(k2 == 1);
  CHECK_THROWS_AS(root(Word::identity(a)), DomainError);
}

TEST_CASE("lenlex orders by length then letter code") {
  Alphabet a(2);
  Word e = Word::identity(a);
  Word x = parse_word(a, "a");
  Word X = parse_word(a, "A");
  Word ab = parse_word(a, "ab");
  Word BA = parse_word(a, "BA");
  CHECK(lenlex_less(e, x));
  CHECK(lenlex_less(x, X));
  CHECK(lenlex_less(X, ab));
  CHECK(lenlex_less(ab, BA));
  CHECK_FALSE(lenlex_less(ab, ab));
}

TEST_CASE("word parsing accepts exponents and rejects junk") {
  Alphabet a(3);
  CHECK(to_string(parse_word(a, "baccbCCBA")) == "baccbCCBA");
  CHECK(to_string(parse_word(a, " a  b ")) == "ab");
  CHECK(to_string(parse_word(a, "a^3")) == "aaa");
  CHECK(to_string(parse_word(a, "b^-2")) == "BB");
  CHECK(to_string(parse_word(a, "B^-2")) == "bb");
  CHECK(to_string(parse_word(a, "a^+2b")) == "aab");
  CHECK(parse_word(a, "aA").empty());
  CHECK(parse_word(a, "1").empty());
  CHECK_THROWS_AS(parse_word(a, "a1"), ParseError);
  CHECK_THROWS_AS(parse_word(a, "d"), ParseError);
  CHECK_THROWS_AS(parse_word(a, "a^"), ParseError);
  CHECK_THROWS_AS(parse_word(a, "a^x"), ParseError);
  CHECK_THROWS_AS(parse_word(a, "a?b"), ParseError);
  CHECK_THROWS_MATCHES(parse_word(a, "ab!"), ParseError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("position 3")));
}

TEST_CASE("morphism application maps letters to images") {
  Alphabet a(2);
  Morphism m(a, {parse_word(a, "ab"), parse_word(a, "b")});
  CHECK(to_string(apply(m, parse_word(a, "aB"))) == "a");
  CHECK(to_string(apply(m, parse_word(a, "Ab"))) == "BAb");
  CHECK(apply(Morphism::identity(a), parse_word(a, "abAB")) ==
        parse_word(a, "abAB"));
}

TEST_CASE("composition applies the left morphism first") {
  Alphabet a(2);
  Morphism m1(a, {parse_word(a, "ab"), parse_word(a, "b")});
  Morphism m2(a, {parse_word(a, "a"), parse_word(a, "ba")});
  Morphism c = compose(m1, m2);
  CHECK(to_string(c.image(0)) == to_string(apply(m2, parse_word(a, "ab"))));
  Word w = parse_word(a, "aabA");
  CHECK(apply(c, w) == apply(m2, apply(m1, w)));
}

TEST_CASE("inner morphisms conjugate and compose like their words") {
  Alphabet a(2);
  Word g = parse_word(a, "ab");
  Morphism m = Morphism::inner(g);
  CHECK(to_string(apply(m, parse_word(a, "a"))) == "Bab");
  Word h = parse_word(a, "bA");
  CHECK(compose(Morphism::inner(g), Morphism::inner(h)) ==
        Morphism::inner(concat(g, h)));
  CHECK(Morphism::inner(Word::identity(a)).is_identity());
}

TEST_CASE("substitute rewrites over a different alphabet") {
  Alphabet two(2);
  Alphabet three(3);
  std::vector<Word> images{parse_word(three, "ab"), parse_word(three, "c")};
  Word w = parse_word(two, "aBa");
  CHECK(to_string(substitute(w, images, three)) == "abCab");
  CHECK_THROWS_AS(substitute(parse_word(two, "b"), {parse_word(three, "a")}, three),
                  AlphabetError);
}

TEST_CASE("morphism parsing reads one image per generator") {
  Alphabet a(2);
  Morphism m = parse_morphism(a, "a -> ab\nb -> b");
  CHECK(to_string(m.image(0)) == "ab");
  Morphism semi = parse_morphism(a, " b -> ba ; a -> a ");
  CHECK(to_string(semi.image(1)) == "ba");
  CHECK(to_string(m) == "a -> ab\nb -> b\n");
  CHECK(parse_morphism(a, to_string(m)) == m);
  CHECK_THROWS_AS(parse_morphism(a, "a -> ab"), ParseError);
  CHECK_THROWS_AS(parse_morphism(a, "a -> a\na -> b\nb -> b"), ParseError);
  CHECK_THROWS_AS(parse_morphism(a, "c -> a\nb -> b\na -> a"), ParseError);
  CHECK_THROWS_AS(parse_morphism(a, "a = ab\nb -> b"), ParseError);
  CHECK_THROWS_MATCHES(parse_morphism(a, "a -> ab\nb -> q"), ParseError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("line 2")));
}

TEST_CASE("mismatched alphabets are rejected") {
  Alphabet two(2);
  Alphabet three(3);
  CHECK_THROWS_AS(concat(parse_word(two, "a"), parse_word(three, "a")),
                  AlphabetError);
  CHECK_THROWS_AS(apply(Morphism::identity(two), parse_word(three, "a")),
                  AlphabetError);
  CHECK_THROWS_AS(Morphism(two, {parse_word(two, "a")}), AlphabetError);
}

TEST_CASE("random words stay reduced under round trips") {
  std::mt19937 rng(20240817);
  Alphabet a(3);
  for (int i = 0; i < 200; ++i) {
    Word w = ffo::random_reduced_word(rng, a, static_cast<int>(rng() % 12));
    CHECK(parse_word(a, to_string(w)) == w);
    CHECK(w.inverse().inverse() == w);
    CHECK(concat(w.inverse(), w).empty());
  }
}
