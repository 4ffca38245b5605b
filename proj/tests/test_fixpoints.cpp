#include <catch2/catch_amalgamated.hpp>

#include <freefix/freefix.hpp>

#include <algorithm>

#include "oracles.hpp"

using namespace freefix;

namespace {
std::vector<Word> parse_all(const Alphabet& a, std::initializer_list<const char*> ws) {
  std::vector<Word> out;
  for (const char* w : ws) out.push_back(parse_word(a, w));
  return out;
}

// idempotent endomorphism of F3 with image the subgroup generated by a and d;
// the c image may be any power of d
Morphism example_endo(const Alphabet& a3, int n) {
  Word d = parse_word(a3, "baccbCCBA");
  return Morphism(a3, {parse_word(a3, "a"), d, power(d, n)});
}
}  // namespace

TEST_CASE("the example endomorphisms fix their defining loop") {
  Alphabet a(3);
  Word d = parse_word(a, "baccbCCBA");
  for (int n : {0, 1, 2, 3}) {
    Morphism psi = example_endo(a, n);
    CHECK(apply(psi, d) == d);
    CHECK(compose(psi, psi) == psi);
  }
  // composing any two of them keeps the first one
  CHECK(compose(example_endo(a, 2), example_endo(a, 3)) == example_endo(a, 2));
  CHECK(compose(example_endo(a, 3), example_endo(a, 1)) == example_endo(a, 3));
}

TEST_CASE("enumerating fixed words of an idempotent lists its image subgroup") {
  Alphabet a(3);
  Morphism psi = example_endo(a, 1);
  SubgroupGraph ad = build_subgroup(a, parse_all(a, {"a", "baccbCCBA"}));
  std::vector<Word> fixed = enumerate_fixed_family(a, {psi}, 9);
  std::vector<Word> loops = loops_up_to(ad, 9);
  CHECK(fixed == loops);
  // identity, powers of a, d*a and its inverse at length 8, and the eight
  // products mixing one a letter with d*a or its inverse
  CHECK(fixed.size() == 29);
}

TEST_CASE("enumerating fixed words of a family intersects the conditions") {
  Alphabet a(2);
  Morphism flip(a, {parse_word(a, "a"), parse_word(a, "B")});
  Morphism push(a, {parse_word(a, "a"), parse_word(a, "ba")});
  std::vector<Word> both = enumerate_fixed_family(a, {flip, push}, 5);
  for (const Word& w : both) {
    CHECK(apply(flip, w) == w);
    CHECK(apply(push, w) == w);
  }
  std::vector<Word> one = enumerate_fixed_family(a, {push}, 5);
  CHECK(both.size() <= one.size());
  for (const Word& w : both)
    CHECK(std::find(one.begin(), one.end(), w) != one.end());
  // the conjugated generator is fixed by the pushing morphism alone
  CHECK(std::find(one.begin(), one.end(), parse_word(a, "baB")) != one.end());
}

TEST_CASE("identity morphisms are ignored when enumerating fixed words") {
  Alphabet a(2);
  std::vector<Word> all = enumerate_fixed_family(a, {Morphism::identity(a)}, 2);
  CHECK(all.size() == 17);  // 1 + 4 + 12 reduced words up to length two
  for (size_t i = 1; i < all.size(); ++i) CHECK(lenlex_less(all[i - 1], all[i]));
}

TEST_CASE("inner conjugators are recovered from the images") {
  Alphabet a(2);
  Word g = parse_word(a, "ab");
  auto w = inner_conjugator(Morphism::inner(g));
  REQUIRE(w.has_value());
  CHECK(*w == g);
  auto e = inner_conjugator(Morphism::identity(a));
  REQUIRE(e.has_value());
  CHECK(e->empty());
  CHECK_FALSE(inner_conjugator(Morphism(a, parse_all(a, {"a", "ba"}))).has_value());
}

TEST_CASE("element roots strip conjugation and powers") {
  Alphabet a(2);
  ElementRoot r1 = element_root(parse_word(a, "abab"));
  CHECK(to_string(r1.base) == "ab");
  CHECK(r1.exponent == 2);
  ElementRoot r2 = element_root(parse_word(a, "Abba"));
  CHECK(to_string(r2.base) == "Aba");
  CHECK(r2.exponent == 2);
  ElementRoot r3 = element_root(parse_word(a, "baab"));
  CHECK(to_string(r3.base) == "baab");
  CHECK(r3.exponent == 1);
  CHECK_THROWS_AS(element_root(Word::identity(a)), DomainError);

  Word z = parse_word(a, "bAAb");
  for (int k = 2; k <= 4; ++k) {
    ElementRoot r = element_root(power(z, k));
    CHECK(r.base == z);
    CHECK(r.exponent == k);
  }
}

TEST_CASE("exact fixed subgroups of the solvable classes") {
  Alphabet a(2);
  CHECK(exact_fixed_subgroup(Morphism::identity(a)).value() == full_group(a));

  // an inner automorphism fixes the centralizer of its conjugator
  auto fixInner = exact_fixed_subgroup(Morphism::inner(parse_word(a, "ab")));
  REQUIRE(fixInner.has_value());
  CHECK(*fixInner == build_subgroup(a, parse_all(a, {"ab"})));

  auto fixPower = exact_fixed_subgroup(Morphism::inner(parse_word(a, "aa")));
  REQUIRE(fixPower.has_value());
  CHECK(*fixPower == build_subgroup(a, parse_all(a, {"a"})));

  Alphabet a3(3);
  auto fixIdem = exact_fixed_subgroup(example_endo(a3, 1));
  REQUIRE(fixIdem.has_value());
  CHECK(*fixIdem == build_subgroup(a3, parse_all(a3, {"a", "baccbCCBA"})));

  CHECK_FALSE(exact_fixed_subgroup(Morphism(a, parse_all(a, {"a", "ba"}))).has_value());
}

TEST_CASE("stable images shrink until they stop") {
  Alphabet a3(3);
  StableImage id = stable_image(Morphism::identity(a3));
  CHECK(id.stabilized);
  CHECK(id.iterations == 0);
  CHECK(id.graph == full_group(a3));

  StableImage ex = stable_image(example_endo(a3, 1));
  CHECK(ex.stabilized);
  CHECK(ex.iterations == 1);
  CHECK(ex.graph == build_subgroup(a3, parse_all(a3, {"a", "baccbCCBA"})));

  Alphabet a1(1);
  Morphism square(a1, {parse_word(a1, "aa")});
  StableImage sq = stable_image(square, 4);
  CHECK_FALSE(sq.stabilized);
  CHECK(sq.iterations == 4);
  CHECK(sq.graph == build_subgroup(a1, {power(parse_word(a1, "a"), 16)}));
}

TEST_CASE("retraction search finds the rose retraction immediately") {
  Alphabet a(2);
  RetractionSearch rs = find_retraction(build_subgroup(a, parse_all(a, {"a"})));
  REQUIRE(rs.retraction.has_value());
  CHECK(to_string(rs.retraction->image(0)) == "a");
  CHECK(rs.retraction->image(1).empty());
  CHECK(rs.complete);
}

TEST_CASE("retraction search walks candidates in order") {
  Alphabet a(2);
  RetractionSearch rs = find_retraction(build_subgroup(a, parse_all(a, {"ab"})));
  REQUIRE(rs.retraction.has_value());
  CHECK(rs.retraction->image(0).empty());
  CHECK(to_string(rs.retraction->image(1)) == "ab");
}

TEST_CASE("powers admit no retraction") {
  Alphabet a1(1);
  RetractionSearch rs = find_retraction(build_subgroup(a1, {parse_word(a1, "aa")}), 3);
  CHECK_FALSE(rs.retraction.has_value());
  CHECK(rs.complete);
  CHECK(rs.bound == 3);
}

TEST_CASE("the conjugated generator subgroup admits no retraction") {
  Alphabet a(2);
  RetractionSearch rs = find_retraction(build_subgroup(a, parse_all(a, {"a", "baB"})));
  CHECK_FALSE(rs.retraction.has_value());
  CHECK(rs.complete);
}

TEST_CASE("the example subgroup retracts by sending c away") {
  Alphabet a(3);
  SubgroupGraph ad = build_subgroup(a, parse_all(a, {"a", "baccbCCBA"}));
  RetractionSearch rs = find_retraction(ad);
  REQUIRE(rs.retraction.has_value());
  Morphism rho = *rs.retraction;
  CHECK(to_string(rho.image(0)) == "a");
  CHECK(to_string(rho.image(1)) == "baccbCCBA");
  CHECK(rho.image(2).empty());
  CHECK(compose(rho, rho) == rho);
  CHECK(image(full_group(a), rho) == ad);
}

TEST_CASE("a tiny node limit reports an incomplete search") {
  Alphabet a(3);
  SubgroupGraph ad = build_subgroup(a, parse_all(a, {"a", "baccbCCBA"}));
  RetractionSearch rs = find_retraction(ad, 10, 5);
  CHECK_FALSE(rs.retraction.has_value());
  CHECK_FALSE(rs.complete);
}

TEST_CASE("approximate fixed subgroups grow with the length bound") {
  Alphabet a(2);
  Morphism push(a, {parse_word(a, "a"), parse_word(a, "ba")});
  SubgroupGraph small = fix_approx(a, {push}, 3);
  SubgroupGraph large = fix_approx(a, {push}, 6);
  CHECK(subgroup_le(small, large));
  CHECK(small == build_subgroup(a, parse_all(a, {"a", "baB"})));
  CHECK(fix_approx(a, {Morphism::identity(a)}, 3) == full_group(a));
}

TEST_CASE("family reduction drops redundant members") {
  Alphabet a(2);
  Morphism push(a, {parse_word(a, "a"), parse_word(a, "ba")});
  Morphism pushTwice = compose(push, push);
  std::vector<Morphism> fam{push, pushTwice, push};
  std::vector<Morphism> red = reduce_family(a, fam, 5);
  REQUIRE(red.size() == 1);
  CHECK(red[0] == push);

  std::vector<Morphism> again = reduce_family(a, red, 5);
  CHECK(again == red);
  CHECK(fix_approx(a, fam, 5) == fix_approx(a, red, 5));
}

TEST_CASE("family reduction keeps members that cut the fixed set down") {
  Alphabet a(2);
  Morphism flipB(a, {parse_word(a, "a"), parse_word(a, "B")});
  Morphism flipA(a, {parse_word(a, "A"), parse_word(a, "b")});
  std::vector<Morphism> red = reduce_family(a, {flipB, flipA}, 4);
  CHECK(red.size() == 2);
  CHECK(fix_approx(a, red, 4) == trivial_subgroup(a));
}
