#pragma once

// Whitehead automorphisms and peak reduction on tuples of ordinary words:
// minimization of a tuple's total length together with the automorphism chain
// that achieves it, and generators of the pointwise stabilizer of a tuple.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "words.hpp"

namespace freefix {

struct WhiteheadAuto {
  Morphism fwd;
  Morphism inv;
  bool multiplier;  // true for the multiplier-and-cut kind, false for signed permutations
};

namespace detail {

inline Morphism cut_morphism(const Alphabet& a, Lit mult, uint64_t cut) {
  std::vector<Word> images;
  for (int i = 0; i < a.size(); ++i) {
    if (i == lit_letter(mult)) {
      images.push_back(Word::letter(a, lit(i)));
      continue;
    }
    bool posIn = (cut >> lit(i)) & 1;
    bool negIn = (cut >> lit(i, true)) & 1;
    std::vector<Lit> raw;
    if (negIn) raw.push_back(lit_inverse(mult));
    raw.push_back(lit(i));
    if (posIn) raw.push_back(mult);
    images.push_back(Word(a, std::move(raw)));
  }
  return Morphism(a, std::move(images));
}

inline std::vector<WhiteheadAuto> build_whitehead_autos(const Alphabet& a, bool cutsOnly) {
  int n = a.size();
  std::vector<WhiteheadAuto> out;

  if (!cutsOnly) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      for (uint32_t signs = 0; signs < (1u << n); ++signs) {
        std::vector<Word> im(n, Word::identity(a));
        std::vector<Word> inv(n, Word::identity(a));
        for (int i = 0; i < n; ++i) {
          bool neg = (signs >> i) & 1;
          im[i] = Word::letter(a, lit(perm[i], neg));
          inv[perm[i]] = Word::letter(a, lit(i, neg));
        }
        out.push_back({Morphism(a, std::move(im)), Morphism(a, std::move(inv)), false});
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  for (Lit mult = 0; mult < a.lit_count(); ++mult) {
    std::vector<Lit> rest;
    for (Lit c = 0; c < a.lit_count(); ++c)
      if (lit_letter(c) != lit_letter(mult)) rest.push_back(c);
    for (uint32_t mask = 1; mask < (1u << rest.size()); ++mask) {
      uint64_t cut = uint64_t(1) << mult;
      for (size_t j = 0; j < rest.size(); ++j)
        if ((mask >> j) & 1) cut |= uint64_t(1) << rest[j];
      uint64_t invCut = (cut & ~(uint64_t(1) << mult)) | (uint64_t(1) << lit_inverse(mult));
      out.push_back({cut_morphism(a, mult, cut),
                     cut_morphism(a, lit_inverse(mult), invCut), true});
    }
  }

  for (const WhiteheadAuto& w : out) {
    if (!compose(w.fwd, w.inv).is_identity() || !compose(w.inv, w.fwd).is_identity())
      throw Error("whitehead generator failed inversion check");
  }
  return out;
}

}  // namespace detail

inline const std::vector<WhiteheadAuto>& whitehead_autos(const Alphabet& a) {
  if (a.size() > 6) throw BudgetError("whitehead-rank", "rank " + std::to_string(a.size()));
  static std::map<int, std::vector<WhiteheadAuto>> cache;
  auto it = cache.find(a.size());
  if (it == cache.end())
    it = cache.emplace(a.size(), detail::build_whitehead_autos(a, false)).first;
  return it->second;
}

inline const std::vector<WhiteheadAuto>& whitehead_cut_autos(const Alphabet& a) {
  if (a.size() > 6) throw BudgetError("whitehead-rank", "rank " + std::to_string(a.size()));
  static std::map<int, std::vector<WhiteheadAuto>> cache;
  auto it = cache.find(a.size());
  if (it == cache.end())
    it = cache.emplace(a.size(), detail::build_whitehead_autos(a, true)).first;
  return it->second;
}

inline std::vector<Word> apply_tuple(const Morphism& m, const std::vector<Word>& tuple) {
  std::vector<Word> out;
  out.reserve(tuple.size());
  for (const Word& w : tuple) out.push_back(apply(m, w));
  return out;
}

inline size_t total_length(const std::vector<Word>& tuple) {
  size_t s = 0;
  for (const Word& w : tuple) s += w.length();
  return s;
}

struct WhiteheadBudget {
  int maxLevelVertices = 50000;
  int maxTotalLength = 16;
  int maxRank = 3;
};

struct Minimization {
  std::vector<Word> tuple;
  Morphism toMin;    // carries the input tuple onto the minimal one
  Morphism fromMin;  // its inverse
  std::vector<int> chain;  // indices into whitehead_autos, applied left to right
};

namespace detail {

inline std::string tuple_key(const std::vector<Word>& tuple) {
  std::string k;
  for (const Word& w : tuple) {
    k += to_string(w);
    k += '\n';
  }
  return k;
}

// Everything reachable from start through length-preserving generators.
// Stops early when some generator strictly shrinks a reached tuple.
struct Level {
  std::vector<std::vector<Word>> tuples;
  std::vector<Morphism> toV, fromV;
  std::vector<int> parent, parentAuto;
  std::vector<std::array<int, 3>> nonTree;  // from, generator, to
  bool descended = false;
  int descendFrom = -1;
  int descendAuto = -1;
};

inline Level explore_level(const Alphabet& a, const std::vector<Word>& start,
                           const WhiteheadBudget& budget) {
  const auto& autos = whitehead_autos(a);
  size_t len = total_length(start);
  Level lev;
  std::unordered_map<std::string, int> seen;
  lev.tuples.push_back(start);
  lev.toV.push_back(Morphism::identity(a));
  lev.fromV.push_back(Morphism::identity(a));
  lev.parent.push_back(-1);
  lev.parentAuto.push_back(-1);
  seen.emplace(tuple_key(start), 0);
  for (size_t qi = 0; qi < lev.tuples.size(); ++qi) {
    for (size_t ai = 0; ai < autos.size(); ++ai) {
      std::vector<Word> next = apply_tuple(autos[ai].fwd, lev.tuples[qi]);
      size_t nlen = total_length(next);
      if (nlen > len) continue;
      if (nlen < len) {
        lev.descended = true;
        lev.descendFrom = static_cast<int>(qi);
        lev.descendAuto = static_cast<int>(ai);
        return lev;
      }
      auto [it, inserted] = seen.try_emplace(tuple_key(next),
                                             static_cast<int>(lev.tuples.size()));
      if (inserted) {
        if (lev.tuples.size() >= static_cast<size_t>(budget.maxLevelVertices))
          throw BudgetError("level-vertices",
                            "more than " + std::to_string(budget.maxLevelVertices) +
                                " tuples of equal length");
        lev.toV.push_back(compose(lev.toV[qi], autos[ai].fwd));
        lev.fromV.push_back(compose(autos[ai].inv, lev.fromV[qi]));
        lev.parent.push_back(static_cast<int>(qi));
        lev.parentAuto.push_back(static_cast<int>(ai));
        lev.tuples.push_back(std::move(next));
      } else {
        lev.nonTree.push_back({static_cast<int>(qi), static_cast<int>(ai), it->second});
      }
    }
  }
  return lev;
}

}  // namespace detail

inline Minimization minimize_tuple(const Alphabet& a, std::vector<Word> tuple,
                                   const WhiteheadBudget& budget = {}) {
  for (const Word& w : tuple) require_same(w.alphabet(), a);
  if (a.size() > budget.maxRank)
    throw BudgetError("whitehead-rank", "rank " + std::to_string(a.size()));
  if (total_length(tuple) > static_cast<size_t>(budget.maxTotalLength))
    throw BudgetError("tuple-length",
                      "total length " + std::to_string(total_length(tuple)));

  const auto& autos = whitehead_autos(a);
  Morphism toMin = Morphism::identity(a);
  Morphism fromMin = Morphism::identity(a);
  std::vector<int> chain;
  auto step = [&](int idx) {
    tuple = apply_tuple(autos[idx].fwd, tuple);
    toMin = compose(toMin, autos[idx].fwd);
    fromMin = compose(autos[idx].inv, fromMin);
    chain.push_back(idx);
  };

  for (;;) {
    for (;;) {
      size_t cur = total_length(tuple);
      int best = -1;
      size_t bestLen = cur;
      for (size_t ai = 0; ai < autos.size(); ++ai) {
        size_t len = total_length(apply_tuple(autos[ai].fwd, tuple));
        if (len < bestLen) {
          bestLen = len;
          best = static_cast<int>(ai);
        }
      }
      if (best < 0) break;
      step(best);
    }
    detail::Level lev = detail::explore_level(a, tuple, budget);
    if (!lev.descended) return {std::move(tuple), toMin, fromMin, std::move(chain)};
    std::vector<int> path;
    for (int v = lev.descendFrom; v > 0; v = lev.parent[v]) path.push_back(lev.parentAuto[v]);
    std::reverse(path.begin(), path.end());
    for (int idx : path) step(idx);
    step(lev.descendAuto);
  }
}

// Generators of the group of automorphisms fixing every word of the tuple.
// Identity generators are dropped; every survivor is checked against the
// input tuple before being returned.
inline std::vector<Morphism> stabilizer_generators(const Alphabet& a,
                                                   const std::vector<Word>& tuple,
                                                   const WhiteheadBudget& budget = {}) {
  Minimization m = minimize_tuple(a, tuple, budget);
  detail::Level lev = detail::explore_level(a, m.tuple, budget);
  if (lev.descended) throw Error("descent below a verified minimal tuple");
  const auto& autos = whitehead_autos(a);
  std::vector<Morphism> gens;
  for (auto& [u, ai, v] : lev.nonTree) {
    Morphism g = compose(compose(lev.toV[u], autos[ai].fwd), lev.fromV[v]);
    Morphism conj = compose(compose(m.toMin, g), m.fromMin);
    if (conj.is_identity()) continue;
    bool dup = false;
    for (const Morphism& have : gens)
      if (have == conj) {
        dup = true;
        break;
      }
    if (dup) continue;
    for (const Word& w : tuple)
      if (apply(conj, w) != w) throw Error("stabilizer generator fails to fix the tuple");
    gens.push_back(std::move(conj));
  }
  return gens;
}

}  // namespace freefix
