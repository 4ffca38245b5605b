#pragma once

// Fixed words and fixed subgroups of endomorphism families: bounded
// enumeration of fixed words, exactly solvable special cases (identity, inner,
// idempotent), iterated stable images, bounded retraction search, and
// reduction of a family without changing its bounded fixed set.

#include <algorithm>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "stallings.hpp"
#include "words.hpp"

namespace freefix {

// All words of length <= maxLen fixed by every member of the family, shortest
// first. Images are maintained incrementally along the search tree; a branch
// is cut once the image provably cannot shrink back under the length cap.
inline std::vector<Word> enumerate_fixed_family(const Alphabet& a,
                                                const std::vector<Morphism>& family,
                                                int maxLen) {
  std::vector<const Morphism*> ms;
  for (const Morphism& m : family) {
    require_same(m.alphabet(), a);
    if (!m.is_identity()) ms.push_back(&m);
  }
  size_t M = ms.size();
  std::vector<size_t> grow(M, 1);
  for (size_t j = 0; j < M; ++j)
    for (int i = 0; i < a.size(); ++i)
      grow[j] = std::max(grow[j], ms[j]->image(i).length());

  std::vector<std::vector<Lit>> img(M);
  std::vector<Lit> path;
  std::vector<Word> out;

  struct Undo {
    std::vector<Lit> popped;
    size_t pushed = 0;
  };

  auto rec = [&](auto&& self) -> void {
    bool fixed = true;
    for (size_t j = 0; j < M; ++j)
      if (img[j] != path) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(Word(a, path));
    if (static_cast<int>(path.size()) >= maxLen) return;

    for (Lit c = 0; c < a.lit_count(); ++c) {
      if (!path.empty() && c == lit_inverse(path.back())) continue;
      path.push_back(c);
      std::vector<Undo> undos(M);
      bool viable = true;
      for (size_t j = 0; j < M; ++j) {
        Undo& u = undos[j];
        auto feed = [&](Lit x) {
          if (u.pushed == 0 && !img[j].empty() && img[j].back() == lit_inverse(x)) {
            u.popped.push_back(img[j].back());
            img[j].pop_back();
          } else {
            img[j].push_back(x);
            ++u.pushed;
          }
        };
        const Word& im = ms[j]->image(lit_letter(c));
        if (lit_positive(c)) {
          for (Lit x : im.lits()) feed(x);
        } else {
          for (auto it = im.lits().rbegin(); it != im.lits().rend(); ++it)
            feed(lit_inverse(*it));
        }
        size_t slack = grow[j] * (maxLen - path.size());
        if (img[j].size() > static_cast<size_t>(maxLen) + slack) viable = false;
      }
      if (viable) self(self);
      for (size_t j = 0; j < M; ++j) {
        Undo& u = undos[j];
        img[j].resize(img[j].size() - u.pushed);
        for (auto it = u.popped.rbegin(); it != u.popped.rend(); ++it)
          img[j].push_back(*it);
      }
      path.pop_back();
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end(), lenlex_less);
  return out;
}

// The word w with m equal to conjugation x -> w^-1 x w, when there is one.
inline std::optional<Word> inner_conjugator(const Morphism& m) {
  const Alphabet& a = m.alphabet();
  for (int i = 0; i < a.size(); ++i) {
    const Word& im = m.image(i);
    for (size_t j = 0; j <= im.length(); ++j) {
      std::vector<Lit> suf(im.lits().end() - j, im.lits().end());
      Word cand(a, std::move(suf));
      if (Morphism::inner(cand) == m) return cand;
    }
  }
  return std::nullopt;
}

struct ElementRoot {
  Word base;
  int exponent;
};

// Writes w as z^k with maximal k, so z generates the centralizer of w.
inline ElementRoot element_root(const Word& w) {
  if (w.empty()) throw DomainError("the empty word has no root");
  auto lits = w.lits();
  size_t i = 0, j = lits.size();
  while (j - i >= 2 && lits[i] == lit_inverse(lits[j - 1])) {
    ++i;
    --j;
  }
  Word g(w.alphabet(), std::vector<Lit>(lits.begin(), lits.begin() + i));
  Word c(w.alphabet(), std::vector<Lit>(lits.begin() + i, lits.begin() + j));
  auto [u, k] = root(c);
  return {concat(concat(g, u), g.inverse()), k};
}

// Exact fixed subgroup when the morphism falls in a solvable class: the
// identity, an inner automorphism, or an idempotent.
inline std::optional<SubgroupGraph> exact_fixed_subgroup(const Morphism& m) {
  const Alphabet& a = m.alphabet();
  if (m.is_identity()) return full_group(a);
  if (auto w = inner_conjugator(m)) {
    if (w->empty()) return full_group(a);
    return build_subgroup(a, {element_root(*w).base});
  }
  if (compose(m, m) == m) return image(full_group(a), m);
  return std::nullopt;
}

struct StableImage {
  SubgroupGraph graph;
  int iterations;
  bool stabilized;
};

inline StableImage stable_image(const Morphism& m, int maxIter = 8) {
  SubgroupGraph prev = full_group(m.alphabet());
  for (int iter = 1; iter <= maxIter; ++iter) {
    SubgroupGraph next = image(prev, m);
    if (next == prev) return {std::move(prev), iter - 1, true};
    prev = std::move(next);
  }
  return {std::move(prev), maxIter, false};
}

struct RetractionSearch {
  std::optional<Morphism> retraction;
  int bound;
  bool complete;
};

// Looks for an idempotent endomorphism with image exactly h, taking letter
// images among members of h of length at most bound. complete is false when
// the node limit cut the search short, so absence proves nothing then.
inline RetractionSearch find_retraction(const SubgroupGraph& h, int bound = 10,
                                        long long nodeLimit = 2000000) {
  const Alphabet& a = h.alphabet();
  int n = a.size();
  auto finish = [&](Morphism rho) -> RetractionSearch {
    if (!(compose(rho, rho) == rho)) throw Error("retraction candidate is not idempotent");
    if (!(image(full_group(a), rho) == h)) throw Error("retraction image mismatch");
    return {std::move(rho), bound, true};
  };

  if (h.vertex_count() == 1) {
    std::vector<Word> im;
    for (int i = 0; i < n; ++i) {
      bool present = h.transition(0, lit(i)) == 0;
      im.push_back(present ? Word::letter(a, lit(i)) : Word::identity(a));
    }
    return finish(Morphism(a, std::move(im)));
  }

  std::vector<Word> cands = loops_up_to(h, bound);
  std::vector<Word> basisWords = basis(h);
  std::vector<std::vector<size_t>> due(n);
  for (size_t bi = 0; bi < basisWords.size(); ++bi) {
    int top = 0;
    for (Lit c : basisWords[bi].lits()) top = std::max(top, lit_letter(c));
    due[top].push_back(bi);
  }

  std::vector<Word> assigned(n, Word::identity(a));
  long long nodes = 0;
  bool complete = true;
  std::optional<Morphism> found;
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) {
      found = Morphism(a, assigned);
      return true;
    }
    for (const Word& cand : cands) {
      if (++nodes > nodeLimit) {
        complete = false;
        return false;
      }
      assigned[i] = cand;
      bool ok = true;
      for (size_t bi : due[i]) {
        const Word& bw = basisWords[bi];
        if (!(substitute(bw, assigned, a) == bw)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, i + 1)) return true;
      if (!complete) return false;
    }
    assigned[i] = Word::identity(a);
    return false;
  };
  if (rec(rec, 0)) return finish(std::move(*found));
  return {std::nullopt, bound, complete};
}

// Subgroup generated by every word of length <= maxLen fixed by the whole
// family. Families of identities stand for the full group directly.
inline SubgroupGraph fix_approx(const Alphabet& a, const std::vector<Morphism>& family,
                                int maxLen) {
  bool allIdentity = true;
  for (const Morphism& m : family)
    if (!m.is_identity()) {
      allIdentity = false;
      break;
    }
  if (allIdentity) return full_group(a);
  return build_subgroup(a, enumerate_fixed_family(a, family, maxLen));
}

// Greedy subfamily with the same fixed words up to maxLen: repeatedly take
// the member that shrinks the running fixed set the most.
inline std::vector<Morphism> reduce_family(const Alphabet& a,
                                           const std::vector<Morphism>& family,
                                           int maxLen) {
  std::vector<Morphism> uniq;
  for (const Morphism& m : family) {
    require_same(m.alphabet(), a);
    bool dup = false;
    for (const Morphism& u : uniq)
      if (u == m) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(m);
  }

  struct FixedSet {
    bool universe = false;
    std::vector<std::string> words;
  };
  std::vector<FixedSet> sets;
  for (const Morphism& m : uniq) {
    if (m.is_identity()) {
      sets.push_back({true, {}});
    } else {
      std::vector<std::string> ws;
      for (const Word& w : enumerate_fixed_family(a, {m}, maxLen))
        ws.push_back(to_string(w));
      std::sort(ws.begin(), ws.end());
      sets.push_back({false, std::move(ws)});
    }
  }

  auto meet = [](const FixedSet& x, const FixedSet& y) -> FixedSet {
    if (x.universe) return y;
    if (y.universe) return x;
    FixedSet r;
    std::set_intersection(x.words.begin(), x.words.end(), y.words.begin(),
                          y.words.end(), std::back_inserter(r.words));
    return r;
  };
  auto same = [](const FixedSet& x, const FixedSet& y) {
    if (x.universe || y.universe) return x.universe == y.universe;
    return x.words == y.words;
  };

  FixedSet target{true, {}};
  for (const FixedSet& s : sets) target = meet(target, s);

  FixedSet cur{true, {}};
  std::vector<char> used(uniq.size(), 0);
  std::vector<Morphism> chosen;
  while (!same(cur, target)) {
    int best = -1;
    FixedSet bestSet{true, {}};
    for (size_t j = 0; j < uniq.size(); ++j) {
      if (used[j]) continue;
      FixedSet cand = meet(cur, sets[j]);
      bool better;
      if (best < 0)
        better = true;
      else if (bestSet.universe)
        better = !cand.universe;
      else if (cand.universe)
        better = false;
      else
        better = cand.words.size() < bestSet.words.size();
      if (better) {
        best = static_cast<int>(j);
        bestSet = std::move(cand);
      }
    }
    used[best] = 1;
    chosen.push_back(uniq[best]);
    cur = std::move(bestSet);
  }
  return chosen;
}

}  // namespace freefix
