#pragma once

// Decision pipelines for the two questions "is this subgroup the fixed
// subgroup of a family of automorphisms / of endomorphisms", with explicit
// soundness levels. CertifiedYes carries witnesses whose fixed subgroups are
// known exactly and intersect to the input; CertifiedNo carries a word that
// every candidate family must fix although it lies outside the input;
// Evidence carries the best bound computed within the configured budgets.

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "extensions.hpp"
#include "fixpoints.hpp"
#include "stallings.hpp"
#include "whitehead.hpp"
#include "words.hpp"

namespace freefix {

struct BudgetRecord {
  int maxWordLen = 10;
  int fringeVertexCap = 8;
  int levelMaxVertices = 50000;
  int levelMaxTotalLength = 16;
  int levelMaxRank = 3;
  int retractionBound = 10;
  int stableImageMaxIter = 8;
  int freeFactorMaxRank = 6;
};

enum class Soundness { CertifiedYes, CertifiedNo, Evidence };
enum class Question { AutoFixed, EndoFixed };

struct WitnessFix {
  Morphism morphism;
  std::optional<SubgroupGraph> fixedSubgroup;
};

struct Verdict {
  Question question;
  Soundness soundness;
  std::string rule;
  Alphabet alphabet;
  std::vector<Word> subgroupBasis;
  std::vector<WitnessFix> witnesses;
  std::optional<Word> witnessWord;
  std::vector<Morphism> stabilizerGens;
  std::optional<SubgroupGraph> closureLower;
  std::optional<SubgroupGraph> closureUpper;
  bool upperCaveat = false;
  BudgetRecord budgets;
};

inline WhiteheadBudget whitehead_budget(const BudgetRecord& b) {
  return {b.levelMaxVertices, b.levelMaxTotalLength, b.levelMaxRank};
}

inline Verdict auto_fixed_verdict(const SubgroupGraph& h, const BudgetRecord& budgets = {}) {
  const Alphabet& a = h.alphabet();
  Verdict v{Question::AutoFixed, Soundness::Evidence, "", a, basis(h),
            {},  {},
            {},  std::nullopt,
            std::nullopt, false,
            budgets};

  if (h == full_group(a)) {
    v.soundness = Soundness::CertifiedYes;
    v.rule = "identity";
    v.witnesses.push_back({Morphism::identity(a), full_group(a)});
    return v;
  }

  if (h.rank() == 1) {
    const Word& g0 = v.subgroupBasis[0];
    if (element_root(g0).exponent == 1) {
      v.soundness = Soundness::CertifiedYes;
      v.rule = "inner-centralizer";
      v.witnesses.push_back({Morphism::inner(g0), h});
      return v;
    }
  }

  // A proper power in h whose root falls outside h is fixed whenever the
  // power is, so it defeats every candidate family at once.
  for (const Word& w : loops_up_to(h, budgets.maxWordLen)) {
    if (w.empty()) continue;
    ElementRoot er = element_root(w);
    if (er.exponent >= 2 && !h.contains(er.base)) {
      v.soundness = Soundness::CertifiedNo;
      v.rule = "root";
      v.witnessWord = er.base;
      return v;
    }
  }

  std::vector<Morphism> gens = stabilizer_generators(a, v.subgroupBasis, whitehead_budget(budgets));
  v.stabilizerGens = gens;

  if (gens.empty()) {
    for (Lit c = 0; c < a.lit_count(); ++c) {
      Word w = Word::letter(a, c);
      if (!h.contains(w)) {
        v.soundness = Soundness::CertifiedNo;
        v.rule = "acl-membership";
        v.witnessWord = w;
        return v;
      }
    }
    throw Error("proper subgroup contains every letter");
  }

  std::vector<Word> fixedWords = enumerate_fixed_family(a, gens, budgets.maxWordLen);
  for (const Word& w : fixedWords) {
    if (!h.contains(w)) {
      v.soundness = Soundness::CertifiedNo;
      v.rule = "acl-membership";
      v.witnessWord = w;
      return v;
    }
  }

  std::vector<Word> genWords = v.subgroupBasis;
  genWords.insert(genWords.end(), fixedWords.begin(), fixedWords.end());
  v.soundness = Soundness::Evidence;
  v.rule = "evidence-acl";
  v.closureLower = build_subgroup(a, genWords);
  return v;
}

struct ClosureFactor {
  SubgroupGraph member;
  std::optional<SubgroupGraph> factor;
  std::string rule;
  std::vector<WitnessFix> witnesses;
  bool confirmed = false;
};

struct EndoClosureAnalysis {
  SubgroupGraph upper;
  bool caveat = false;
  std::vector<ClosureFactor> factors;
};

// Upper bound for the smallest endomorphism-fixed subgroup containing h: every
// algebraic extension that is a verified retract contributes its retraction's
// fixed subgroup, sharpened to an exact intersection when the pointwise
// stabilizer of h inside the extension consists of solvable cases only.
inline EndoClosureAnalysis endo_closure_analysis(const SubgroupGraph& h,
                                                 const BudgetRecord& budgets = {}) {
  const Alphabet& a = h.alphabet();
  ExtensionSet ae = algebraic_extensions(h, budgets.fringeVertexCap, budgets.freeFactorMaxRank);
  std::vector<ClosureFactor> factors;

  for (const SubgroupGraph& k : ae.members) {
    RetractionSearch rs = find_retraction(k, budgets.retractionBound);
    if (!rs.retraction) {
      factors.push_back({k, std::nullopt, "no-retraction", {}, false});
      continue;
    }
    Morphism rho = *rs.retraction;
    ClosureFactor f{k, std::nullopt, "retract", {}, true};
    f.witnesses.push_back({rho, k});

    SubgroupGraph ht = rewrite_in(h, k);
    Alphabet ka = basis_alphabet(k);
    bool refined = false;
    if (!(ht == full_group(ka))) {
      try {
        std::vector<Morphism> gens =
            stabilizer_generators(ka, basis(ht), whitehead_budget(budgets));
        std::vector<SubgroupGraph> exactFixes;
        bool allExact = true;
        for (const Morphism& g : gens) {
          auto ef = exact_fixed_subgroup(g);
          if (!ef) {
            allExact = false;
            break;
          }
          exactFixes.push_back(std::move(*ef));
        }
        if (allExact) {
          SubgroupGraph meet = full_group(ka);
          for (const SubgroupGraph& ef : exactFixes) meet = intersect(meet, ef);
          std::vector<Word> kb = basis(k);
          auto lift_word = [&](const Word& w) { return substitute(w, kb, a); };
          std::vector<Word> factorWords;
          for (const Word& b : basis(meet)) factorWords.push_back(lift_word(b));

          std::vector<WitnessFix> ws;
          ws.push_back({rho, k});
          SpanningData sd = spanning(k);
          for (size_t gi = 0; gi < gens.size(); ++gi) {
            std::vector<Word> images;
            for (int i = 0; i < a.size(); ++i) {
              Word down = rewrite_word_in(k, sd, ka, apply(rho, Word::letter(a, lit(i))));
              images.push_back(lift_word(apply(gens[gi], down)));
            }
            std::vector<Word> fixWords;
            for (const Word& b : basis(exactFixes[gi])) fixWords.push_back(lift_word(b));
            ws.push_back({Morphism(a, std::move(images)), build_subgroup(a, fixWords)});
          }
          f.rule = "conjugated-exact";
          f.factor = build_subgroup(a, factorWords);
          f.witnesses = std::move(ws);
          refined = true;
        }
      } catch (const BudgetError&) {
      }
    }
    if (!refined) f.factor = k;
    factors.push_back(std::move(f));
  }

  std::optional<SubgroupGraph> upper;
  for (const ClosureFactor& f : factors) {
    if (!f.confirmed) continue;
    upper = upper ? intersect(*upper, *f.factor) : *f.factor;
  }
  if (upper) return {std::move(*upper), false, std::move(factors)};
  return {full_group(a), true, std::move(factors)};
}

// Shrinks a witness family while keeping the intersection of their fixed
// subgroups equal to h: repeatedly take the first witness whose contribution
// is minimal under inclusion.
inline std::vector<WitnessFix> reduce_witnesses(const SubgroupGraph& h,
                                                const std::vector<WitnessFix>& all) {
  const Alphabet& a = h.alphabet();
  std::vector<WitnessFix> uniq;
  for (const WitnessFix& w : all) {
    bool dup = false;
    for (const WitnessFix& u : uniq)
      if (u.morphism == w.morphism) {
        dup = true;
        break;
      }
    if (dup) continue;
    if (!w.fixedSubgroup) throw Error("witness without a known fixed subgroup");
    uniq.push_back(w);
  }

  SubgroupGraph cur = full_group(a);
  std::vector<char> used(uniq.size(), 0);
  std::vector<WitnessFix> chosen;
  while (!(cur == h)) {
    std::vector<std::optional<SubgroupGraph>> cands(uniq.size());
    for (size_t j = 0; j < uniq.size(); ++j)
      if (!used[j]) cands[j] = intersect(cur, *uniq[j].fixedSubgroup);
    int best = -1;
    for (size_t j = 0; j < uniq.size() && best < 0; ++j) {
      if (used[j]) continue;
      bool minimal = true;
      for (size_t j2 = 0; j2 < uniq.size(); ++j2) {
        if (j2 == j || used[j2]) continue;
        if (subgroup_le(*cands[j2], *cands[j]) && !(*cands[j2] == *cands[j])) {
          minimal = false;
          break;
        }
      }
      if (minimal) best = static_cast<int>(j);
    }
    if (best < 0) throw Error("witness reduction ran out of candidates");
    used[best] = 1;
    chosen.push_back(uniq[best]);
    cur = *cands[best];
  }

  SubgroupGraph check = full_group(a);
  for (const WitnessFix& c : chosen) check = intersect(check, *c.fixedSubgroup);
  if (!(check == h)) throw Error("reduced witness family no longer cuts to the subgroup");
  return chosen;
}

inline Verdict endo_fixed_verdict(const SubgroupGraph& h, const BudgetRecord& budgets = {}) {
  const Alphabet& a = h.alphabet();
  Verdict v{Question::EndoFixed, Soundness::Evidence, "", a, basis(h),
            {},  {},
            {},  std::nullopt,
            std::nullopt, false,
            budgets};

  if (h.is_trivial()) {
    std::vector<Word> im(static_cast<size_t>(a.size()), Word::identity(a));
    v.soundness = Soundness::CertifiedYes;
    v.rule = "kill-all";
    v.witnesses.push_back({Morphism(a, std::move(im)), trivial_subgroup(a)});
    return v;
  }

  if (h == full_group(a)) {
    v.soundness = Soundness::CertifiedYes;
    v.rule = "identity";
    v.witnesses.push_back({Morphism::identity(a), full_group(a)});
    return v;
  }

  RetractionSearch rs = find_retraction(h, budgets.retractionBound);
  if (rs.retraction) {
    v.soundness = Soundness::CertifiedYes;
    v.rule = "retraction";
    v.witnesses.push_back({*rs.retraction, h});
    return v;
  }

  for (const Word& w : loops_up_to(h, budgets.maxWordLen)) {
    if (w.empty()) continue;
    ElementRoot er = element_root(w);
    if (er.exponent >= 2 && !h.contains(er.base)) {
      v.soundness = Soundness::CertifiedNo;
      v.rule = "root";
      v.witnessWord = er.base;
      return v;
    }
  }

  EndoClosureAnalysis an = endo_closure_analysis(h, budgets);
  if (an.upper == h) {
    std::vector<WitnessFix> all;
    for (const ClosureFactor& f : an.factors)
      if (f.confirmed)
        all.insert(all.end(), f.witnesses.begin(), f.witnesses.end());
    v.soundness = Soundness::CertifiedYes;
    v.rule = "eq1-intersection";
    v.witnesses = reduce_witnesses(h, all);
    return v;
  }

  v.soundness = Soundness::Evidence;
  v.rule = "evidence-ecl";
  v.closureUpper = an.upper;
  v.upperCaveat = an.caveat;
  return v;
}

// ---- serialization ----

inline const char* to_text(Soundness s) {
  switch (s) {
    case Soundness::CertifiedYes: return "CertifiedYes";
    case Soundness::CertifiedNo: return "CertifiedNo";
    default: return "Evidence";
  }
}

inline const char* to_text(Question q) {
  return q == Question::AutoFixed ? "auto-fixed" : "endo-fixed";
}

inline Soundness soundness_from_text(const std::string& s) {
  if (s == "CertifiedYes") return Soundness::CertifiedYes;
  if (s == "CertifiedNo") return Soundness::CertifiedNo;
  if (s == "Evidence") return Soundness::Evidence;
  throw ParseError("unknown soundness: " + s);
}

inline Question question_from_text(const std::string& s) {
  if (s == "auto-fixed") return Question::AutoFixed;
  if (s == "endo-fixed") return Question::EndoFixed;
  throw ParseError("unknown question: " + s);
}

namespace detail {

inline nlohmann::json words_json(const std::vector<Word>& ws) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Word& w : ws) arr.push_back(to_string(w));
  return arr;
}

inline nlohmann::json morphism_json(const Morphism& m) {
  return words_json(m.images());
}

inline nlohmann::json graph_json(const SubgroupGraph& g) {
  return words_json(basis(g));
}

inline std::vector<Word> words_from_json(const Alphabet& a, const nlohmann::json& arr) {
  std::vector<Word> out;
  for (const auto& s : arr) out.push_back(parse_word(a, s.get<std::string>()));
  return out;
}

inline Morphism morphism_from_json(const Alphabet& a, const nlohmann::json& arr) {
  return Morphism(a, words_from_json(a, arr));
}

inline SubgroupGraph graph_from_json(const Alphabet& a, const nlohmann::json& arr) {
  return build_subgroup(a, words_from_json(a, arr));
}

}  // namespace detail

inline nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  j["schema"] = "freefix-verdict-1";
  j["question"] = to_text(v.question);
  j["rank"] = v.alphabet.size();
  j["subgroup"] = detail::words_json(v.subgroupBasis);
  j["soundness"] = to_text(v.soundness);
  j["rule"] = v.rule;

  nlohmann::json ws = nlohmann::json::array();
  for (const WitnessFix& w : v.witnesses) {
    nlohmann::json e;
    e["morphism"] = detail::morphism_json(w.morphism);
    e["fixed"] = w.fixedSubgroup ? detail::graph_json(*w.fixedSubgroup)
                                 : nlohmann::json(nullptr);
    ws.push_back(std::move(e));
  }
  j["witnesses"] = std::move(ws);

  j["witness_word"] =
      v.witnessWord ? nlohmann::json(to_string(*v.witnessWord)) : nlohmann::json(nullptr);

  nlohmann::json gens = nlohmann::json::array();
  for (const Morphism& m : v.stabilizerGens) gens.push_back(detail::morphism_json(m));
  j["stabilizer_generators"] = std::move(gens);

  j["closure_lower"] =
      v.closureLower ? detail::graph_json(*v.closureLower) : nlohmann::json(nullptr);
  j["closure_upper"] =
      v.closureUpper ? detail::graph_json(*v.closureUpper) : nlohmann::json(nullptr);
  j["upper_caveat"] = v.upperCaveat;

  j["budgets"] = {{"max_word_len", v.budgets.maxWordLen},
                  {"fringe_vertex_cap", v.budgets.fringeVertexCap},
                  {"level_max_vertices", v.budgets.levelMaxVertices},
                  {"level_max_total_length", v.budgets.levelMaxTotalLength},
                  {"level_max_rank", v.budgets.levelMaxRank},
                  {"retraction_bound", v.budgets.retractionBound},
                  {"stable_image_max_iter", v.budgets.stableImageMaxIter},
                  {"free_factor_max_rank", v.budgets.freeFactorMaxRank}};
  return j;
}

inline Verdict verdict_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != "freefix-verdict-1")
    throw ParseError("unknown verdict schema");
  Alphabet a(j.at("rank").get<int>());
  Verdict v{question_from_text(j.at("question").get<std::string>()),
            soundness_from_text(j.at("soundness").get<std::string>()),
            j.at("rule").get<std::string>(),
            a,
            detail::words_from_json(a, j.at("subgroup")),
            {},
            {},
            {},
            std::nullopt,
            std::nullopt,
            j.at("upper_caveat").get<bool>(),
            {}};
  for (const auto& e : j.at("witnesses")) {
    WitnessFix w{detail::morphism_from_json(a, e.at("morphism")), std::nullopt};
    if (!e.at("fixed").is_null()) w.fixedSubgroup = detail::graph_from_json(a, e.at("fixed"));
    v.witnesses.push_back(std::move(w));
  }
  if (!j.at("witness_word").is_null())
    v.witnessWord = parse_word(a, j.at("witness_word").get<std::string>());
  for (const auto& e : j.at("stabilizer_generators"))
    v.stabilizerGens.push_back(detail::morphism_from_json(a, e));
  if (!j.at("closure_lower").is_null())
    v.closureLower = detail::graph_from_json(a, j.at("closure_lower"));
  if (!j.at("closure_upper").is_null())
    v.closureUpper = detail::graph_from_json(a, j.at("closure_upper"));
  const auto& b = j.at("budgets");
  v.budgets.maxWordLen = b.at("max_word_len").get<int>();
  v.budgets.fringeVertexCap = b.at("fringe_vertex_cap").get<int>();
  v.budgets.levelMaxVertices = b.at("level_max_vertices").get<int>();
  v.budgets.levelMaxTotalLength = b.at("level_max_total_length").get<int>();
  v.budgets.levelMaxRank = b.at("level_max_rank").get<int>();
  v.budgets.retractionBound = b.at("retraction_bound").get<int>();
  v.budgets.stableImageMaxIter = b.at("stable_image_max_iter").get<int>();
  v.budgets.freeFactorMaxRank = b.at("free_factor_max_rank").get<int>();
  return v;
}

// Re-derives every claim a verdict makes from its own data. Returns the list
// of failures, empty when the verdict checks out.
inline std::vector<std::string> revalidate(const Verdict& v) {
  std::vector<std::string> bad;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  const Alphabet& a = v.alphabet;
  SubgroupGraph h = build_subgroup(a, v.subgroupBasis);

  auto gensMatch = [&]() {
    std::vector<Morphism> fresh;
    try {
      fresh = stabilizer_generators(a, basis(h), whitehead_budget(v.budgets));
    } catch (const BudgetError&) {
      bad.push_back("stabilizer recomputation exceeded budgets");
      return;
    }
    auto contains = [](const std::vector<Morphism>& v1, const Morphism& m) {
      for (const Morphism& x : v1)
        if (x == m) return true;
      return false;
    };
    bool same = fresh.size() == v.stabilizerGens.size();
    for (const Morphism& m : fresh)
      if (!contains(v.stabilizerGens, m)) same = false;
    for (const Morphism& m : v.stabilizerGens)
      if (!contains(fresh, m)) same = false;
    need(same, "stabilizer generators changed under recomputation");
  };

  if (v.rule == "identity") {
    need(v.soundness == Soundness::CertifiedYes, "identity rule must certify yes");
    need(h == full_group(a), "identity rule needs the whole group");
    need(v.witnesses.size() == 1 && v.witnesses[0].morphism.is_identity(),
         "identity rule needs the identity witness");
  } else if (v.rule == "inner-centralizer") {
    need(v.soundness == Soundness::CertifiedYes, "inner rule must certify yes");
    need(h.rank() == 1, "inner rule needs rank one");
    need(!v.subgroupBasis.empty() && element_root(v.subgroupBasis[0]).exponent == 1,
         "inner rule needs a non-power generator");
    need(v.witnesses.size() == 1 &&
             v.witnesses[0].morphism == Morphism::inner(v.subgroupBasis[0]),
         "inner rule witness mismatch");
  } else if (v.rule == "kill-all") {
    need(v.soundness == Soundness::CertifiedYes, "kill-all rule must certify yes");
    need(h.is_trivial(), "kill-all rule needs the trivial subgroup");
    bool allEmpty = v.witnesses.size() == 1;
    if (allEmpty)
      for (const Word& im : v.witnesses[0].morphism.images())
        if (!im.empty()) allEmpty = false;
    need(allEmpty, "kill-all witness must erase every letter");
  } else if (v.rule == "retraction") {
    need(v.soundness == Soundness::CertifiedYes, "retraction rule must certify yes");
    need(v.witnesses.size() == 1, "retraction rule needs one witness");
    if (v.witnesses.size() == 1) {
      const Morphism& r = v.witnesses[0].morphism;
      need(compose(r, r) == r, "retraction witness is not idempotent");
      need(image(full_group(a), r) == h, "retraction witness image differs from the subgroup");
    }
  } else if (v.rule == "root") {
    need(v.soundness == Soundness::CertifiedNo, "root rule must certify no");
    need(v.witnessWord.has_value(), "root rule needs a witness word");
    if (v.witnessWord) {
      const Word& z = *v.witnessWord;
      need(!z.empty() && !h.contains(z), "root witness must lie outside the subgroup");
      bool powered = false;
      for (int k = 2; static_cast<size_t>(k) * std::max<size_t>(z.length(), 1) <=
                          static_cast<size_t>(v.budgets.maxWordLen);
           ++k)
        if (h.contains(power(z, k))) powered = true;
      need(powered, "no short power of the root witness lies in the subgroup");
    }
  } else if (v.rule == "acl-membership") {
    need(v.soundness == Soundness::CertifiedNo, "membership rule must certify no");
    gensMatch();
    need(v.witnessWord.has_value(), "membership rule needs a witness word");
    if (v.witnessWord) {
      need(!h.contains(*v.witnessWord), "membership witness must lie outside the subgroup");
      for (const Morphism& m : v.stabilizerGens)
        need(apply(m, *v.witnessWord) == *v.witnessWord,
             "membership witness is not fixed by a stabilizer generator");
    }
  } else if (v.rule == "evidence-acl") {
    need(v.soundness == Soundness::Evidence, "evidence rule must stay evidence");
    gensMatch();
    need(v.closureLower.has_value(), "evidence needs the computed lower bound");
    if (v.closureLower) {
      std::vector<Word> fixedWords =
          enumerate_fixed_family(a, v.stabilizerGens, v.budgets.maxWordLen);
      std::vector<Word> genWords = v.subgroupBasis;
      genWords.insert(genWords.end(), fixedWords.begin(), fixedWords.end());
      need(build_subgroup(a, genWords) == *v.closureLower,
           "lower bound changed under recomputation");
      for (const Word& w : fixedWords)
        need(h.contains(w), "a fixed word outside the subgroup contradicts evidence");
    }
  } else if (v.rule == "eq1-intersection") {
    need(v.soundness == Soundness::CertifiedYes, "intersection rule must certify yes");
    need(!v.witnesses.empty(), "intersection rule needs witnesses");
    std::optional<SubgroupGraph> meet;
    for (const WitnessFix& w : v.witnesses) {
      if (!w.fixedSubgroup) {
        bad.push_back("intersection witness lacks its fixed subgroup");
        continue;
      }
      for (const Word& b : basis(*w.fixedSubgroup))
        need(apply(w.morphism, b) == b, "claimed fixed subgroup is not fixed by its witness");
      for (const Word& b : v.subgroupBasis)
        need(apply(w.morphism, b) == b, "witness does not fix the subgroup");
      meet = meet ? intersect(*meet, *w.fixedSubgroup) : *w.fixedSubgroup;
    }
    need(meet && *meet == h, "witness fixed subgroups do not intersect to the subgroup");
  } else if (v.rule == "evidence-ecl") {
    need(v.soundness == Soundness::Evidence, "evidence rule must stay evidence");
    need(v.closureUpper.has_value(), "evidence needs the computed upper bound");
    if (v.closureUpper) {
      try {
        EndoClosureAnalysis an = endo_closure_analysis(h, v.budgets);
        need(an.upper == *v.closureUpper, "upper bound changed under recomputation");
        need(an.caveat == v.upperCaveat, "caveat flag changed under recomputation");
      } catch (const BudgetError&) {
        bad.push_back("closure recomputation exceeded budgets");
      }
    }
  } else {
    bad.push_back("unknown rule: " + v.rule);
  }
  return bad;
}

inline std::string render_text(const Verdict& v) {
  std::ostringstream os;
  os << "question: " << to_text(v.question) << '\n';
  os << "subgroup:";
  if (v.subgroupBasis.empty()) os << " 1";
  for (const Word& w : v.subgroupBasis) os << ' ' << to_string(w);
  os << '\n';
  os << "verdict: " << to_text(v.soundness) << '\n';
  os << "rule: " << v.rule << '\n';
  if (v.witnessWord) os << "witness word: " << to_string(*v.witnessWord) << '\n';
  for (const WitnessFix& w : v.witnesses) {
    os << "witness:\n";
    std::istringstream lines(to_string(w.morphism));
    std::string line;
    while (std::getline(lines, line)) os << "  " << line << '\n';
    if (w.fixedSubgroup) {
      os << "  fixes:";
      std::vector<Word> b = basis(*w.fixedSubgroup);
      if (b.empty()) os << " 1";
      for (const Word& x : b) os << ' ' << to_string(x);
      os << '\n';
    }
  }
  if (v.closureLower) {
    os << "closure lower bound:";
    for (const Word& x : basis(*v.closureLower)) os << ' ' << to_string(x);
    os << '\n';
  }
  if (v.closureUpper) {
    os << "closure upper bound:";
    std::vector<Word> b = basis(*v.closureUpper);
    if (b.empty()) os << " 1";
    for (const Word& x : b) os << ' ' << to_string(x);
    if (v.upperCaveat) os << "  (no extension could be confirmed)";
    os << '\n';
  }
  return os.str();
}

}  // namespace freefix
