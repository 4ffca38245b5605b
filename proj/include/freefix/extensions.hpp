#pragma once

// Overgroup families of a subgroup inside its ambient free group: the fringe
// (all folded quotients of the subgroup's graph) and the algebraic extensions
// (fringe members with no proper free factor among the other members). Also
// the free-factor test itself, by edge-count descent over cut automorphisms.

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "stallings.hpp"
#include "whitehead.hpp"
#include "words.hpp"

namespace freefix {

struct ExtensionSet {
  std::vector<SubgroupGraph> members;
};

namespace detail {

inline void for_each_partition(int V, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> block(V, 0);
  auto rec = [&](auto&& self, int i, int maxUsed) -> void {
    if (i == V) {
      fn(block);
      return;
    }
    for (int b = 0; b <= maxUsed + 1; ++b) {
      block[i] = b;
      self(self, i + 1, std::max(maxUsed, b));
    }
  };
  rec(rec, 0, -1);
}

}  // namespace detail

inline ExtensionSet fringe(const SubgroupGraph& g, int vertexCap = 8) {
  if (g.vertex_count() > vertexCap)
    throw BudgetError("fringe-vertices",
                      std::to_string(g.vertex_count()) + " vertices, cap " +
                          std::to_string(vertexCap));
  std::unordered_map<std::string, size_t> seen;
  std::vector<SubgroupGraph> members;
  auto add = [&](SubgroupGraph q) {
    auto [it, inserted] = seen.try_emplace(q.canonical_key(), members.size());
    if (inserted) members.push_back(std::move(q));
  };
  add(g);
  detail::for_each_partition(g.vertex_count(), [&](const std::vector<int>& block) {
    GraphBuilder b(g);
    std::vector<int> leader(g.vertex_count(), -1);
    bool proper = false;
    for (int v = 0; v < g.vertex_count(); ++v) {
      int& l = leader[block[v]];
      if (l < 0) {
        l = v;
      } else {
        b.merge(l, v);
        proper = true;
      }
    }
    if (proper) add(b.finish());
  });
  std::sort(members.begin(), members.end(),
            [](const SubgroupGraph& x, const SubgroupGraph& y) {
              if (x.vertex_count() != y.vertex_count())
                return x.vertex_count() > y.vertex_count();
              return x.canonical_key() < y.canonical_key();
            });
  return {std::move(members)};
}

// Whether h is a free factor of k (possibly improperly); requires h <= k.
inline bool is_free_factor(const SubgroupGraph& h, const SubgroupGraph& k,
                           int maxRank = 6) {
  require_same(h.alphabet(), k.alphabet());
  if (!subgroup_le(h, k)) throw DomainError("free factor test needs a subgroup");
  if (h == k) return true;
  if (h.rank() == 0) return true;
  if (h.rank() >= k.rank()) return false;
  if (k.rank() > maxRank)
    throw BudgetError("free-factor-rank", "ambient rank " + std::to_string(k.rank()));

  Alphabet target = basis_alphabet(k);
  SubgroupGraph cur = rewrite_in(h, k);
  const auto& cuts = whitehead_cut_autos(target);
  for (;;) {
    int curEdges = cur.edge_count();
    int best = -1;
    int bestEdges = curEdges;
    for (size_t ai = 0; ai < cuts.size(); ++ai) {
      int e = image(cur, cuts[ai].fwd).edge_count();
      if (e < bestEdges) {
        bestEdges = e;
        best = static_cast<int>(ai);
      }
    }
    if (best < 0) return cur.vertex_count() == 1;
    cur = image(cur, cuts[best].fwd);
  }
}

inline ExtensionSet algebraic_extensions(const SubgroupGraph& g, int vertexCap = 8,
                                         int freeFactorMaxRank = 6) {
  ExtensionSet fr = fringe(g, vertexCap);
  std::vector<SubgroupGraph> kept;
  for (const SubgroupGraph& k : fr.members) {
    bool algebraic = true;
    for (const SubgroupGraph& l : fr.members) {
      if (l == k || !subgroup_le(l, k)) continue;
      if (is_free_factor(l, k, freeFactorMaxRank)) {
        algebraic = false;
        break;
      }
    }
    if (algebraic) kept.push_back(k);
  }
  return {std::move(kept)};
}

}  // namespace freefix
