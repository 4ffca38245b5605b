#pragma once

// Core graphs of finitely generated subgroups of a free group. Graphs are
// folded, trimmed (every non-base vertex has degree at least two), connected,
// and numbered canonically by a breadth-first sweep from the base that scans
// positive letters in order and then negative ones. Two graphs compare equal
// exactly when they describe the same subgroup.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "words.hpp"

namespace freefix {

inline std::vector<Lit> canonical_codes(const Alphabet& a) {
  std::vector<Lit> codes;
  codes.reserve(a.lit_count());
  for (int i = 0; i < a.size(); ++i) codes.push_back(lit(i));
  for (int i = 0; i < a.size(); ++i) codes.push_back(lit(i, true));
  return codes;
}

class SubgroupGraph {
 public:
  const Alphabet& alphabet() const { return alpha_; }
  int vertex_count() const { return V_; }

  // Target of the edge labeled c leaving v, or -1 when there is none.
  int transition(int v, Lit c) const { return trans_[v * alpha_.lit_count() + c]; }

  int edge_count() const {
    int d = 0;
    for (int t : trans_)
      if (t >= 0) ++d;
    return d / 2;
  }

  int rank() const { return edge_count() - V_ + 1; }
  bool is_trivial() const { return V_ == 1 && edge_count() == 0; }

  std::optional<int> trace(int from, const Word& w) const {
    require_same(alpha_, w.alphabet());
    int at = from;
    for (Lit c : w.lits()) {
      at = transition(at, c);
      if (at < 0) return std::nullopt;
    }
    return at;
  }

  bool contains(const Word& w) const {
    auto end = trace(0, w);
    return end && *end == 0;
  }

  std::string canonical_key() const {
    std::ostringstream os;
    os << alpha_.size() << ':' << V_;
    for (int t : trans_) os << ',' << t;
    return os.str();
  }

  bool operator==(const SubgroupGraph&) const = default;

 private:
  SubgroupGraph(Alphabet a, int v, std::vector<int> trans)
      : alpha_(a), V_(v), trans_(std::move(trans)) {}

  Alphabet alpha_;
  int V_;
  std::vector<int> trans_;

  friend class GraphBuilder;
};

// Mutable graph under construction. Vertex 0 is the base. Identifying two
// vertices triggers folding: whenever a vertex ends up with two out-edges of
// the same label, their targets are identified too, until the graph is
// deterministic again. finish() trims non-core hair and renumbers.
class GraphBuilder {
 public:
  explicit GraphBuilder(const Alphabet& a) : alpha_(a) { add_vertex(); }

  explicit GraphBuilder(const SubgroupGraph& g) : alpha_(g.alphabet()) {
    add_vertex();
    for (int v = 1; v < g.vertex_count(); ++v) add_vertex();
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (int i = 0; i < alpha_.size(); ++i) {
        int t = g.transition(v, lit(i));
        if (t >= 0) add_edge(v, lit(i), t);
      }
    }
  }

  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    slots_.emplace_back();
    return static_cast<int>(parent_.size()) - 1;
  }

  void add_edge(int u, Lit c, int v) {
    if (!alpha_.valid(c)) throw AlphabetError("edge label outside the alphabet");
    set_slot(find(u), c, find(v));
    set_slot(find(v), lit_inverse(c), find(u));
    drain();
  }

  void merge(int u, int v) {
    pending_.emplace_back(u, v);
    drain();
  }

  SubgroupGraph finish() {
    drain();
    int root = find(0);

    // reachable live vertices, then a normalized adjacency over dense ids
    std::unordered_map<int, int> dense;
    std::vector<int> order;
    auto visit = [&](int v) {
      if (dense.emplace(v, static_cast<int>(order.size())).second)
        order.push_back(v);
    };
    visit(root);
    for (size_t qi = 0; qi < order.size(); ++qi)
      for (auto& [c, t] : slots_[order[qi]]) visit(find(t));

    int live = static_cast<int>(order.size());
    std::vector<std::map<Lit, int>> adj(live);
    for (int i = 0; i < live; ++i)
      for (auto& [c, t] : slots_[order[i]]) adj[i][c] = dense[find(t)];

    // trim hair: repeatedly drop non-base vertices of degree <= 1
    std::vector<char> dead(live, 0);
    std::vector<int> work;
    for (int v = 1; v < live; ++v)
      if (adj[v].size() <= 1) work.push_back(v);
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      if (v == 0 || dead[v] || adj[v].size() > 1) continue;
      dead[v] = 1;
      if (!adj[v].empty()) {
        auto [c, u] = *adj[v].begin();
        adj[v].clear();
        if (!dead[u]) {
          adj[u].erase(lit_inverse(c));
          if (u != 0 && adj[u].size() <= 1) work.push_back(u);
        }
      }
    }

    // canonical renumbering
    auto codes = canonical_codes(alpha_);
    std::vector<int> newId(live, -1);
    std::vector<int> bfs;
    newId[0] = 0;
    bfs.push_back(0);
    for (size_t qi = 0; qi < bfs.size(); ++qi) {
      int u = bfs[qi];
      for (Lit c : codes) {
        auto it = adj[u].find(c);
        if (it == adj[u].end()) continue;
        if (newId[it->second] == -1) {
          newId[it->second] = static_cast<int>(bfs.size());
          bfs.push_back(it->second);
        }
      }
    }

    int V = static_cast<int>(bfs.size());
    std::vector<int> trans(static_cast<size_t>(V) * alpha_.lit_count(), -1);
    for (int v = 0; v < live; ++v) {
      if (newId[v] < 0) continue;
      for (auto& [c, t] : adj[v]) trans[newId[v] * alpha_.lit_count() + c] = newId[t];
    }
    return SubgroupGraph(alpha_, V, std::move(trans));
  }

 private:
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // u and v are live roots
  void set_slot(int u, Lit c, int v) {
    auto [it, inserted] = slots_[u].try_emplace(c, v);
    if (!inserted) {
      int w = find(it->second);
      it->second = w;
      if (w != v) pending_.emplace_back(w, v);
    }
  }

  void drain() {
    while (!pending_.empty()) {
      auto [x, y] = pending_.back();
      pending_.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (slots_[x].size() < slots_[y].size()) std::swap(x, y);
      parent_[y] = x;
      auto moved = std::move(slots_[y]);
      slots_[y] = {};
      for (auto& [c, t] : moved) set_slot(x, c, find(t));
    }
  }

  Alphabet alpha_;
  std::vector<int> parent_;
  std::vector<std::map<Lit, int>> slots_;
  std::vector<std::pair<int, int>> pending_;
};

inline SubgroupGraph build_subgroup(const Alphabet& a, const std::vector<Word>& gens) {
  GraphBuilder b(a);
  for (const Word& w : gens) {
    require_same(w.alphabet(), a);
    if (w.empty()) continue;
    int prev = 0;
    for (size_t i = 0; i + 1 < w.length(); ++i) {
      int nxt = b.add_vertex();
      b.add_edge(prev, w.at(i), nxt);
      prev = nxt;
    }
    b.add_edge(prev, w.at(w.length() - 1), 0);
  }
  return b.finish();
}

inline SubgroupGraph trivial_subgroup(const Alphabet& a) {
  return GraphBuilder(a).finish();
}

inline SubgroupGraph full_group(const Alphabet& a) {
  GraphBuilder b(a);
  for (int i = 0; i < a.size(); ++i) b.add_edge(0, lit(i), 0);
  return b.finish();
}

// Breadth-first spanning tree in canonical order plus the leftover edges, one
// per basis element. pathTo[v] spells the tree path from the base to v.
struct SpanningData {
  std::vector<int> parent;
  std::vector<Lit> parentCode;
  std::vector<Word> pathTo;
  std::vector<std::tuple<int, Lit, int>> extra;
  std::vector<int> extraIndex;  // vertex*litCount+code -> basis index, -1 elsewhere
};

inline SpanningData spanning(const SubgroupGraph& g) {
  const Alphabet& a = g.alphabet();
  int V = g.vertex_count();
  int nl = a.lit_count();
  SpanningData sd;
  sd.parent.assign(V, -1);
  sd.parentCode.assign(V, -1);
  std::vector<char> seen(V, 0);
  seen[0] = 1;
  auto codes = canonical_codes(a);
  std::vector<int> bfs{0};
  for (size_t qi = 0; qi < bfs.size(); ++qi) {
    int u = bfs[qi];
    for (Lit c : codes) {
      int v = g.transition(u, c);
      if (v < 0 || seen[v]) continue;
      seen[v] = 1;
      sd.parent[v] = u;
      sd.parentCode[v] = c;
      bfs.push_back(v);
    }
  }

  std::vector<std::vector<Lit>> raw(V);
  sd.pathTo.reserve(V);
  for (int v = 0; v < V; ++v) {
    if (v > 0) {
      raw[v] = raw[sd.parent[v]];
      raw[v].push_back(sd.parentCode[v]);
    }
    sd.pathTo.push_back(Word(a, raw[v]));
  }

  sd.extraIndex.assign(static_cast<size_t>(V) * nl, -1);
  auto isTree = [&](int u, Lit c, int v) {
    return (sd.parent[v] == u && sd.parentCode[v] == c) ||
           (sd.parent[u] == v && sd.parentCode[u] == lit_inverse(c));
  };
  for (int u = 0; u < V; ++u) {
    for (int i = 0; i < a.size(); ++i) {
      Lit c = lit(i);
      int v = g.transition(u, c);
      if (v < 0 || isTree(u, c, v)) continue;
      sd.extraIndex[u * nl + c] = static_cast<int>(sd.extra.size());
      sd.extra.emplace_back(u, c, v);
    }
  }
  return sd;
}

inline std::vector<Word> basis(const SubgroupGraph& g) {
  SpanningData sd = spanning(g);
  std::vector<Word> out;
  out.reserve(sd.extra.size());
  for (auto& [u, c, v] : sd.extra) {
    std::vector<Lit> raw(sd.pathTo[u].lits().begin(), sd.pathTo[u].lits().end());
    raw.push_back(c);
    const Word& down = sd.pathTo[v];
    for (auto it = down.lits().rbegin(); it != down.lits().rend(); ++it)
      raw.push_back(lit_inverse(*it));
    out.push_back(Word(g.alphabet(), std::move(raw)));
  }
  return out;
}

// Expresses a member of the subgroup in the subgroup's own basis. The result
// is over a fresh alphabet with one letter per basis element (at least one).
inline Word rewrite_word_in(const SubgroupGraph& k, const SpanningData& sd,
                            const Alphabet& target, const Word& w) {
  require_same(k.alphabet(), w.alphabet());
  int nl = k.alphabet().lit_count();
  std::vector<Lit> out;
  int at = 0;
  for (Lit c : w.lits()) {
    int nxt = k.transition(at, c);
    if (nxt < 0) throw NotASubgroupError(to_string(w));
    if (lit_positive(c)) {
      int j = sd.extraIndex[at * nl + c];
      if (j >= 0) out.push_back(lit(j));
    } else {
      int j = sd.extraIndex[nxt * nl + lit_inverse(c)];
      if (j >= 0) out.push_back(lit(j, true));
    }
    at = nxt;
  }
  if (at != 0) throw NotASubgroupError(to_string(w));
  return Word(target, std::move(out));
}

inline Alphabet basis_alphabet(const SubgroupGraph& k) {
  return Alphabet(std::max(1, k.rank()));
}

inline Word rewrite_word_in(const SubgroupGraph& k, const Word& w) {
  return rewrite_word_in(k, spanning(k), basis_alphabet(k), w);
}

// The whole subgroup h rewritten in k's basis; requires h <= k.
inline SubgroupGraph rewrite_in(const SubgroupGraph& h, const SubgroupGraph& k) {
  require_same(h.alphabet(), k.alphabet());
  SpanningData sd = spanning(k);
  Alphabet target = basis_alphabet(k);
  std::vector<Word> images;
  for (const Word& b : basis(h)) images.push_back(rewrite_word_in(k, sd, target, b));
  return build_subgroup(target, images);
}

inline SubgroupGraph intersect(const SubgroupGraph& g1, const SubgroupGraph& g2) {
  require_same(g1.alphabet(), g2.alphabet());
  const Alphabet& a = g1.alphabet();
  GraphBuilder b(a);
  std::unordered_map<long long, int> ids;
  std::vector<std::pair<int, int>> order{{0, 0}};
  ids[0] = 0;
  auto key = [&](int u1, int u2) {
    return static_cast<long long>(u1) * g2.vertex_count() + u2;
  };
  for (size_t qi = 0; qi < order.size(); ++qi) {
    auto [u1, u2] = order[qi];
    int from = ids[key(u1, u2)];
    for (Lit c = 0; c < a.lit_count(); ++c) {
      int v1 = g1.transition(u1, c);
      int v2 = g2.transition(u2, c);
      if (v1 < 0 || v2 < 0) continue;
      auto [it, inserted] = ids.try_emplace(key(v1, v2), 0);
      if (inserted) {
        it->second = b.add_vertex();
        order.emplace_back(v1, v2);
      }
      if (lit_positive(c)) b.add_edge(from, c, it->second);
    }
  }
  return b.finish();
}

inline SubgroupGraph image(const SubgroupGraph& g, const Morphism& m) {
  require_same(g.alphabet(), m.alphabet());
  std::vector<Word> im;
  for (const Word& b : basis(g)) im.push_back(apply(m, b));
  return build_subgroup(g.alphabet(), im);
}

inline bool subgroup_le(const SubgroupGraph& h, const SubgroupGraph& k) {
  require_same(h.alphabet(), k.alphabet());
  for (const Word& b : basis(h))
    if (!k.contains(b)) return false;
  return true;
}

// Every member of length at most maxLen, shortest first, starting with the
// empty word.
inline std::vector<Word> loops_up_to(const SubgroupGraph& g, int maxLen) {
  const Alphabet& a = g.alphabet();
  std::vector<Word> out;
  std::vector<Lit> path;
  auto rec = [&](auto&& self, int v) -> void {
    if (v == 0) out.push_back(Word(a, path));
    if (static_cast<int>(path.size()) >= maxLen) return;
    for (Lit c = 0; c < a.lit_count(); ++c) {
      if (!path.empty() && c == lit_inverse(path.back())) continue;
      int w = g.transition(v, c);
      if (w < 0) continue;
      path.push_back(c);
      self(self, w);
      path.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), lenlex_less);
  return out;
}

// An endomorphism of a free group is an automorphism exactly when it is
// surjective, so it suffices to check every generator against the image.
inline bool is_automorphism(const Morphism& m) {
  SubgroupGraph k = build_subgroup(m.alphabet(), m.images());
  for (int i = 0; i < m.alphabet().size(); ++i)
    if (!k.contains(Word::letter(m.alphabet(), lit(i)))) return false;
  return true;
}

// Searches for preimages of the generators among words of length <= maxLen
// and verifies the candidate both ways.
inline std::optional<Morphism> try_invert(const Morphism& m, int maxLen = 6) {
  const Alphabet& a = m.alphabet();
  int n = a.size();
  std::vector<std::optional<Word>> pre(n);
  int found = 0;
  std::vector<Lit> path;
  auto check = [&]() {
    Word u(a, path);
    Word img = apply(m, u);
    if (img.length() != 1 || !lit_positive(img.at(0))) return;
    int i = lit_letter(img.at(0));
    if (!pre[i]) {
      pre[i] = u;
      ++found;
    }
  };
  auto dfs = [&](auto&& self, int remaining) -> void {
    if (found == n) return;
    if (remaining == 0) {
      check();
      return;
    }
    for (Lit c = 0; c < a.lit_count(); ++c) {
      if (!path.empty() && c == lit_inverse(path.back())) continue;
      path.push_back(c);
      self(self, remaining - 1);
      path.pop_back();
      if (found == n) return;
    }
  };
  for (int len = 0; len <= maxLen && found < n; ++len) {
    path.clear();
    dfs(dfs, len);
  }
  if (found < n) return std::nullopt;
  std::vector<Word> im;
  for (int i = 0; i < n; ++i) im.push_back(*pre[i]);
  Morphism inv(a, std::move(im));
  if (compose(m, inv).is_identity() && compose(inv, m).is_identity()) return inv;
  return std::nullopt;
}

inline std::string to_dot(const SubgroupGraph& g) {
  std::ostringstream os;
  os << "digraph subgroup {\n  rankdir=LR;\n  node [shape=circle];\n"
     << "  0 [shape=doublecircle];\n";
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int i = 0; i < g.alphabet().size(); ++i) {
      int v = g.transition(u, lit(i));
      if (v < 0) continue;
      os << "  " << u << " -> " << v << " [label=\"" << g.alphabet().symbol(lit(i))
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace freefix
