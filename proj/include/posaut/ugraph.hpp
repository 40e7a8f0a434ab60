#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "completion.hpp"
#include "graph.hpp"
#include "io.hpp"

namespace posaut {

struct GEdge {
  int src = 0;
  int letter = 0;
  int dst = 0;
  bool operator<(const GEdge& o) const {
    return std::tie(src, letter, dst) < std::tie(o.src, o.letter, o.dst);
  }
  bool operator==(const GEdge& o) const = default;
};

// Vertices are ordered by their index.
struct MonotoneGraph {
  std::vector<std::string> alphabet;
  std::vector<std::string> names;
  std::vector<GEdge> edges;
  std::vector<int> state;  // automaton state behind each vertex, -1 when none
  bool monotone = false;

  int n() const { return static_cast<int>(names.size()); }
  int k() const { return static_cast<int>(alphabet.size()); }
  long long key(int s, int a, int d) const { return (static_cast<long long>(s) * k() + a) * n() + d; }
  std::unordered_set<long long> edge_set() const {
    std::unordered_set<long long> s;
    for (auto& e : edges) s.insert(key(e.src, e.letter, e.dst));
    return s;
  }
  void finish() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
};

constexpr long long kMaxGraphVertices = 200000;

namespace detail {

inline bool prefix_leq(const std::vector<int>& a, const std::vector<int>& b, size_t len, bool strict) {
  for (size_t i = 0; i < len; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return !strict;
}

inline std::vector<std::vector<int>> tuples(int len, int n) {
  long long total = 1;
  for (int i = 0; i < len; ++i) {
    total *= n;
    if (total > kMaxGraphVertices) throw Error("universal graph too large");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> t(len, 0);
  for (long long i = 0; i < total; ++i) {
    out.push_back(t);
    for (int j = len - 1; j >= 0; --j) {
      if (++t[j] < n) break;
      t[j] = 0;
    }
  }
  return out;
}

inline std::string tuple_name(const std::vector<int>& t) {
  std::string s;
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "_" : "") + std::to_string(t[i]);
  return s;
}

// Components are lambda_1, lambda_3, ..., one per odd priority.
inline bool upar_edge(const std::vector<int>& from, int x, const std::vector<int>& to) {
  if (x % 2 == 0) return prefix_leq(to, from, static_cast<size_t>(x / 2), false);
  return prefix_leq(to, from, static_cast<size_t>((x + 1) / 2), true);
}

// Nodes that start an infinite path whose minimal priority seen infinitely often is odd.
inline std::vector<char> bad_nodes(int n, const std::vector<std::array<int, 3>>& edges) {
  std::vector<char> bad(n, 0);
  int top = 0;
  for (auto& e : edges) top = std::max(top, e[1]);
  for (int y = 1; y <= top; y += 2) {
    Adj g(n);
    for (auto& e : edges)
      if (e[1] >= y) g[e[0]].push_back(e[2]);
    auto comp = scc(g);
    for (auto& e : edges)
      if (e[1] == y && comp[e[0]] == comp[e[2]])
        for (int v = 0; v < n; ++v)
          if (comp[v] == comp[e[0]]) bad[v] = 1;
  }
  Adj rev(n);
  for (auto& e : edges) rev[e[2]].push_back(e[0]);
  std::vector<int> seeds;
  for (int v = 0; v < n; ++v)
    if (bad[v]) seeds.push_back(v);
  return reach_from(rev, seeds);
}

}  // namespace detail

inline int letter_priority(const MonotoneGraph& G, int a) {
  const auto& s = G.alphabet[a];
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error("letter '" + s + "' is not a priority");
  return std::stoi(s);
}

inline MonotoneGraph build_upar(int d, int n) {
  if (d < 0 || d % 2) throw Error("build_upar needs an even d");
  if (n < 1) throw Error("build_upar needs n >= 1");
  MonotoneGraph G;
  for (int x = 0; x <= d + 1; ++x) G.alphabet.push_back(std::to_string(x));
  auto T = detail::tuples(d / 2 + 1, n);
  for (auto& t : T) G.names.push_back(detail::tuple_name(t));
  G.state.assign(T.size(), -1);
  for (int u = 0; u < G.n(); ++u)
    for (int x = 0; x <= d + 1; ++x)
      for (int v = 0; v < G.n(); ++v)
        if (detail::upar_edge(T[u], x, T[v])) G.edges.push_back({u, x, v});
  G.finish();
  return G;
}

// Adds a maximal vertex with an a-edge to every vertex, itself included, for every letter a.
inline MonotoneGraph with_top(const MonotoneGraph& G) {
  MonotoneGraph H = G;
  int top = G.n();
  H.names.push_back("top");
  H.state.push_back(-1);
  for (int a = 0; a < G.k(); ++a)
    for (int v = 0; v <= top; ++v) H.edges.push_back({top, a, v});
  H.finish();
  return H;
}

struct MonotoneViolation {
  GEdge edge;   // u -a-> u'
  GEdge missing;  // v -a-> v'
};

inline std::optional<MonotoneViolation> monotone_violation(const MonotoneGraph& G) {
  auto E = G.edge_set();
  int n = G.n();
  for (auto& e : G.edges)
    for (int v = e.src; v < n; ++v)
      for (int w = 0; w <= e.dst; ++w)
        if (!E.count(G.key(v, e.letter, w))) return MonotoneViolation{e, {v, e.letter, w}};
  return std::nullopt;
}

inline bool is_monotone(const MonotoneGraph& G) { return !monotone_violation(G); }

// Cycle analysis on a graph whose letters are priorities.
inline bool all_cycles_even_min(const MonotoneGraph& G) {
  std::vector<std::array<int, 3>> es;
  for (auto& e : G.edges) es.push_back({e.src, letter_priority(G, e.letter), e.dst});
  auto bad = detail::bad_nodes(G.n(), es);
  return std::none_of(bad.begin(), bad.end(), [](char b) { return b; });
}

// sat[v]: every infinite path from v reads a word of L(D, start[v]).
inline std::vector<char> satisfying_vertices(const MonotoneGraph& G, const Automaton& D,
                                             const std::vector<int>& start) {
  auto V = det_view(D);
  if (V.k != G.k()) throw Error("alphabets differ");
  for (int a = 0; a < G.k(); ++a)
    if (G.alphabet[a] != D.alphabet[a]) throw Error("alphabets differ");
  long long N = static_cast<long long>(G.n()) * V.n;
  if (N > 50 * kMaxGraphVertices) throw Error("product too large");
  std::vector<std::array<int, 3>> es;
  for (int s = 0; s < V.n; ++s)
    for (auto& e : G.edges)
      es.push_back({e.src * V.n + s, V.pr(s, e.letter), e.dst * V.n + V.dst(s, e.letter)});
  auto bad = detail::bad_nodes(static_cast<int>(N), es);
  std::vector<char> sat(G.n());
  for (int v = 0; v < G.n(); ++v) sat[v] = !bad[v * V.n + start[v]];
  return sat;
}

inline std::vector<char> satisfying_vertices(const MonotoneGraph& G, const Automaton& D) {
  return satisfying_vertices(G, D, std::vector<int>(G.n(), D.init));
}

// Deterministic one-state automaton over priorities 0..top accepting Parity.
inline Automaton parity_automaton(int top) {
  Automaton A;
  A.n = 1;
  A.init = 0;
  A.dmin = 0;
  A.dmax = top;
  for (int x = 0; x <= top; ++x) {
    A.alphabet.push_back(std::to_string(x));
    A.trans.push_back({0, x, x, 0});
  }
  return A;
}

// rank[x/2][q]: number of states strictly below q for the eps:x+1 preorder.
inline std::vector<std::vector<int>> eps_ranks(const Automaton& A, int top) {
  auto R = eps_relation(A, top);
  std::vector<std::vector<int>> rank;
  for (int x = 0; x + 1 <= top; x += 2) {
    std::vector<int> r(A.n, 0);
    for (int q = 0; q < A.n; ++q)
      for (int p = 0; p < A.n; ++p) r[q] += R.has(x, q, p);
    rank.push_back(r);
  }
  return rank;
}

// A must be eps-complete and priority-closed, with the finest eps-preorder antisymmetric.
inline MonotoneGraph build_uaut(const Automaton& A, int n) {
  if (n < 1) throw Error("build_uaut needs n >= 1");
  int top = std::max(1, max_prio(A));
  if (top % 2 == 0) ++top;
  int d = top - 1;
  if (auto v = eps_complete_violation(A)) throw Error("automaton is not eps-complete (" + v->what + ")");
  auto rank = eps_ranks(A, top);
  for (int q = 0; q < A.n; ++q)
    for (int p = q + 1; p < A.n; ++p)
      if (rank[d / 2][q] == rank[d / 2][p]) throw Error("finest eps-preorder is not antisymmetric");
  auto T = detail::tuples(d / 2 + 1, n);
  if (static_cast<long long>(T.size()) * A.n > kMaxGraphVertices) throw Error("universal graph too large");

  struct V {
    std::vector<int> ext;
    int q, t;
  };
  std::vector<V> vs;
  for (int q = 0; q < A.n; ++q)
    for (int t = 0; t < static_cast<int>(T.size()); ++t) {
      std::vector<int> ext;
      for (int i = 0; i <= d / 2; ++i) {
        ext.push_back(rank[i][q]);
        ext.push_back(T[t][i]);
      }
      vs.push_back({ext, q, t});
    }
  std::sort(vs.begin(), vs.end(), [](const V& a, const V& b) { return a.ext < b.ext; });
  std::vector<int> id(vs.size());
  for (size_t i = 0; i < vs.size(); ++i) id[vs[i].q * T.size() + vs[i].t] = static_cast<int>(i);

  MonotoneGraph G;
  G.alphabet = A.alphabet;
  for (auto& v : vs) {
    G.names.push_back("q" + std::to_string(v.q) + "_" + detail::tuple_name(T[v.t]));
    G.state.push_back(v.q);
  }
  for (auto& tr : A.trans) {
    if (tr.letter == kEps) continue;
    for (size_t t = 0; t < T.size(); ++t)
      for (size_t t2 = 0; t2 < T.size(); ++t2)
        if (detail::upar_edge(T[t], tr.prio, T[t2]))
          G.edges.push_back({id[tr.src * T.size() + t], tr.letter, id[tr.dst * T.size() + t2]});
  }
  G.finish();
  return G;
}

// ---- bounded universality ----

struct UniversalityReport {
  int k = 0;
  bool exhaustive = true;
  long long graphs = 0;
  long long satisfying = 0;  // graphs with at least one satisfying vertex
  long long counterexamples = 0;
  std::optional<MonotoneGraph> first;
};

namespace detail {

struct MorphismSearch {
  const MonotoneGraph& G;
  const std::vector<char>& satG;
  const MonotoneGraph& U;
  const std::vector<char>& satU;
  std::unordered_set<long long> E;
  std::vector<int> img;

  MorphismSearch(const MonotoneGraph& g, const std::vector<char>& sg, const MonotoneGraph& u,
                 const std::vector<char>& su)
      : G(g), satG(sg), U(u), satU(su), E(u.edge_set()), img(g.n(), -1) {}

  bool consistent(int v) const {
    for (auto& e : G.edges) {
      if (e.src != v && e.dst != v) continue;
      int a = img[e.src], b = img[e.dst];
      if (a >= 0 && b >= 0 && !E.count(U.key(a, e.letter, b))) return false;
    }
    return true;
  }

  bool run(int v) {
    if (v == G.n()) return true;
    for (int c = U.n() - 1; c >= 0; --c) {
      if (satG[v] && !satU[c]) continue;
      img[v] = c;
      if (consistent(v) && run(v + 1)) return true;
    }
    img[v] = -1;
    return false;
  }
};

inline MonotoneGraph graph_from_bits(int k, const std::vector<std::string>& alphabet, unsigned long long bits) {
  MonotoneGraph G;
  G.alphabet = alphabet;
  int m = static_cast<int>(alphabet.size());
  for (int v = 0; v < k; ++v) G.names.push_back("g" + std::to_string(v));
  G.state.assign(k, -1);
  int i = 0;
  for (int s = 0; s < k; ++s)
    for (int a = 0; a < m; ++a)
      for (int t = 0; t < k; ++t, ++i)
        if (bits >> i & 1ULL) G.edges.push_back({s, a, t});
  return G;
}

inline bool sinkless(const MonotoneGraph& G) {
  std::vector<char> out(G.n(), 0);
  for (auto& e : G.edges) out[e.src] = 1;
  return std::all_of(out.begin(), out.end(), [](char c) { return c; });
}

}  // namespace detail

inline bool has_morphism(const MonotoneGraph& G, const std::vector<char>& satG, const MonotoneGraph& U,
                         const std::vector<char>& satU) {
  detail::MorphismSearch S(G, satG, U, satU);
  return S.run(0);
}

// Graphs of size k are enumerated exhaustively for k <= 2 and sampled otherwise.
inline UniversalityReport check_universality_bounded(const MonotoneGraph& U, const Automaton& W, int k,
                                                     long long sample = 2000, unsigned seed = 1) {
  if (k < 1) throw Error("universality bound must be >= 1");
  auto Ut = with_top(U);
  auto satU = satisfying_vertices(Ut, W);
  UniversalityReport R;
  R.k = k;
  int m = U.k();
  auto check = [&](const MonotoneGraph& G) {
    if (!detail::sinkless(G)) return;
    ++R.graphs;
    auto satG = satisfying_vertices(G, W);
    if (std::none_of(satG.begin(), satG.end(), [](char c) { return c; })) return;
    ++R.satisfying;
    if (!has_morphism(G, satG, Ut, satU)) {
      ++R.counterexamples;
      if (!R.first) R.first = G;
    }
  };
  for (int size = 1; size <= k; ++size) {
    int bits = size * m * size;
    if (size <= 2 && bits <= 24) {
      for (unsigned long long b = 0; b < (1ULL << bits); ++b) check(detail::graph_from_bits(size, U.alphabet, b));
    } else {
      if (bits > 64) throw Error("universality bound too large for this alphabet");
      R.exhaustive = false;
      std::mt19937_64 rng(seed);
      for (long long i = 0; i < sample; ++i) {
        unsigned long long b = rng();
        if (bits < 64) b &= (1ULL << bits) - 1;
        check(detail::graph_from_bits(size, U.alphabet, b));
      }
    }
  }
  return R;
}

// ---- .mgraph ----

inline std::string emit_mgraph(const MonotoneGraph& G) {
  std::string s = "mgraph\nalphabet:";
  for (auto& a : G.alphabet) s += " " + a;
  s += "\norder:";
  for (auto& v : G.names) s += " " + v;
  s += "\n";
  for (auto& e : G.edges) s += "edge: " + G.names[e.src] + " " + G.alphabet[e.letter] + " " + G.names[e.dst] + "\n";
  return s;
}

inline MonotoneGraph parse_mgraph(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input");
  if (lines[0].toks.size() != 1 || lines[0].key() != "mgraph") throw ParseError(lines[0].no, 1, "expected 'mgraph' header");
  MonotoneGraph G;
  bool seen_al = false, seen_order = false;
  auto find = [](const std::vector<std::string>& v, const std::string& s) {
    auto it = std::find(v.begin(), v.end(), s);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
  };
  for (size_t i = 1; i < lines.size(); ++i) {
    auto& L = lines[i];
    if (L.key() == "alphabet:") {
      if (seen_al) throw ParseError(L.no, 1, "duplicate alphabet");
      G.alphabet = detail::parse_alphabet(L);
      seen_al = true;
    } else if (L.key() == "order:") {
      if (seen_order) throw ParseError(L.no, 1, "duplicate order");
      for (size_t j = 1; j < L.toks.size(); ++j) {
        if (!valid_letter_token(L.toks[j].text)) throw ParseError(L.no, L.toks[j].col, "bad vertex name");
        if (find(G.names, L.toks[j].text) >= 0) throw ParseError(L.no, L.toks[j].col, "duplicate vertex");
        G.names.push_back(L.toks[j].text);
      }
      seen_order = true;
    } else if (L.key() == "edge:") {
      if (!seen_al || !seen_order) throw ParseError(L.no, 1, "edge before alphabet and order");
      expect_args(L, 3);
      int s = find(G.names, L.toks[1].text), a = find(G.alphabet, L.toks[2].text), t = find(G.names, L.toks[3].text);
      if (s < 0) throw ParseError(L.no, L.toks[1].col, "unknown vertex");
      if (a < 0) throw ParseError(L.no, L.toks[2].col, "unknown letter");
      if (t < 0) throw ParseError(L.no, L.toks[3].col, "unknown vertex");
      G.edges.push_back({s, a, t});
    } else {
      throw ParseError(L.no, 1, "unknown key '" + L.key() + "'");
    }
  }
  if (!seen_al) throw ParseError(lines.back().no, 1, "missing alphabet");
  if (!seen_order) throw ParseError(lines.back().no, 1, "missing order");
  G.state.assign(G.n(), -1);
  G.finish();
  return G;
}

}  // namespace posaut
