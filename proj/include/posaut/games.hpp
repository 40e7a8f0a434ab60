#pragma once

#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "io.hpp"
#include "lang.hpp"

namespace posaut {

enum Owner { Eve = 0, Adam = 1 };

struct ArenaEdge {
  int src = 0;
  int letter = 0;  // kEps allowed
  int dst = 0;
};

struct Arena {
  std::vector<std::string> alphabet;
  std::vector<int> owner;
  std::vector<ArenaEdge> edges;
  std::vector<int> designated;
  int n() const { return static_cast<int>(owner.size()); }
  int add_vertex(int o = Eve) {
    owner.push_back(o);
    return n() - 1;
  }
  void add_edge(int s, int a, int d) { edges.push_back({s, a, d}); }
};

// Deterministic automaton whose acceptance is a disjunction of up to three min-even parity conditions.
struct Objective {
  int n = 0;
  int k = 0;
  int init = 0;
  int m = 1;
  std::vector<int> next;
  std::vector<std::array<int, 3>> prio;
  int dst(int s, int a) const { return next[s * k + a]; }
  const std::array<int, 3>& pr(int s, int a) const { return prio[s * k + a]; }
};

inline Objective objective_of(const Automaton& W) {
  auto D = det_view(W);
  Objective O;
  O.n = D.n;
  O.k = D.k;
  O.init = D.init;
  O.m = 1;
  O.next = D.next;
  for (int p : D.prio) O.prio.push_back({p, 0, 0});
  return O;
}

inline std::vector<std::string> validate_arena(const Arena& G) {
  std::vector<std::string> out;
  std::vector<int> deg(G.n(), 0);
  Adj eps(G.n());
  for (auto& e : G.edges) {
    if (e.src < 0 || e.src >= G.n() || e.dst < 0 || e.dst >= G.n()) {
      out.push_back("edge with vertex out of range");
      continue;
    }
    deg[e.src]++;
    if (e.letter == kEps) eps[e.src].push_back(e.dst);
  }
  for (int v = 0; v < G.n(); ++v)
    if (!deg[v]) out.push_back("vertex " + std::to_string(v) + " is a sink");
  int nc = 0;
  auto comp = scc(eps, &nc);
  for (int v = 0; v < G.n(); ++v)
    for (int w : eps[v])
      if (comp[v] == comp[w]) {
        out.push_back("cycle of eps-edges through vertex " + std::to_string(v));
        return out;
      }
  return out;
}

namespace detail {

// Product of an arena with an objective; vertex nodes (v,s) come first, then one node per
// (letter edge, state) carrying the colour.
struct Product {
  int nv = 0, ns = 0, total = 0;
  std::vector<int> owner;
  std::vector<int> colour;  // -1 on vertex nodes
  std::vector<std::array<int, 3>> colours;
  std::vector<std::vector<std::pair<int, int>>> succ;  // (node, arena edge)
  std::vector<std::vector<int>> pred;
  int vnode(int v, int s) const { return v * ns + s; }
};

inline Product build_product(const Arena& G, const Objective& O) {
  Product P;
  P.nv = G.n();
  P.ns = O.n;
  int base = P.nv * P.ns;
  int nletter = 0;
  for (auto& e : G.edges)
    if (e.letter != kEps) ++nletter;
  P.total = base + nletter * P.ns;
  P.owner.assign(P.total, Eve);
  P.colour.assign(P.total, -1);
  P.succ.assign(P.total, {});
  std::map<std::array<int, 3>, int> cid;
  for (int v = 0; v < P.nv; ++v)
    for (int s = 0; s < P.ns; ++s) P.owner[P.vnode(v, s)] = G.owner[v];
  int slot = 0;
  for (int ei = 0; ei < static_cast<int>(G.edges.size()); ++ei) {
    auto& e = G.edges[ei];
    if (e.letter == kEps) {
      for (int s = 0; s < P.ns; ++s) P.succ[P.vnode(e.src, s)].push_back({P.vnode(e.dst, s), ei});
      continue;
    }
    for (int s = 0; s < P.ns; ++s) {
      int node = base + slot * P.ns + s;
      auto c = O.pr(s, e.letter);
      for (int j = O.m; j < 3; ++j) c[j] = 0;
      auto it = cid.find(c);
      if (it == cid.end()) {
        it = cid.emplace(c, static_cast<int>(P.colours.size())).first;
        P.colours.push_back(c);
      }
      P.colour[node] = it->second;
      P.succ[P.vnode(e.src, s)].push_back({node, ei});
      P.succ[node].push_back({P.vnode(e.dst, O.dst(s, e.letter)), ei});
    }
    ++slot;
  }
  P.pred.assign(P.total, {});
  for (int v = 0; v < P.total; ++v)
    for (auto [w, e] : P.succ[v]) P.pred[w].push_back(v);
  return P;
}

using Mask = std::vector<char>;

// Attractor for `who` to `target` inside `in`; strat records attracting moves of `who`.
inline Mask attractor(const Product& P, const Mask& in, const Mask& target, int who, std::vector<int>* strat) {
  Mask attr(P.total, 0);
  std::vector<int> cnt(P.total, 0), queue;
  for (int v = 0; v < P.total; ++v) {
    if (!in[v]) continue;
    for (auto [w, e] : P.succ[v])
      if (in[w]) cnt[v]++;
    if (target[v]) {
      attr[v] = 1;
      queue.push_back(v);
    }
  }
  for (size_t i = 0; i < queue.size(); ++i) {
    int w = queue[i];
    for (int v : P.pred[w]) {
      if (!in[v] || attr[v]) continue;
      bool mine = P.owner[v] == who || P.colour[v] >= 0;
      if (mine) {
        attr[v] = 1;
        if (strat && P.colour[v] < 0 && P.owner[v] == who)
          for (auto [x, e] : P.succ[v])
            if (x == w) {
              (*strat)[v] = e;
              break;
            }
        queue.push_back(v);
      } else if (--cnt[v] == 0) {
        attr[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return attr;
}

inline Mask minus(const Mask& a, const Mask& b) {
  Mask r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] && !b[i];
  return r;
}

inline bool empty(const Mask& m) {
  for (char c : m)
    if (c) return false;
  return true;
}

// Zielonka on min-parity with the colour's first coordinate; uncoloured nodes are neutral.
// Returns Eve's region; strat filled for both players' vertex nodes.
inline Mask zielonka(const Product& P, const Mask& in, std::vector<int>& strat) {
  if (empty(in)) return Mask(P.total, 0);
  int pmin = -1;
  for (int v = 0; v < P.total; ++v)
    if (in[v] && P.colour[v] >= 0) {
      int p = P.colours[P.colour[v]][0];
      if (pmin < 0 || p < pmin) pmin = p;
    }
  if (pmin < 0) return in;
  int me = pmin % 2 == 0 ? Eve : Adam;
  Mask U(P.total, 0);
  for (int v = 0; v < P.total; ++v) U[v] = in[v] && P.colour[v] >= 0 && P.colours[P.colour[v]][0] == pmin;
  std::vector<int> s1 = strat;
  Mask A = attractor(P, in, U, me, &s1);
  Mask sub = minus(in, A);
  std::vector<int> s2 = strat;
  Mask eve1 = zielonka(P, sub, s2);
  Mask opp1 = me == Eve ? minus(sub, eve1) : eve1;
  if (empty(opp1)) {
    for (int v = 0; v < P.total; ++v) {
      if (!in[v] || P.colour[v] >= 0) continue;
      if (sub[v]) {
        strat[v] = s2[v];
      } else if (P.owner[v] == me) {
        strat[v] = s1[v];
        if (strat[v] < 0)
          for (auto [w, e] : P.succ[v])
            if (in[w]) {
              strat[v] = e;
              break;
            }
      }
    }
    return me == Eve ? in : Mask(P.total, 0);
  }
  int opp = 1 - me;
  std::vector<int> s3 = strat;
  Mask B = attractor(P, in, opp1, opp, &s3);
  Mask rest = minus(in, B);
  std::vector<int> s4 = strat;
  Mask eve2 = zielonka(P, rest, s4);
  for (int v = 0; v < P.total; ++v) {
    if (!in[v] || P.colour[v] >= 0) continue;
    if (rest[v]) strat[v] = s4[v];
    else if (opp1[v]) strat[v] = s2[v];
    else if (P.owner[v] == opp) strat[v] = s3[v];
  }
  Mask eve(P.total, 0);
  for (int v = 0; v < P.total; ++v) eve[v] = me == Eve ? (rest[v] && eve2[v]) : (B[v] || (rest[v] && eve2[v]));
  return eve;
}

inline bool eve_wins_set(const std::vector<std::array<int, 3>>& cs, const std::vector<int>& ids, int m) {
  for (int j = 0; j < m; ++j) {
    int mn = -1;
    for (int c : ids)
      if (mn < 0 || cs[c][j] < mn) mn = cs[c][j];
    if (mn % 2 == 0) return true;
  }
  return false;
}

// McNaughton-Zielonka recursion for the disjunctive multi-parity condition.
inline Mask muller(const Product& P, const Mask& in, int m) {
  if (empty(in)) return Mask(P.total, 0);
  std::set<int> cset;
  for (int v = 0; v < P.total; ++v)
    if (in[v] && P.colour[v] >= 0) cset.insert(P.colour[v]);
  if (cset.empty()) return in;
  std::vector<int> C(cset.begin(), cset.end());
  auto& cs = P.colours;
  bool eve_wins = eve_wins_set(cs, C, m);
  int me = eve_wins ? Eve : Adam, opp = 1 - me;
  std::vector<std::vector<int>> children;
  if (eve_wins) {
    std::vector<std::vector<int>> odd(m);
    for (int j = 0; j < m; ++j) {
      std::set<int> s;
      for (int c : C)
        if (cs[c][j] % 2) s.insert(cs[c][j]);
      odd[j].assign(s.begin(), s.end());
      if (odd[j].empty()) break;
    }
    bool any = true;
    for (int j = 0; j < m; ++j) any = any && !odd[j].empty();
    if (any) {
      std::vector<size_t> idx(m, 0);
      while (true) {
        std::vector<int> T;
        for (int c : C) {
          bool ok = true;
          for (int j = 0; j < m; ++j) ok = ok && cs[c][j] >= odd[j][idx[j]];
          if (ok) T.push_back(c);
        }
        if (!T.empty() && !eve_wins_set(cs, T, m)) children.push_back(T);
        int j = 0;
        while (j < m && ++idx[j] == odd[j].size()) idx[j++] = 0;
        if (j == m) break;
      }
    }
  } else {
    for (int j = 0; j < m; ++j) {
      std::set<int> evens;
      for (int c : C)
        if (cs[c][j] % 2 == 0) evens.insert(cs[c][j]);
      for (int e : evens) {
        std::vector<int> T;
        for (int c : C)
          if (cs[c][j] >= e) T.push_back(c);
        children.push_back(T);
      }
    }
  }
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  std::vector<std::vector<int>> maximal;
  for (auto& T : children) {
    bool dominated = false;
    for (auto& S : children)
      if (S.size() > T.size() && std::includes(S.begin(), S.end(), T.begin(), T.end())) dominated = true;
    if (!dominated) maximal.push_back(T);
  }
  Mask G = in, opp_region(P.total, 0);
  bool changed = true;
  while (changed && !empty(G)) {
    changed = false;
    for (auto& D : maximal) {
      std::set<int> Ds(D.begin(), D.end());
      Mask outside(P.total, 0);
      for (int v = 0; v < P.total; ++v) outside[v] = G[v] && P.colour[v] >= 0 && !Ds.count(P.colour[v]);
      Mask A = attractor(P, G, outside, me, nullptr);
      Mask sub = minus(G, A);
      Mask eve_sub = muller(P, sub, m);
      Mask opp_sub = me == Eve ? minus(sub, eve_sub) : eve_sub;
      if (!empty(opp_sub)) {
        Mask B = attractor(P, G, opp_sub, opp, nullptr);
        for (int v = 0; v < P.total; ++v)
          if (B[v]) opp_region[v] = 1;
        G = minus(G, B);
        changed = true;
        break;
      }
    }
  }
  Mask eve(P.total, 0);
  for (int v = 0; v < P.total; ++v) eve[v] = me == Eve ? G[v] : opp_region[v];
  return eve;
}

}  // namespace detail

struct SolveResult {
  int ns = 0;
  std::vector<char> win;  // win[v*ns+s]
  std::vector<int> move;  // Eve's edge choice at winning (v,s), -1 elsewhere; single-parity objectives only
  bool eve_wins(int v, int s) const { return win[v * ns + s]; }
};

inline SolveResult solve(const Arena& G, const Objective& O) {
  auto P = detail::build_product(G, O);
  detail::Mask in(P.total, 1);
  SolveResult R;
  R.ns = O.n;
  R.win.assign(static_cast<size_t>(G.n()) * O.n, 0);
  R.move.assign(static_cast<size_t>(G.n()) * O.n, -1);
  detail::Mask eve;
  if (O.m == 1) {
    std::vector<int> strat(P.total, -1);
    eve = detail::zielonka(P, in, strat);
    for (int v = 0; v < G.n(); ++v)
      for (int s = 0; s < O.n; ++s) {
        int node = P.vnode(v, s);
        if (eve[node] && G.owner[v] == Eve) R.move[v * O.n + s] = strat[node];
      }
  } else {
    eve = detail::muller(P, in, O.m);
  }
  for (int v = 0; v < G.n(); ++v)
    for (int s = 0; s < O.n; ++s) R.win[v * O.n + s] = eve[P.vnode(v, s)];
  return R;
}

inline SolveResult solve(const Arena& G, const Automaton& W) { return solve(G, objective_of(W)); }

namespace detail {

// Product graph for path checks; complement priorities make bad cycles the even ones.
inline LGraph complement_paths(const Arena& G, const Objective& O, const std::vector<char>& keep_edge,
                               const std::vector<int>* memory_move) {
  LGraph g;
  g.n = G.n() * O.n;
  g.k = O.m;
  for (int ei = 0; ei < static_cast<int>(G.edges.size()); ++ei) {
    auto& e = G.edges[ei];
    for (int s = 0; s < O.n; ++s) {
      if (memory_move) {
        if (G.owner[e.src] == Eve && (*memory_move)[e.src * O.n + s] >= 0 && (*memory_move)[e.src * O.n + s] != ei)
          continue;
      } else if (!keep_edge.empty() && !keep_edge[ei]) {
        continue;
      }
      if (e.letter == kEps) {
        g.add(e.src * O.n + s, e.dst * O.n + s, {kNeutral, kNeutral, kNeutral}, false, -1);
      } else {
        auto c = O.pr(s, e.letter);
        std::array<int, 3> p{c[0] + 1, c[1] + 1, c[2] + 1};
        g.add(e.src * O.n + s, e.dst * O.n + O.dst(s, e.letter), p, true, e.letter);
      }
    }
  }
  return g;
}

}  // namespace detail

// Replays the memory strategy of solve and checks every play from the winning pairs.
inline bool check_strategy(const Arena& G, const Objective& O, const SolveResult& R) {
  if (O.m != 1) return true;
  for (int v = 0; v < G.n(); ++v)
    for (int s = 0; s < O.n; ++s)
      if (R.eve_wins(v, s) && G.owner[v] == Eve && R.move[v * O.n + s] < 0) return false;
  auto g = detail::complement_paths(G, O, {}, &R.move);
  std::vector<int> starts;
  for (int v = 0; v < G.n(); ++v)
    for (int s = 0; s < O.n; ++s)
      if (R.eve_wins(v, s)) starts.push_back(v * O.n + s);
  if (starts.empty()) return true;
  return !find_lasso(g, starts, false).has_value();
}

inline long long default_limit() {
  if (const char* e = std::getenv("POSAUT_LIMIT")) return std::atoll(e);
  return 1000000;
}

struct BruteResult {
  bool uniform = false;
  std::vector<int> choice;  // Eve vertex -> edge index
  long long tried = 0;
};

// Eve's positional strategies in lexicographic order of (vertex id, edge index). A strategy
// succeeds when it wins from every vertex in `from`, or from all of Eve's winning region when
// `from` is null.
inline BruteResult brute_force_positional(const Arena& G, const Objective& O, long long limit = -1,
                                          const std::vector<int>* from = nullptr) {
  if (limit < 0) limit = default_limit();
  std::vector<int> targets;
  if (from) {
    for (int v : *from) targets.push_back(v * O.n + O.init);
  } else {
    auto R = solve(G, O);
    for (int v = 0; v < G.n(); ++v)
      if (R.eve_wins(v, O.init)) targets.push_back(v * O.n + O.init);
  }
  std::vector<std::vector<int>> opts(G.n());
  for (int ei = 0; ei < static_cast<int>(G.edges.size()); ++ei) opts[G.edges[ei].src].push_back(ei);
  std::vector<int> eve;
  long double count = 1;
  for (int v = 0; v < G.n(); ++v)
    if (G.owner[v] == Eve && !opts[v].empty()) {
      eve.push_back(v);
      count *= opts[v].size();
    }
  if (count > static_cast<long double>(limit)) throw Error("strategy count exceeds the search limit");
  std::vector<size_t> idx(eve.size(), 0);
  BruteResult B;
  while (true) {
    std::vector<char> keep(G.edges.size(), 1);
    for (size_t i = 0; i < eve.size(); ++i)
      for (size_t j = 0; j < opts[eve[i]].size(); ++j) keep[opts[eve[i]][j]] = j == idx[i];
    ++B.tried;
    bool ok = targets.empty();
    if (!ok) {
      auto g = detail::complement_paths(G, O, keep, nullptr);
      ok = !find_lasso(g, targets, false).has_value();
    }
    if (ok) {
      B.uniform = true;
      B.choice.assign(G.n(), -1);
      for (size_t i = 0; i < eve.size(); ++i) B.choice[eve[i]] = opts[eve[i]][idx[i]];
      return B;
    }
    int i = static_cast<int>(eve.size()) - 1;
    while (i >= 0 && ++idx[i] == opts[eve[i]].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return B;
}

inline BruteResult brute_force_positional(const Arena& G, const Automaton& W, long long limit = -1,
                                          const std::vector<int>* from = nullptr) {
  return brute_force_positional(G, objective_of(W), limit, from);
}

// ---- gadgets ----

namespace detail {

// Adds a path spelling w from `from`; returns the last vertex (or `to` when given).
inline int add_path(Arena& G, int from, const Word& w, int to = -1) {
  int cur = from;
  for (size_t i = 0; i < w.size(); ++i) {
    int nxt = (i + 1 == w.size() && to >= 0) ? to : G.add_vertex(Eve);
    G.add_edge(cur, w[i], nxt);
    cur = nxt;
  }
  return cur;
}

inline void add_lasso_exit(Arena& G, int from, const UPWord& w) {
  int entry = w.u.empty() ? from : add_path(G, from, w.u);
  add_path(G, entry, w.v, entry);
}

}  // namespace detail

inline Arena gadget_residual(const std::vector<std::string>& alphabet, const Word& u1, const Word& u2, const UPWord& w1,
                             const UPWord& w2) {
  Arena G;
  G.alphabet = alphabet;
  int choice = G.add_vertex(Eve);
  for (const Word* u : {&u1, &u2}) {
    if (u->empty()) {
      G.designated.push_back(choice);
      continue;
    }
    int v = G.add_vertex(Eve);
    detail::add_path(G, v, *u, choice);
    G.designated.push_back(v);
  }
  detail::add_lasso_exit(G, choice, w1);
  detail::add_lasso_exit(G, choice, w2);
  return G;
}

inline Arena gadget_progress(const std::vector<std::string>& alphabet, const Word& u, const Word& w, const UPWord& w2) {
  Arena G;
  G.alphabet = alphabet;
  int choice = G.add_vertex(Eve);
  if (u.empty()) {
    G.designated.push_back(choice);
  } else {
    int v = G.add_vertex(Eve);
    detail::add_path(G, v, u, choice);
    G.designated.push_back(v);
  }
  detail::add_path(G, choice, w, choice);
  detail::add_lasso_exit(G, choice, w2);
  return G;
}

inline Arena gadget_two_loops(const std::vector<std::string>& alphabet, const Word& u0, const Word& l1, const Word& l2) {
  if (l1.empty() || l2.empty()) throw Error("loops must be nonempty");
  Arena G;
  G.alphabet = alphabet;
  int choice = G.add_vertex(Eve);
  if (u0.empty()) {
    G.designated.push_back(choice);
  } else {
    int v = G.add_vertex(Eve);
    detail::add_path(G, v, u0, choice);
    G.designated.push_back(v);
  }
  detail::add_path(G, choice, l1, choice);
  detail::add_path(G, choice, l2, choice);
  return G;
}

struct CompletionGadget {
  Arena arena;
  Objective objective;
  int q_choice = 0;
  int edge_x = 0;   // q? -eps:x-> copy q'
  int edge_x1 = 0;  // q? -eps:x+1-> copy q
};

// Letter of the product alphabet: (letter or eps, priority, type) with type 0 small, 1 enter, 2 neutral.
inline int completion_letter(int a, int y, int type, int top) { return ((a + 1) * (top + 1) + y) * 3 + type; }

inline CompletionGadget completion_gadget(const Automaton& A, const Automaton& Wdet, int q, int q2, int x) {
  int top = std::max({max_prio(A), max_prio(Wdet), x + 1});
  int k = A.k();
  CompletionGadget C;
  Arena& G = C.arena;
  const char* tname[3] = {"s", "e", "n"};
  for (int a = -1; a < k; ++a)
    for (int y = 0; y <= top; ++y)
      for (int t = 0; t < 3; ++t) G.alphabet.push_back(A.letter_name(a) + "_" + std::to_string(y) + "_" + tname[t]);
  int n = A.n;
  for (int i = 0; i < 2 * n; ++i) G.add_vertex(Adam);
  C.q_choice = G.add_vertex(Eve);
  // copy 0 is indexed by q, copy 1 by q2
  for (int copy = 0; copy < 2; ++copy) {
    int avoid = copy == 0 ? q2 : q;
    for (auto& t : A.trans) {
      int type = (copy == 0 && t.prio <= x) ? 0 : 2;
      int dst = t.dst == avoid ? C.q_choice : copy * n + t.dst;
      G.add_edge(copy * n + t.src, completion_letter(t.letter, t.prio, type, top), dst);
    }
  }
  C.edge_x1 = static_cast<int>(G.edges.size());
  G.add_edge(C.q_choice, completion_letter(kEps, x + 1, 1, top), q);
  C.edge_x = static_cast<int>(G.edges.size());
  G.add_edge(C.q_choice, completion_letter(kEps, x, 2, top), n + q2);
  G.designated = {A.init, n + A.init};

  auto D = det_view(Wdet);
  int odd_top = max_prio(Wdet) | 1;
  Objective& O = C.objective;
  O.n = D.n;
  O.k = static_cast<int>(G.alphabet.size());
  O.init = D.init;
  O.m = 3;
  O.next.assign(static_cast<size_t>(O.n) * O.k, 0);
  O.prio.assign(static_cast<size_t>(O.n) * O.k, {0, 0, 0});
  for (int s = 0; s < O.n; ++s)
    for (int a = -1; a < k; ++a)
      for (int y = 0; y <= top; ++y)
        for (int t = 0; t < 3; ++t) {
          int c = completion_letter(a, y, t, top);
          O.next[s * O.k + c] = a < 0 ? s : D.dst(s, a);
          int type_prio = t == 0 ? 1 : t == 1 ? 2 : 3;
          O.prio[s * O.k + c] = {a < 0 ? odd_top : D.pr(s, a), y + 1, type_prio};
        }
  return C;
}

// ---- arena text format ----

inline Arena parse_arena(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input");
  if (lines[0].toks.size() != 1 || lines[0].key() != "arena") throw ParseError(lines[0].no, 1, "expected 'arena' header");
  Arena G;
  std::map<int, int> owner;
  struct Raw {
    int src;
    std::string letter;
    int dst;
    int line, col;
  };
  std::vector<Raw> raw;
  bool seen_al = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto& L = lines[i];
    if (L.key() == "alphabet:") {
      G.alphabet = detail::parse_alphabet(L);
      seen_al = true;
    } else if (L.key() == "vertex:") {
      expect_args(L, 2);
      int v = to_int(L, 1);
      if (v < 0) throw ParseError(L.no, L.toks[1].col, "negative vertex id");
      if (owner.count(v)) throw ParseError(L.no, L.toks[1].col, "duplicate vertex");
      if (L.toks[2].text == "eve") owner[v] = Eve;
      else if (L.toks[2].text == "adam") owner[v] = Adam;
      else throw ParseError(L.no, L.toks[2].col, "expected eve or adam");
    } else if (L.key() == "edge:") {
      expect_args(L, 3);
      raw.push_back({to_int(L, 1), L.toks[2].text, to_int(L, 3), L.no, L.toks[2].col});
    } else if (L.key() == "designated:") {
      for (size_t j = 1; j < L.toks.size(); ++j) G.designated.push_back(to_int(L, j));
    } else {
      throw ParseError(L.no, L.toks[0].col, "unknown key '" + L.key() + "'");
    }
  }
  if (!seen_al) throw ParseError(lines.back().no, 1, "missing alphabet");
  int n = static_cast<int>(owner.size());
  for (auto& [v, o] : owner) {
    if (v >= n) throw ParseError(lines.back().no, 1, "vertex ids must be 0..n-1");
    G.owner.push_back(o);
  }
  for (auto& r : raw) {
    if (r.src < 0 || r.src >= n || r.dst < 0 || r.dst >= n) throw ParseError(r.line, 1, "edge endpoint is not a vertex");
    int a = kEps;
    if (r.letter != "eps") {
      a = -2;
      for (int i = 0; i < static_cast<int>(G.alphabet.size()); ++i)
        if (G.alphabet[i] == r.letter) a = i;
      if (a == -2) throw ParseError(r.line, r.col, "unknown letter '" + r.letter + "'");
    }
    G.add_edge(r.src, a, r.dst);
  }
  for (int v : G.designated)
    if (v < 0 || v >= n) throw ParseError(lines.back().no, 1, "designated vertex out of range");
  return G;
}

inline std::string emit_arena(const Arena& G) {
  std::ostringstream o;
  o << "arena\nalphabet:";
  for (auto& a : G.alphabet) o << ' ' << a;
  o << "\n";
  for (int v = 0; v < G.n(); ++v) o << "vertex: " << v << ' ' << (G.owner[v] == Eve ? "eve" : "adam") << "\n";
  for (auto& e : G.edges)
    o << "edge: " << e.src << ' ' << (e.letter == kEps ? std::string("eps") : G.alphabet[e.letter]) << ' ' << e.dst << "\n";
  if (!G.designated.empty()) {
    o << "designated:";
    for (int v : G.designated) o << ' ' << v;
    o << "\n";
  }
  return o.str();
}

// Arena alphabet must match the objective's, letter for letter.
inline void check_same_alphabet(const Arena& G, const Automaton& W) {
  if (G.alphabet != W.alphabet) throw Error("arena and objective alphabets differ");
}

}  // namespace posaut
