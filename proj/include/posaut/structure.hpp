#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "graph.hpp"

namespace posaut {

struct Congruence {
  std::vector<int> class_of;
  int count() const {
    int m = -1;
    for (int c : class_of) m = std::max(m, c);
    return m + 1;
  }
};

// Renumbers arbitrary labels to contiguous ids in order of first occurrence.
inline Congruence make_congruence(const std::vector<int>& labels) {
  std::map<int, int> ren;
  Congruence c;
  for (int l : labels) {
    auto it = ren.find(l);
    if (it == ren.end()) it = ren.emplace(l, static_cast<int>(ren.size())).first;
    c.class_of.push_back(it->second);
  }
  return c;
}

struct Component {
  std::vector<int> states;
  bool recurrent = false;
  bool positive = false;  // min internal priority even
};

struct Decomposition {
  Congruence cong;
  std::vector<Component> comps;
};

// SCCs of the subgraph keeping transitions with priority >= x.
inline Decomposition safe_components(const Automaton& A, int x) {
  Adj g(A.n);
  for (auto& t : A.trans)
    if (t.prio >= x) g[t.src].push_back(t.dst);
  int nc = 0;
  auto comp = scc(g, &nc);
  Decomposition D;
  D.cong = make_congruence(comp);
  D.comps.assign(D.cong.count(), {});
  for (int q = 0; q < A.n; ++q) D.comps[D.cong.class_of[q]].states.push_back(q);
  std::vector<int> minp(D.comps.size(), -1);
  for (auto& t : A.trans) {
    if (t.prio < x) continue;
    int c = D.cong.class_of[t.src];
    if (c != D.cong.class_of[t.dst]) continue;
    D.comps[c].recurrent = true;
    if (minp[c] < 0 || t.prio < minp[c]) minp[c] = t.prio;
  }
  for (size_t c = 0; c < D.comps.size(); ++c) D.comps[c].positive = minp[c] >= 0 && minp[c] % 2 == 0;
  return D;
}

inline Decomposition scc_decompose(const Automaton& A) { return safe_components(A, 0); }

enum class InterScc { Max, Zero };

namespace detail {

inline void normalize_rec(const Automaton& A, const std::vector<int>& edges, int base, int level_value,
                          std::vector<int>& out) {
  Adj g(A.n);
  for (int e : edges) g[A.trans[e].src].push_back(A.trans[e].dst);
  int nc = 0;
  auto comp = scc(g, &nc);
  std::vector<std::vector<int>> inner(nc);
  for (int e : edges) {
    auto& t = A.trans[e];
    if (comp[t.src] == comp[t.dst]) inner[comp[t.src]].push_back(e);
    else out[e] = level_value;
  }
  for (int c = 0; c < nc; ++c) {
    if (inner[c].empty()) continue;
    int m = A.trans[inner[c][0]].prio;
    for (int e : inner[c]) m = std::min(m, A.trans[e].prio);
    int v = (base % 2 == m % 2) ? base : base + 1;
    std::vector<int> rest;
    for (int e : inner[c]) {
      if (A.trans[e].prio == m) out[e] = v;
      else rest.push_back(e);
    }
    if (!rest.empty()) normalize_rec(A, rest, v, v, out);
  }
}

}  // namespace detail

// Smallest priorities keeping the parity of the minimum on every cycle.
inline Automaton normalize(const Automaton& A, InterScc policy = InterScc::Max) {
  std::vector<int> all(A.trans.size()), out(A.trans.size(), -1);
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  detail::normalize_rec(A, all, 0, -1, out);
  int mx = 0;
  for (int v : out) mx = std::max(mx, v);
  Automaton B = A;
  for (size_t i = 0; i < out.size(); ++i) B.trans[i].prio = out[i] < 0 ? (policy == InterScc::Max ? mx : 0) : out[i];
  B.dmin = 0;
  B.dmax = max_prio(B);
  return B;
}

struct FaithfulViolation {
  int q, p, letter;
  std::string what;
};

// [0,x]-faithfulness of a congruence on a deterministic automaton.
inline std::optional<FaithfulViolation> faithful_violation(const Automaton& A, const Congruence& c, int x) {
  auto D = det_view(A);
  for (int q = 0; q < A.n; ++q)
    for (int p = q + 1; p < A.n; ++p) {
      if (c.class_of[q] != c.class_of[p]) continue;
      for (int a = 0; a < D.k; ++a) {
        if (c.class_of[D.dst(q, a)] != c.class_of[D.dst(p, a)]) return FaithfulViolation{q, p, a, "targets in different classes"};
        int y = D.pr(q, a), z = D.pr(p, a);
        if ((y <= x || z <= x) && y != z) return FaithfulViolation{q, p, a, "priorities differ"};
      }
    }
  return std::nullopt;
}

inline bool is_faithful(const Automaton& A, const Congruence& c, int x) { return !faithful_violation(A, c, x); }

inline Automaton quotient_leq_x(const Automaton& A, const Congruence& c, int x) {
  if (auto v = faithful_violation(A, c, x))
    throw Error("congruence not faithful at states " + std::to_string(v->q) + "," + std::to_string(v->p) + ": " + v->what);
  auto D = det_view(A);
  int m = c.count();
  std::vector<int> rep(m, -1);
  for (int q = 0; q < A.n; ++q)
    if (rep[c.class_of[q]] < 0) rep[c.class_of[q]] = q;
  Automaton Q;
  Q.alphabet = A.alphabet;
  Q.n = m;
  Q.init = c.class_of[A.init];
  Q.deterministic = true;
  int hi = x % 2 == 0 ? x + 1 : x;
  for (int k = 0; k < m; ++k)
    for (int a = 0; a < D.k; ++a) {
      int q = rep[k];
      int y = D.pr(q, a);
      Q.trans.push_back({k, a, y <= x ? y : hi, c.class_of[D.dst(q, a)]});
    }
  Q.dmin = 0;
  Q.dmax = max_prio(Q);
  return Q;
}

}  // namespace posaut
