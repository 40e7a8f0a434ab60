#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lang.hpp"

namespace posaut {

// Position in the preference order 1 < 3 < ... < d+1 < d < ... < 2 < 0.
inline int pref_rank(int y) { return y % 2 ? y : (1 << 16) - y; }
inline bool pref_leq(int y1, int y2) { return pref_rank(y1) <= pref_rank(y2); }
inline int pref_min(int y1, int y2) { return pref_leq(y1, y2) ? y1 : y2; }

// rel[y][q*n+p]: an eps-transition q -eps:y-> p exists.
struct EpsRelation {
  int n = 0;
  int top = 0;  // largest priority, odd
  std::vector<std::vector<char>> rel;
  EpsRelation(int n_, int top_) : n(n_), top(top_), rel(top_ + 1, std::vector<char>(static_cast<size_t>(n_) * n_, 0)) {}
  bool has(int y, int q, int p) const { return rel[y][q * n + p]; }
  void set(int y, int q, int p) { rel[y][q * n + p] = 1; }

  // Transitive per priority and downward closed along the preference order.
  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int y = 0; y <= top; ++y)
        for (int q = 0; q < n; ++q)
          for (int p = 0; p < n; ++p) {
            if (!has(y, q, p)) continue;
            for (int z = 0; z <= top; ++z)
              if (z != y && pref_leq(z, y) && !has(z, q, p)) {
                set(z, q, p);
                changed = true;
              }
          }
      for (int y = 0; y <= top; ++y)
        for (int r = 0; r < n; ++r)
          for (int q = 0; q < n; ++q) {
            if (!has(y, q, r)) continue;
            for (int p = 0; p < n; ++p)
              if (has(y, r, p) && !has(y, q, p)) {
                set(y, q, p);
                changed = true;
              }
          }
    }
  }
};

inline EpsRelation eps_relation(const Automaton& A, int top) {
  EpsRelation R(A.n, top);
  for (auto& t : A.trans)
    if (t.letter == kEps && t.prio <= top) R.set(t.prio, t.src, t.dst);
  return R;
}

inline Automaton with_eps(const Automaton& A, const EpsRelation& R) {
  Automaton B = A;
  B.trans.erase(std::remove_if(B.trans.begin(), B.trans.end(), [](const Transition& t) { return t.letter == kEps; }),
                B.trans.end());
  for (int y = 0; y <= R.top; ++y)
    for (int q = 0; q < R.n; ++q)
      for (int p = 0; p < R.n; ++p)
        if (R.has(y, q, p)) B.trans.push_back({q, kEps, y, p});
  B.deterministic = false;
  B.dmin = 0;
  B.dmax = std::max(A.dmax, R.top);
  return B;
}

inline int even_ceiling(int d) { return d % 2 ? d + 1 : d; }

struct EpsViolation {
  int x = 0;
  int q = 0;
  int p = 0;
  std::string what;
};

inline std::optional<EpsViolation> eps_complete_violation(const Automaton& A) {
  int top = std::max(1, max_prio(A));
  if (top % 2 == 0) ++top;
  int d = top - 1;
  auto R = eps_relation(A, top);
  int n = A.n;
  for (int x = 0; x <= d; x += 2) {
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        if (!R.has(x + 1, q, p) && !R.has(x + 1, p, q)) return EpsViolation{x, q, p, "not total"};
        if (R.has(x, q, p) == R.has(x + 1, p, q)) return EpsViolation{x, q, p, "strict part mismatch"};
        if (x + 3 <= top && R.has(x + 3, q, p) && !R.has(x + 1, q, p)) return EpsViolation{x, q, p, "not refining"};
        for (int r = 0; r < n; ++r)
          if (R.has(x + 1, q, r) && R.has(x + 1, r, p) && !R.has(x + 1, q, p))
            return EpsViolation{x, q, p, "not transitive"};
      }
  }
  return std::nullopt;
}

inline bool validate_eps_complete(const Automaton& A) { return !eps_complete_violation(A); }

inline Automaton priority_close(const Automaton& A) {
  int top = max_prio(A);
  if (top % 2 == 0) ++top;
  Automaton B = A;
  sort_dedupe(B);
  while (true) {
    std::set<Transition> have(B.trans.begin(), B.trans.end());
    std::vector<Transition> add;
    auto push = [&](Transition t) {
      if (!have.count(t)) {
        have.insert(t);
        add.push_back(t);
      }
    };
    for (auto& t : B.trans)
      for (int z = 0; z <= top; ++z)
        if (z != t.prio && pref_leq(z, t.prio)) push({t.src, t.letter, z, t.dst});
    std::vector<std::vector<std::pair<int, int>>> eps_in(B.n), eps_out(B.n);  // (priority, other end)
    for (auto& t : B.trans)
      if (t.letter == kEps) {
        eps_out[t.src].push_back({t.prio, t.dst});
        eps_in[t.dst].push_back({t.prio, t.src});
      }
    for (auto& t : B.trans)
      for (auto [y1, p] : eps_in[t.src])
        for (auto [y3, p2] : eps_out[t.dst]) push({p, t.letter, std::min({y1, t.prio, y3}), p2});
    if (add.empty()) break;
    B.trans.insert(B.trans.end(), add.begin(), add.end());
    sort_dedupe(B);
  }
  B.deterministic = false;
  B.dmax = std::max(B.dmax, max_prio(B));
  return B;
}

// Merges states equivalent for the finest eps-preorder; map[q] = surviving id.
inline Automaton merge_equivalent(const Automaton& A, std::vector<int>* map = nullptr) {
  int top = max_prio(A);
  if (top % 2 == 0) ++top;
  auto R = eps_relation(A, top);
  std::vector<int> rep(A.n);
  for (int q = 0; q < A.n; ++q) {
    rep[q] = q;
    for (int p = 0; p < q; ++p)
      if (rep[p] == p && R.has(top, p, q) && R.has(top, q, p)) {
        rep[q] = p;
        break;
      }
  }
  std::vector<int> id(A.n, -1);
  int c = 0;
  for (int q = 0; q < A.n; ++q)
    if (rep[q] == q) id[q] = c++;
  std::vector<int> m(A.n);
  for (int q = 0; q < A.n; ++q) m[q] = id[rep[q]];
  Automaton B = A;
  B.n = c;
  B.init = m[A.init];
  for (auto& t : B.trans) {
    t.src = m[t.src];
    t.dst = m[t.dst];
  }
  sort_dedupe(B);
  if (map) *map = m;
  return B;
}

struct P2Result {
  bool positional = false;
  Automaton completion;  // merged eps-complete automaton when positional
  int q = 0, q2 = 0, x = 0;
  UPWord cex1, cex2;  // failing additions q -eps:x-> q2 and q2 -eps:x+1-> q
  Automaton base;     // automaton the failing additions were tried on
};

// Greedy addition of eps-transitions, pairs in order (x, q, q'), trying q -eps:x-> q' first.
inline P2Result decide_positionality_p2(const Automaton& A0, const Automaton& Wdet) {
  Automaton A = A0;
  if (structurally_deterministic(A)) A = trim(A);
  int d = even_ceiling(std::max(max_prio(A), max_prio(Wdet)));
  int top = d + 1;
  EpsRelation R = eps_relation(A, top);
  for (int q = 0; q < A.n; ++q)
    for (int y = 1; y <= top; y += 2) R.set(y, q, q);
  R.close();
  auto try_add = [&](int y, int s, int t) -> std::optional<UPWord> {
    EpsRelation C = R;
    C.set(y, s, t);
    C.close();
    auto cand = with_eps(A, C);
    auto w = incl_nd_in_det(cand, Wdet);
    if (!w) R = C;
    return w;
  };
  P2Result res;
  for (int x = 0; x <= d; x += 2)
    for (int q = 0; q < A.n; ++q)
      for (int q2 = 0; q2 < A.n; ++q2) {
        if (q == q2) continue;
        if (R.has(x, q, q2) || R.has(x + 1, q2, q)) continue;
        auto w1 = try_add(x, q, q2);
        if (!w1) continue;
        auto w2 = try_add(x + 1, q2, q);
        if (!w2) continue;
        res.positional = false;
        res.q = q;
        res.q2 = q2;
        res.x = x;
        res.cex1 = *w1;
        res.cex2 = *w2;
        res.base = with_eps(A, R);
        return res;
      }
  auto full = with_eps(A, R);
  full.dmax = std::max(full.dmax, top);
  if (auto v = eps_complete_violation(full))
    throw Error("greedy completion is not eps-complete at x=" + std::to_string(v->x) + " (" + v->what + ")");
  if (auto w = incl_nd_in_det(full, Wdet)) throw Error("greedy completion changed the language");
  res.positional = true;
  res.completion = merge_equivalent(full);
  return res;
}

inline Automaton eps_complete_from_signature(const Signature& S) {
  int d = even_ceiling(S.d());
  int n = S.aut.n;
  EpsRelation R(n, d + 1);
  auto rank = [&](int x, int q) { return S.rank[std::min(x, S.d())][q]; };
  for (int x = 0; x <= d; x += 2)
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        if (rank(x, p) <= rank(x, q)) R.set(x + 1, q, p);
        if (rank(x, p) < rank(x, q)) R.set(x, q, p);
      }
  auto B = with_eps(S.aut, R);
  B.dmax = std::max(B.dmax, d + 1);
  return B;
}

}  // namespace posaut
