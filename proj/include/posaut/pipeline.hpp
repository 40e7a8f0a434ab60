#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "completion.hpp"
#include "progress.hpp"
#include "structure.hpp"

namespace posaut {

enum class WitnessKind {
  IncomparableResiduals,
  ProgressFailure,
  SafeOrderFailure,
  PolishLanguageChange,
  PolishFailure,
  FullProgressFailure
};

inline const char* witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::IncomparableResiduals: return "incomparable-residuals";
    case WitnessKind::ProgressFailure: return "progress";
    case WitnessKind::SafeOrderFailure: return "safe-order";
    case WitnessKind::PolishLanguageChange: return "polish-language-change";
    case WitnessKind::PolishFailure: return "polish";
    case WitnessKind::FullProgressFailure: return "full-progress";
  }
  return "?";
}

// State ids refer to `aut`, the automaton the failing step was looking at.
struct PositionalityWitness {
  WitnessKind kind = WitnessKind::ProgressFailure;
  Automaton aut;
  int x = 0, q = 0, p = 0;
  UPWord w1, w2;         // incomparable residuals; w1 alone for a polish language change
  Word sep_qp, sep_pq;   // safe-order failure
  ProgressWitness progress;
};

inline std::string witness_str(const PositionalityWitness& W) {
  const Automaton& A = W.aut;
  switch (W.kind) {
    case WitnessKind::IncomparableResiduals:
      return "witness: incomparable-residuals q=" + std::to_string(W.q) + " p=" + std::to_string(W.p) +
             " w1=" + upword_str(A, W.w1) + " w2=" + upword_str(A, W.w2);
    case WitnessKind::ProgressFailure:
    case WitnessKind::FullProgressFailure:
      return witness_str(A, W.progress);
    case WitnessKind::SafeOrderFailure:
      return "witness: safe-order x=" + std::to_string(W.x) + " q=" + std::to_string(W.q) + " p=" + std::to_string(W.p) +
             " sep_qp=" + word_str(A, W.sep_qp) + " sep_pq=" + word_str(A, W.sep_pq);
    case WitnessKind::PolishLanguageChange:
      return "witness: polish-language-change x=" + std::to_string(W.x) + " w=" + upword_str(A, W.w1);
    case WitnessKind::PolishFailure:
      return "witness: polish x=" + std::to_string(W.x) + " q=" + std::to_string(W.q);
  }
  return "";
}

struct P1Result {
  bool positional = false;
  Signature sig;
  std::optional<PositionalityWitness> witness;
  int restarts = 0;
};

namespace detail {

// Dense ranks of arbitrary keys, ordered by key.
template <class K>
std::vector<int> dense_rank(const std::vector<K>& keys) {
  std::set<K> s(keys.begin(), keys.end());
  std::vector<K> v(s.begin(), s.end());
  std::vector<int> r;
  for (auto& k : keys) r.push_back(static_cast<int>(std::lower_bound(v.begin(), v.end(), k) - v.begin()));
  return r;
}

struct Work {
  Automaton A;
  std::vector<std::vector<int>> rank;  // levels computed so far
};

// Deletes states marked in `gone`; transitions into them go to redirect[dst] with priority f(prio).
template <class F>
void remove_states(Work& W, const std::vector<char>& gone, const std::vector<int>& redirect, F f) {
  const Automaton& A = W.A;
  std::vector<int> id(A.n, -1);
  int c = 0;
  for (int q = 0; q < A.n; ++q)
    if (!gone[q]) id[q] = c++;
  Automaton B = A;
  B.n = c;
  B.init = id[gone[A.init] ? redirect[A.init] : A.init];
  B.trans.clear();
  for (auto t : A.trans) {
    if (gone[t.src]) continue;
    if (gone[t.dst]) {
      t.prio = f(t.prio);
      t.dst = redirect[t.dst];
    }
    B.trans.push_back({id[t.src], t.letter, t.prio, id[t.dst]});
  }
  sort_dedupe(B);
  for (auto& r : W.rank) {
    std::vector<int> nr;
    for (int q = 0; q < A.n; ++q)
      if (!gone[q]) nr.push_back(r[q]);
    r = dense_rank(nr);
  }
  W.A = B;
}

inline void saturate(Work& W, int x) {
  auto& r = W.rank[x - 2];
  std::vector<Transition> add;
  for (auto& t : W.A.trans)
    if (t.prio == x - 1)
      for (int p = 0; p < W.A.n; ++p)
        if (r[p] == r[t.dst]) add.push_back({t.src, t.letter, t.prio, p});
  W.A.trans.insert(W.A.trans.end(), add.begin(), add.end());
  sort_dedupe(W.A);
  W.A.deterministic = structurally_deterministic(W.A);
}

inline void safe_centralise(Work& W, int x) {
  while (true) {
    Automaton& A = W.A;
    auto& r = W.rank[x - 2];
    auto D = safe_components(A, x);
    auto& comp = D.cong.class_of;
    int q = -1, q2 = -1;
    for (int a = 0; a < A.n && q < 0; ++a)
      for (int b = 0; b < A.n && q < 0; ++b)
        if (comp[a] != comp[b] && r[a] == r[b] && !safe_incl(A, x, a, b)) q = a, q2 = b;
    if (q < 0) return;
    auto succ = geq_successors(A, x);
    int k = A.k();
    std::vector<int> pick(A.n, -1);
    std::vector<int> queue{q};
    pick[q] = q2;
    for (size_t i = 0; i < queue.size(); ++i) {
      int s = queue[i];
      for (int a = 0; a < k; ++a) {
        int t = succ[s * k + a];
        if (t < 0 || comp[t] != comp[q] || pick[t] >= 0) continue;
        int img = succ[pick[s] * k + a];
        if (img < 0) throw Error("safe centralisation: safe run of the dominating state is blocked");
        pick[t] = img;
        queue.push_back(t);
      }
    }
    std::vector<char> gone(A.n, 0);
    for (int s = 0; s < A.n; ++s)
      if (comp[s] == comp[q]) {
        if (pick[s] < 0) throw Error("safe centralisation: component not strongly connected");
        gone[s] = 1;
      }
    remove_states(W, gone, pick, [](int p) { return p; });
  }
}

// Component index per state, ordered by minimal state id.
inline std::vector<int> component_index(const Automaton& A, int x) { return safe_components(A, x).cong.class_of; }

inline std::optional<PositionalityWitness> order_safe(Work& W, int x) {
  const Automaton& A = W.A;
  auto comp = component_index(A, x);
  std::vector<std::pair<int, int>> k1;
  for (int q = 0; q < A.n; ++q) k1.push_back({W.rank[x - 2][q], comp[q]});
  W.rank.push_back(dense_rank(k1));
  auto& r1 = W.rank[x - 1];
  std::vector<std::vector<char>> leq(A.n, std::vector<char>(A.n, 0));
  for (int q = 0; q < A.n; ++q)
    for (int p = 0; p < A.n; ++p)
      if (r1[q] == r1[p]) leq[q][p] = q == p || !safe_incl(A, x, q, p);
  for (int q = 0; q < A.n; ++q)
    for (int p = q + 1; p < A.n; ++p)
      if (r1[q] == r1[p] && !leq[q][p] && !leq[p][q]) {
        PositionalityWitness w;
        w.kind = WitnessKind::SafeOrderFailure;
        w.aut = A;
        w.x = x;
        w.q = q;
        w.p = p;
        w.sep_qp = *safe_incl(A, x, q, p);
        w.sep_pq = *safe_incl(A, x, p, q);
        return w;
      }
  std::vector<std::pair<int, int>> k2;
  for (int q = 0; q < A.n; ++q) {
    std::set<int> below;
    for (int p = 0; p < A.n; ++p)
      if (r1[p] == r1[q] && leq[p][q] && !leq[q][p]) {
        int rep = p;
        for (int s = 0; s < A.n; ++s)
          if (leq[s][p] && leq[p][s]) {
            rep = s;
            break;
          }
        below.insert(rep);
      }
    k2.push_back({r1[q], static_cast<int>(below.size())});
  }
  W.rank.push_back(dense_rank(k2));
  return std::nullopt;
}

inline void redeterminise(Work& W, int x) {
  Automaton& A = W.A;
  auto comp = component_index(A, x);
  auto& r0 = W.rank[x - 2];
  auto& r1 = W.rank[x - 1];
  auto& r2 = W.rank[x];
  auto pick_max = [&](int p) {
    int best = -1;
    for (int s = 0; s < A.n; ++s)
      if (r1[s] == r1[p] && (best < 0 || r2[s] > r2[best])) best = s;
    return best;
  };
  std::map<std::pair<int, int>, int> chosen;
  for (auto& t : A.trans) {
    if (t.prio != x - 1 || chosen.count({t.src, t.letter})) continue;
    int i = comp[t.src], inext = -1, best = -1;
    for (int s = 0; s < A.n; ++s)
      if (r0[s] == r0[t.dst]) {
        if (comp[s] < i) inext = std::max(inext, comp[s]);
        best = std::max(best, comp[s]);
      }
    if (inext < 0) inext = best;
    int p = -1;
    for (int s = 0; s < A.n && p < 0; ++s)
      if (comp[s] == inext && r0[s] == r0[t.dst]) p = s;
    chosen[{t.src, t.letter}] = pick_max(p);
  }
  std::vector<Transition> out;
  for (auto t : A.trans) {
    if (t.prio == x - 1) t.dst = chosen[{t.src, t.letter}];
    out.push_back(t);
  }
  A.trans = out;
  sort_dedupe(A);
  if (!structurally_deterministic(A)) throw Error("re-determinisation left a nondeterministic automaton");
  A.deterministic = true;
}

// Neutral-letter graph of the local automaton of the class `members`, exploring exact letters.
inline Adj neutral_local_graph(const DetView& D, const std::vector<int>& members, const std::vector<int>& cls, int x,
                               int sentinel) {
  int k = static_cast<int>(members.size());
  int c = cls[members[0]];
  Adj g(D.n);
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> queue;
  std::vector<int> start;
  for (int m : members) start.insert(start.end(), {m, sentinel});
  seen[start] = 0;
  queue.push_back(start);
  for (size_t i = 0; i < queue.size(); ++i) {
    auto cur = queue[i];
    for (int a = 0; a < D.k; ++a) {
      std::vector<int> nx(2 * k);
      bool low = false;
      int in = 0;
      for (int j = 0; j < k; ++j) {
        int s = cur[2 * j];
        nx[2 * j] = D.dst(s, a);
        nx[2 * j + 1] = std::min(cur[2 * j + 1], D.pr(s, a));
        low = low || nx[2 * j + 1] < x;
        in += cls[nx[2 * j]] == c;
      }
      if (low || (in > 0 && in < k)) continue;
      if (in == k) {
        bool neutral = false;
        for (int j = 0; j < k; ++j) neutral = neutral || nx[2 * j + 1] != x;
        if (neutral)
          for (int j = 0; j < k; ++j) g[members[j]].push_back(nx[2 * j]);
        continue;
      }
      if (!seen.count(nx)) {
        seen[nx] = static_cast<int>(queue.size());
        queue.push_back(nx);
      }
    }
  }
  return g;
}

enum class PolishOutcome { Structured, Shrunk, Stuck };

// On Stuck, *stuck is the smallest state of a class that cannot be polished.
inline PolishOutcome polish(Work& W, int x, int* stuck = nullptr) {
  Automaton& A = W.A;
  auto D = det_view(A);
  auto& cls = W.rank[x];
  int d = max_prio(A);
  Adj high(A.n);
  for (auto& t : A.trans)
    if (t.prio > x) high[t.src].push_back(t.dst);
  std::map<int, std::vector<int>> classes;
  for (int q = 0; q < A.n; ++q) classes[cls[q]].push_back(q);
  for (auto& [c, members] : classes) {
    if (members.size() < 2) continue;
    bool ok = true;
    for (int a = 0; a < D.k && ok; ++a)
      for (int m : members) ok = ok && ((D.pr(m, a) == x) == (D.pr(members[0], a) == x));
    for (int m : members) {
      if (!ok) break;
      auto r = reach_from(high, {m});
      for (int o : members) ok = ok && r[o];
    }
    if (ok) continue;
    Adj g = neutral_local_graph(D, members, cls, x, d + 1);
    int nc = 0;
    auto comp = scc(g, &nc);
    std::vector<char> final_c(nc, 1);
    for (int m : members)
      for (int t : g[m])
        if (comp[t] != comp[m]) final_c[comp[m]] = 0;
    int q0 = -1;
    for (int m : members)
      if (final_c[comp[m]]) {
        q0 = m;
        break;
      }
    std::vector<char> gone(A.n, 0);
    int cut = 0;
    for (int m : members)
      if (comp[m] != comp[q0]) gone[m] = 1, ++cut;
    if (cut == 0) {
      if (stuck) *stuck = members.front();
      return PolishOutcome::Stuck;
    }
    std::vector<int> redirect(A.n, q0);
    remove_states(W, gone, redirect, [x](int p) { return p <= x ? p : x; });
    return PolishOutcome::Shrunk;
  }
  std::vector<int> pickp(A.n);
  for (int q = 0; q < A.n; ++q) pickp[q] = classes[cls[q]].front();
  for (auto& t : A.trans)
    if (t.prio == x) t.dst = pickp[t.dst];
  sort_dedupe(A);
  return PolishOutcome::Structured;
}

inline std::optional<PositionalityWitness> language_change(const Automaton& A, const Automaton& Wdet, int x) {
  auto w = incl_det(A, A.init, Wdet, Wdet.init);
  if (!w) w = incl_det(Wdet, Wdet.init, A, A.init);
  if (!w) return std::nullopt;
  PositionalityWitness r;
  r.kind = WitnessKind::PolishLanguageChange;
  r.aut = Wdet;
  r.x = x;
  r.w1 = *w;
  return r;
}

}  // namespace detail

// Checks the structured signature conditions; returns the first violation found.
inline std::optional<std::string> validate_signature(const Signature& S) {
  const Automaton& A = S.aut;
  if (!structurally_deterministic(A)) return "automaton is not deterministic";
  int n = A.n, d = S.d();
  if (d < max_prio(A)) return "fewer preorder levels than priorities";
  for (auto& r : S.rank)
    if (static_cast<int>(r.size()) != n) return "preorder level with wrong number of states";
  auto D = det_view(A);
  auto R = residual_preorder(A);
  auto rk = [&](int x, int q) { return S.rank[x][q]; };
  for (int x = 1; x <= d; ++x)
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        if (rk(x, q) == rk(x, p) && rk(x - 1, q) != rk(x - 1, p))
          return "level " + std::to_string(x) + " does not refine level " + std::to_string(x - 1);
        if (rk(x - 1, q) < rk(x - 1, p) && rk(x, q) >= rk(x, p))
          return "level " + std::to_string(x) + " does not refine level " + std::to_string(x - 1);
      }
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < n; ++p)
      if ((rk(0, q) <= rk(0, p)) != static_cast<bool>(R.leq[q][p]))
        return "level 0 differs from residual inclusion at states " + std::to_string(q) + "," + std::to_string(p);
  for (int x = 0; x <= d; x += 2)
    if (auto v = faithful_violation(A, make_congruence(S.rank[x]), x))
      return "level " + std::to_string(x) + " not faithful: " + v->what;
  for (int x = 2; x <= d + 1; x += 2) {
    auto comp = detail::component_index(A, x);
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        if (rk(x - 2, q) != rk(x - 2, p)) continue;
        bool same1 = rk(x - 1, q) == rk(x - 1, p);
        if (same1 != (comp[q] == comp[p]))
          return "level " + std::to_string(x - 1) + " is not the safe component partition";
        if (x <= d && same1 && (rk(x, q) <= rk(x, p)) != !safe_incl(A, x, q, p))
          return "level " + std::to_string(x) + " differs from safe-language inclusion";
        if (x <= d && comp[q] != comp[p] && !safe_incl(A, x, q, p))
          return "redundant safe component at level " + std::to_string(x);
      }
  }
  for (int x = 0; x <= d; x += 2)
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        if (rk(x, q) != rk(x, p)) continue;
        for (int a = 0; a < D.k; ++a)
          if (D.pr(q, a) <= x && (D.pr(q, a) != D.pr(p, a) || D.dst(q, a) != D.dst(p, a)))
            return "level " + std::to_string(x) + " not strongly congruent on states " + std::to_string(q) + "," +
                   std::to_string(p);
      }
  for (int x = 0; x <= d; ++x) {
    Adj high(n);
    for (auto& t : A.trans)
      if (t.prio > x) high[t.src].push_back(t.dst);
    for (int q = 0; q < n; ++q) {
      auto r = reach_from(high, {q});
      for (int p = 0; p < n; ++p)
        if (rk(x, q) == rk(x, p) && !r[p])
          return "class at level " + std::to_string(x) + " not connected above " + std::to_string(x);
    }
  }
  auto same_below = [&](int x, int q, int p) { return x == 0 || rk(x - 1, q) == rk(x - 1, p); };
  for (int x = 0; x <= d; x += 2)
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        if (!same_below(x, q, p) || rk(x, q) > rk(x, p)) continue;
        for (int a = 0; a < D.k; ++a) {
          if (D.pr(q, a) < x) continue;
          int s = D.dst(q, a), t = D.dst(p, a);
          if (D.pr(p, a) < x || !same_below(x, s, t) || rk(x, s) > rk(x, t))
            return "level " + std::to_string(x) + " not locally monotone at states " + std::to_string(q) + "," +
                   std::to_string(p);
        }
      }
  return std::nullopt;
}

inline P1Result decide_positionality_p1(const Automaton& input) {
  if (!structurally_deterministic(input)) throw Error("procedure 1 needs a deterministic automaton");
  const Automaton Wdet = trim(input);
  Automaton cur = Wdet;
  P1Result res;
  int dmax = std::max(1, max_prio(Wdet) + 1);
  int bound = dmax * Wdet.n + 2;
  for (;; ++res.restarts) {
    if (res.restarts > bound) throw Error("procedure 1 exceeded its restart bound");
    detail::Work W;
    W.A = normalize(trim(cur), InterScc::Zero);
    W.A.deterministic = true;
    auto R = residual_preorder(W.A);
    if (!R.total) {
      auto acc = access_words(W.A);
      PositionalityWitness w;
      w.kind = WitnessKind::IncomparableResiduals;
      w.aut = W.A;
      w.q = R.incomparable->q;
      w.p = R.incomparable->p;
      w.w1 = R.incomparable->in_q_not_p;
      w.w2 = R.incomparable->in_p_not_q;
      w.sep_qp = acc[w.q];
      w.sep_pq = acc[w.p];
      res.witness = w;
      return res;
    }
    if (auto pw = check_progress_consistency(W.A, R)) {
      PositionalityWitness w;
      w.kind = WitnessKind::ProgressFailure;
      w.aut = W.A;
      w.q = pw->q;
      w.p = pw->p;
      w.progress = *pw;
      res.witness = w;
      return res;
    }
    W.rank.push_back(R.rank);
    int before = W.A.n;
    bool restart = false;
    int d = max_prio(W.A);
    for (int x = 0; x <= d && !restart; x += 2) {
      if (x > 0) {
        detail::saturate(W, x);
        detail::safe_centralise(W, x);
        if (auto f = detail::order_safe(W, x)) {
          res.witness = f;
          return res;
        }
        detail::redeterminise(W, x);
        if (auto f = detail::language_change(W.A, Wdet, x)) {
          res.witness = f;
          return res;
        }
      }
      int stuck = -1;
      auto out = detail::polish(W, x, &stuck);
      if (out == detail::PolishOutcome::Stuck) {
        PositionalityWitness w;
        w.kind = WitnessKind::PolishFailure;
        w.aut = W.A;
        w.x = x;
        w.q = stuck;
        res.witness = w;
        return res;
      }
      if (auto f = detail::language_change(W.A, Wdet, x)) {
        res.witness = f;
        return res;
      }
      auto reach = reachable_states(W.A, W.A.init);
      if (out == detail::PolishOutcome::Shrunk || W.A.n < before ||
          std::count(reach.begin(), reach.end(), 1) < W.A.n)
        restart = true;
    }
    if (restart) {
      cur = W.A;
      continue;
    }
    if (d % 2 == 1) {
      std::vector<std::pair<int, int>> key;
      for (int q = 0; q < W.A.n; ++q) key.push_back({W.rank[d - 1][q], q});
      W.rank.push_back(detail::dense_rank(key));
    }
    Signature S{W.A, W.rank};
    if (auto v = validate_signature(S)) throw Error("procedure 1 produced an invalid signature: " + *v);
    if (auto pw = check_full_progress_consistency(S)) {
      PositionalityWitness w;
      w.kind = WitnessKind::FullProgressFailure;
      w.aut = W.A;
      w.x = pw->x;
      w.q = pw->q;
      w.p = pw->p;
      w.progress = *pw;
      res.witness = w;
      return res;
    }
    res.positional = true;
    res.sig = S;
    return res;
  }
}

}  // namespace posaut
