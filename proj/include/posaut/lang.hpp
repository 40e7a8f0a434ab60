#pragma once

#include <optional>
#include <vector>

#include "automaton.hpp"
#include "lasso.hpp"
#include "structure.hpp"
#include "words.hpp"

namespace posaut {

inline Automaton complement_det(const Automaton& A) {
  if (!structurally_deterministic(A)) throw Error("complement_det needs a deterministic automaton");
  Automaton B = A;
  for (auto& t : B.trans) t.prio += 1;
  B.dmin = A.dmin + 1;
  B.dmax = A.dmax + 1;
  return B;
}

inline Automaton with_initial(Automaton A, int q) {
  A.init = q;
  return A;
}

inline bool up_member_det(const DetView& D, int from, const UPWord& w) {
  int s = from;
  for (int a : w.u) s = D.dst(s, a);
  std::vector<int> seen(D.n, -1);
  std::vector<int> minp;
  int it = 0;
  while (seen[s] < 0) {
    seen[s] = it++;
    int m = 1 << 30;
    for (int a : w.v) {
      m = std::min(m, D.pr(s, a));
      s = D.dst(s, a);
    }
    minp.push_back(m);
  }
  int m = 1 << 30;
  for (int i = seen[s]; i < it; ++i) m = std::min(m, minp[i]);
  return m % 2 == 0;
}

// Existential semantics; runs may not end in an infinite sequence of epsilon moves.
inline bool up_member_nd(const Automaton& A, int from, const UPWord& w) {
  int L = static_cast<int>(w.u.size() + w.v.size());
  auto at = [&](int i) { return i < static_cast<int>(w.u.size()) ? w.u[i] : w.v[i - w.u.size()]; };
  auto nxt = [&](int i) { return i + 1 < L ? i + 1 : static_cast<int>(w.u.size()); };
  LGraph g;
  g.n = A.n * L;
  g.k = 1;
  for (int i = 0; i < L; ++i)
    for (auto& t : A.trans) {
      if (t.letter == kEps) g.add(t.src * L + i, t.dst * L + i, {t.prio, 0, 0}, false, -1);
      else if (t.letter == at(i)) g.add(t.src * L + i, t.dst * L + nxt(i), {t.prio, 0, 0}, true, t.letter);
    }
  return find_lasso(g, {from * L}, true).has_value();
}

inline bool up_membership(const Automaton& A, const UPWord& w) {
  for (int a : w.u)
    if (a < 0 || a >= A.k()) throw Error("letter not in alphabet");
  for (int a : w.v)
    if (a < 0 || a >= A.k()) throw Error("letter not in alphabet");
  if (w.v.empty()) throw Error("empty period");
  if (structurally_deterministic(A)) return up_member_det(det_view(A), A.init, w);
  return up_member_nd(A, A.init, w);
}

inline bool up_membership_from(const Automaton& A, int q, const UPWord& w) { return up_membership(with_initial(A, q), w); }

inline UPWord lasso_word(const LGraph& g, const Lasso& L) {
  return canonical({labels_of(g, L.prefix), labels_of(g, L.cycle)});
}

// nullopt when L(A_q) is included in L(B_p), else a word of the difference.
inline std::optional<UPWord> incl_det(const Automaton& A, int q, const Automaton& B, int p) {
  auto DA = det_view(A), DB = det_view(B);
  if (DA.k != DB.k) throw Error("alphabets differ");
  LGraph g;
  g.n = DA.n * DB.n;
  g.k = 2;
  for (int s = 0; s < DA.n; ++s)
    for (int t = 0; t < DB.n; ++t)
      for (int a = 0; a < DA.k; ++a)
        g.add(s * DB.n + t, DA.dst(s, a) * DB.n + DB.dst(t, a), {DA.pr(s, a), DB.pr(t, a) + 1, 0}, true, a);
  auto L = find_lasso(g, {q * DB.n + p}, false);
  if (!L) return std::nullopt;
  return lasso_word(g, *L);
}

inline std::optional<UPWord> incl_nd_in_det(const Automaton& A, const Automaton& B, int qa = -1, int pb = -1) {
  auto DB = det_view(B);
  if (A.k() != DB.k) throw Error("alphabets differ");
  if (qa < 0) qa = A.init;
  if (pb < 0) pb = B.init;
  LGraph g;
  g.n = A.n * DB.n;
  g.k = 2;
  for (auto& tr : A.trans)
    for (int t = 0; t < DB.n; ++t) {
      if (tr.letter == kEps)
        g.add(tr.src * DB.n + t, tr.dst * DB.n + t, {tr.prio, kNeutral, 0}, false, -1);
      else
        g.add(tr.src * DB.n + t, tr.dst * DB.n + DB.dst(t, tr.letter), {tr.prio, DB.pr(t, tr.letter) + 1, 0}, true,
              tr.letter);
    }
  auto L = find_lasso(g, {qa * DB.n + pb}, true);
  if (!L) return std::nullopt;
  return lasso_word(g, *L);
}

inline bool equivalent_det(const Automaton& A, const Automaton& B) {
  return !incl_det(A, A.init, B, B.init) && !incl_det(B, B.init, A, A.init);
}

struct ResidualPreorder {
  int n = 0;
  std::vector<std::vector<char>> leq;  // leq[q][p]: L(q) included in L(p)
  std::vector<int> rank;               // valid when total
  bool total = true;
  struct Witness {
    int q, p;
    UPWord in_q_not_p, in_p_not_q;
  };
  std::optional<Witness> incomparable;
  bool equiv(int q, int p) const { return leq[q][p] && leq[p][q]; }
};

inline ResidualPreorder residual_preorder(const Automaton& A) {
  ResidualPreorder R;
  R.n = A.n;
  R.leq.assign(A.n, std::vector<char>(A.n, 0));
  std::vector<std::vector<std::optional<UPWord>>> cex(A.n, std::vector<std::optional<UPWord>>(A.n));
  for (int q = 0; q < A.n; ++q)
    for (int p = 0; p < A.n; ++p) {
      if (q == p) {
        R.leq[q][p] = 1;
        continue;
      }
      cex[q][p] = incl_det(A, q, A, p);
      R.leq[q][p] = !cex[q][p].has_value();
    }
  for (int q = 0; q < A.n && R.total; ++q)
    for (int p = q + 1; p < A.n; ++p)
      if (!R.leq[q][p] && !R.leq[p][q]) {
        R.total = false;
        R.incomparable = ResidualPreorder::Witness{q, p, *cex[q][p], *cex[p][q]};
        break;
      }
  R.rank.assign(A.n, 0);
  if (R.total) {
    // rank = number of distinct classes strictly below
    for (int q = 0; q < A.n; ++q) {
      std::vector<int> reps;
      for (int p = 0; p < A.n; ++p) {
        if (!(R.leq[p][q] && !R.leq[q][p])) continue;
        bool fresh = true;
        for (int r : reps) fresh = fresh && !R.equiv(r, p);
        if (fresh) reps.push_back(p);
      }
      R.rank[q] = static_cast<int>(reps.size());
    }
  }
  return R;
}

struct ResidualAutomaton {
  Congruence cong;
  int n = 0;
  int init = 0;
  std::vector<int> next;  // next[c*k+a]
};

inline ResidualAutomaton residual_automaton(const Automaton& A, const ResidualPreorder& R) {
  auto D = det_view(A);
  std::vector<int> lab(A.n);
  for (int q = 0; q < A.n; ++q) {
    lab[q] = q;
    for (int p = 0; p < q; ++p)
      if (R.equiv(p, q)) {
        lab[q] = lab[p];
        break;
      }
  }
  ResidualAutomaton RA;
  RA.cong = make_congruence(lab);
  RA.n = RA.cong.count();
  RA.init = RA.cong.class_of[A.init];
  RA.next.assign(static_cast<size_t>(RA.n) * D.k, -1);
  for (int q = 0; q < A.n; ++q)
    for (int a = 0; a < D.k; ++a) RA.next[RA.cong.class_of[q] * D.k + a] = RA.cong.class_of[D.dst(q, a)];
  return RA;
}

// succ[q*k+a] = target of the a-transition of priority >= x, -1 when none.
inline std::vector<int> geq_successors(const Automaton& A, int x) {
  std::vector<int> s(static_cast<size_t>(A.n) * A.k(), -1);
  for (auto& t : A.trans) {
    if (t.letter == kEps || t.prio < x) continue;
    int& r = s[t.src * A.k() + t.letter];
    if (r >= 0 && r != t.dst) throw Error("automaton not deterministic over priorities >= " + std::to_string(x));
    r = t.dst;
  }
  return s;
}

// nullopt when Safe_x(q) is included in Safe_x(p); else a finite word safe from q but not from p.
inline std::optional<Word> safe_incl(const Automaton& A, int x, int q, int p) {
  auto s = geq_successors(A, x);
  int k = A.k(), n = A.n;
  std::vector<int> pred(n * n, -2), plet(n * n, -1);
  std::vector<int> queue{q * n + p};
  pred[q * n + p] = -1;
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i], a1 = v / n, b1 = v % n;
    for (int a = 0; a < k; ++a) {
      int a2 = s[a1 * k + a];
      if (a2 < 0) continue;
      int b2 = s[b1 * k + a];
      if (b2 < 0) {
        Word w{a};
        for (int u = v; pred[u] != -1; u = pred[u]) w.push_back(plet[u]);
        return Word(w.rbegin(), w.rend());
      }
      int u = a2 * n + b2;
      if (pred[u] == -2) {
        pred[u] = v;
        plet[u] = a;
        queue.push_back(u);
      }
    }
  }
  return std::nullopt;
}

}  // namespace posaut
