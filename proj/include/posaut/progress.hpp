#pragma once

#include <optional>
#include <vector>

#include "lang.hpp"

namespace posaut {

struct ProgressWitness {
  bool full = false;
  int x = 0;
  int q = 0;
  int p = 0;
  Word w;
  Word u;  // plain only: access word of q
};

// Deterministic finite-word automaton; state -1 is the implicit rejecting sink.
struct FinDFA {
  int n = 0;
  int k = 0;
  int init = 0;
  std::vector<int> next;
  std::vector<char> final;
  bool accepts(const Word& w) const {
    int s = init;
    for (int a : w) {
      if (s < 0) return false;
      s = next[s * k + a];
    }
    return s >= 0 && final[s];
  }
};

enum class PathMode { Exactly, AtLeast };

inline FinDFA finite_path_language(const Automaton& A, int q, int p, PathMode mode, int x) {
  auto D = det_view(A);
  FinDFA F;
  F.k = D.k;
  if (mode == PathMode::AtLeast) {
    F.n = D.n;
    F.init = q;
    F.next.assign(static_cast<size_t>(F.n) * F.k, -1);
    F.final.assign(F.n, 0);
    F.final[p] = 1;
    for (int s = 0; s < D.n; ++s)
      for (int a = 0; a < D.k; ++a)
        if (D.pr(s, a) >= x) F.next[s * F.k + a] = D.dst(s, a);
    return F;
  }
  int d = max_prio(A);
  int w = d + 1;
  F.n = D.n * w + 1;
  F.init = D.n * w;
  F.next.assign(static_cast<size_t>(F.n) * F.k, -1);
  F.final.assign(F.n, 0);
  if (x <= d) F.final[p * w + x] = 1;
  for (int s = 0; s < D.n; ++s)
    for (int m = 0; m < w; ++m)
      for (int a = 0; a < D.k; ++a) F.next[(s * w + m) * F.k + a] = D.dst(s, a) * w + std::min(m, D.pr(s, a));
  for (int a = 0; a < D.k; ++a) F.next[F.init * F.k + a] = D.dst(q, a) * w + D.pr(q, a);
  return F;
}

// Shortest w with q -w:>=x-> p and p -w:y-> p for an odd y.
inline std::optional<Word> progress_search(const DetView& D, int q, int p, int x, int d) {
  int w = d + 2;  // slot d+1 means "nothing read yet"
  int n = D.n;
  auto id = [&](int s1, int s2, int m) { return (s1 * n + s2) * w + m; };
  int total = n * n * w;
  std::vector<int> pred(total, -2), plet(total, -1);
  int start = id(q, p, d + 1);
  pred[start] = -1;
  std::vector<int> queue{start};
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    int m = v % w, s2 = (v / w) % n, s1 = v / w / n;
    if (m <= d && m % 2 == 1 && s1 == p && s2 == p) {
      Word out;
      for (int u = v; pred[u] != -1; u = pred[u]) out.push_back(plet[u]);
      return Word(out.rbegin(), out.rend());
    }
    for (int a = 0; a < D.k; ++a) {
      if (D.pr(s1, a) < x) continue;
      int m2 = std::min(m, D.pr(s2, a));
      int u = id(D.dst(s1, a), D.dst(s2, a), m2);
      if (pred[u] == -2) {
        pred[u] = v;
        plet[u] = a;
        queue.push_back(u);
      }
    }
  }
  return std::nullopt;
}

inline std::vector<Word> access_words(const Automaton& A) {
  auto D = det_view(A);
  std::vector<Word> acc(A.n);
  std::vector<char> seen(A.n, 0);
  std::vector<int> queue{A.init};
  seen[A.init] = 1;
  for (size_t i = 0; i < queue.size(); ++i) {
    int s = queue[i];
    for (int a = 0; a < D.k; ++a) {
      int t = D.dst(s, a);
      if (!seen[t]) {
        seen[t] = 1;
        acc[t] = concat(acc[s], {a});
        queue.push_back(t);
      }
    }
  }
  return acc;
}

// Requires a total residual preorder on a trimmed automaton.
inline std::optional<ProgressWitness> check_progress_consistency(const Automaton& A, const ResidualPreorder& R) {
  auto D = det_view(A);
  int d = max_prio(A);
  auto acc = access_words(A);
  for (int q = 0; q < A.n; ++q)
    for (int p = 0; p < A.n; ++p) {
      if (!(R.leq[q][p] && !R.leq[p][q])) continue;
      if (auto w = progress_search(D, q, p, 0, d)) return ProgressWitness{false, 0, q, p, *w, acc[q]};
    }
  return std::nullopt;
}

inline std::optional<ProgressWitness> check_progress_consistency(const Automaton& A) {
  auto R = residual_preorder(A);
  if (!R.total) throw Error("residuals are not totally ordered");
  return check_progress_consistency(A, R);
}

inline std::optional<ProgressWitness> check_full_progress_consistency(const Signature& S) {
  auto D = det_view(S.aut);
  int d = max_prio(S.aut);
  for (int x = 0; x <= S.d(); x += 2)
    for (int q = 0; q < S.aut.n; ++q)
      for (int p = 0; p < S.aut.n; ++p) {
        if (S.rank[x][q] >= S.rank[x][p]) continue;
        if (auto w = progress_search(D, q, p, x, d)) return ProgressWitness{true, x, q, p, *w, {}};
      }
  return std::nullopt;
}

inline std::string witness_str(const Automaton& A, const ProgressWitness& w) {
  if (!w.full) return "witness: progress u=" + word_str(A, w.u) + " w=" + word_str(A, w.w);
  return "witness: full-progress x=" + std::to_string(w.x) + " q=" + std::to_string(w.q) + " p=" + std::to_string(w.p) +
         " w=" + word_str(A, w.w);
}

}  // namespace posaut
