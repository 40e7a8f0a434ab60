#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace posaut {

constexpr int kEps = -1;

struct Transition {
  int src = 0;
  int letter = 0;  // index into the alphabet, kEps for an epsilon move
  int prio = 0;
  int dst = 0;
  auto key() const { return std::tie(src, letter, prio, dst); }
  bool operator==(const Transition& o) const { return key() == o.key(); }
  bool operator<(const Transition& o) const { return key() < o.key(); }
};

struct Automaton {
  std::vector<std::string> alphabet;
  int n = 0;
  int init = 0;
  std::vector<Transition> trans;
  int dmin = 0;
  int dmax = 0;
  bool deterministic = false;

  int k() const { return static_cast<int>(alphabet.size()); }

  int letter_index(const std::string& tok) const {
    if (tok == "eps") return kEps;
    for (int i = 0; i < k(); ++i)
      if (alphabet[i] == tok) return i;
    throw std::invalid_argument("letter not in alphabet: " + tok);
  }

  std::string letter_name(int a) const { return a == kEps ? "eps" : alphabet.at(a); }

  bool operator==(const Automaton& o) const {
    return alphabet == o.alphabet && n == o.n && init == o.init && trans == o.trans &&
           dmin == o.dmin && dmax == o.dmax && deterministic == o.deterministic;
  }
};

// Nested total preorders: rank[x][q] for x = 0..d, smaller rank = smaller state.
struct Signature {
  Automaton aut;
  std::vector<std::vector<int>> rank;
  int d() const { return static_cast<int>(rank.size()) - 1; }
  bool operator==(const Signature& o) const { return aut == o.aut && rank == o.rank; }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int max_prio(const Automaton& A) {
  int m = 0;
  for (auto& t : A.trans) m = std::max(m, t.prio);
  return m;
}

inline bool has_eps(const Automaton& A) {
  for (auto& t : A.trans)
    if (t.letter == kEps) return true;
  return false;
}

// Exactly one transition per (state, letter) and no epsilon moves.
inline bool structurally_deterministic(const Automaton& A) {
  std::vector<int> cnt(static_cast<size_t>(A.n) * A.k(), 0);
  for (auto& t : A.trans) {
    if (t.letter == kEps) return false;
    if (++cnt[t.src * A.k() + t.letter] > 1) return false;
  }
  for (int c : cnt)
    if (c != 1) return false;
  return true;
}

struct DetView {
  int n = 0;
  int k = 0;
  int init = 0;
  std::vector<int> next;
  std::vector<int> prio;
  int dst(int q, int a) const { return next[q * k + a]; }
  int pr(int q, int a) const { return prio[q * k + a]; }
};

inline DetView det_view(const Automaton& A) {
  if (!structurally_deterministic(A)) throw Error("automaton is not deterministic");
  DetView D;
  D.n = A.n;
  D.k = A.k();
  D.init = A.init;
  D.next.assign(static_cast<size_t>(A.n) * A.k(), -1);
  D.prio.assign(static_cast<size_t>(A.n) * A.k(), -1);
  for (auto& t : A.trans) {
    D.next[t.src * D.k + t.letter] = t.dst;
    D.prio[t.src * D.k + t.letter] = t.prio;
  }
  return D;
}

inline Automaton from_det_view(const DetView& D, const std::vector<std::string>& alphabet) {
  Automaton A;
  A.alphabet = alphabet;
  A.n = D.n;
  A.init = D.init;
  A.deterministic = true;
  for (int q = 0; q < D.n; ++q)
    for (int a = 0; a < D.k; ++a) A.trans.push_back({q, a, D.pr(q, a), D.dst(q, a)});
  A.dmin = 0;
  A.dmax = max_prio(A);
  return A;
}

inline std::vector<int> reachable_states(const Automaton& A, int from) {
  std::vector<std::vector<int>> adj(A.n);
  for (auto& t : A.trans) adj[t.src].push_back(t.dst);
  std::vector<int> seen(A.n, 0), order{from};
  seen[from] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (int v : adj[order[i]])
      if (!seen[v]) {
        seen[v] = 1;
        order.push_back(v);
      }
  return seen;
}

// Drops unreachable states; map[old] = new id or -1.
inline Automaton trim(const Automaton& A, std::vector<int>* map = nullptr) {
  auto seen = reachable_states(A, A.init);
  std::vector<int> m(A.n, -1);
  int c = 0;
  for (int q = 0; q < A.n; ++q)
    if (seen[q]) m[q] = c++;
  Automaton B = A;
  B.n = c;
  B.init = m[A.init];
  B.trans.clear();
  for (auto& t : A.trans)
    if (m[t.src] >= 0) B.trans.push_back({m[t.src], t.letter, t.prio, m[t.dst]});
  if (map) *map = m;
  return B;
}

inline void sort_dedupe(Automaton& A) {
  std::sort(A.trans.begin(), A.trans.end());
  A.trans.erase(std::unique(A.trans.begin(), A.trans.end()), A.trans.end());
}

inline std::vector<std::string> validate(const Automaton& A) {
  std::vector<std::string> out;
  if (A.n <= 0) out.push_back("automaton has no states");
  if (A.init < 0 || A.init >= A.n) out.push_back("initial state out of range");
  if (A.dmin > A.dmax) out.push_back("empty priority range");
  std::vector<int> cnt(static_cast<size_t>(std::max(A.n, 0)) * A.k(), 0);
  bool eps = false;
  for (auto& t : A.trans) {
    if (t.src < 0 || t.src >= A.n || t.dst < 0 || t.dst >= A.n) {
      out.push_back("transition with state out of range");
      continue;
    }
    if (t.prio < A.dmin || t.prio > A.dmax)
      out.push_back("priority " + std::to_string(t.prio) + " outside declared range on transition from state " +
                    std::to_string(t.src));
    if (t.letter == kEps) {
      eps = true;
      continue;
    }
    cnt[t.src * A.k() + t.letter]++;
  }
  for (int q = 0; q < A.n; ++q)
    for (int a = 0; a < A.k(); ++a) {
      int c = cnt[q * A.k() + a];
      if (c == 0) out.push_back("state " + std::to_string(q) + " missing " + A.alphabet[a] + "-transition");
      if (c > 1 && A.deterministic)
        out.push_back("state " + std::to_string(q) + " has several " + A.alphabet[a] + "-transitions");
    }
  if (eps && A.deterministic) out.push_back("deterministic automaton has epsilon transitions");
  return out;
}

// Unreachable states are warnings, reported separately.
inline std::vector<int> unreachable(const Automaton& A) {
  std::vector<int> r;
  if (A.init < 0 || A.init >= A.n) return r;
  auto seen = reachable_states(A, A.init);
  for (int q = 0; q < A.n; ++q)
    if (!seen[q]) r.push_back(q);
  return r;
}

}  // namespace posaut
