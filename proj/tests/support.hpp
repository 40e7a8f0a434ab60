#pragma once

#include <random>
#include <string>
#include <vector>

#include "posaut/io.hpp"
#include "posaut/lang.hpp"

namespace testing {

using namespace posaut;

inline Automaton fixture(const std::string& name) { return load_dpa(std::string(POSAUT_FIXTURES) + "/" + name + ".dpa"); }

inline std::vector<std::string> letters(int k) {
  std::vector<std::string> v;
  for (int a = 0; a < k; ++a) v.push_back(std::string(1, static_cast<char>('a' + a)));
  return v;
}

inline Automaton random_det(std::mt19937& rng, int max_states, int max_letters, int max_prio) {
  Automaton A;
  A.n = 1 + static_cast<int>(rng() % max_states);
  A.alphabet = letters(1 + static_cast<int>(rng() % max_letters));
  A.deterministic = true;
  for (int q = 0; q < A.n; ++q)
    for (int a = 0; a < A.k(); ++a)
      A.trans.push_back({q, a, static_cast<int>(rng() % (max_prio + 1)), static_cast<int>(rng() % A.n)});
  A.dmax = max_prio;
  return A;
}

inline Word random_word(std::mt19937& rng, int k, int min_len, int max_len) {
  Word w(min_len + rng() % (max_len - min_len + 1));
  for (auto& a : w) a = static_cast<int>(rng() % k);
  return w;
}

inline UPWord random_upword(std::mt19937& rng, int k) { return {random_word(rng, k, 0, 4), random_word(rng, k, 1, 4)}; }

inline Word w(const Automaton& A, const std::string& s) { return parse_word(A, s); }

inline UPWord up(const Automaton& A, const std::string& u, const std::string& v) { return {w(A, u), w(A, v)}; }

// Plain run simulation: read u, then v until the state at a period boundary repeats.
inline int naive_inf_min(const Automaton& A, int q, const UPWord& x) {
  auto D = det_view(A);
  for (int a : x.u) q = D.dst(q, a);
  std::vector<int> seen(D.n, -1);
  std::vector<int> mins;
  int round = 0;
  while (seen[q] < 0) {
    seen[q] = round++;
    int m = 1 << 20;
    for (int a : x.v) {
      m = std::min(m, D.pr(q, a));
      q = D.dst(q, a);
    }
    mins.push_back(m);
  }
  int m = 1 << 20;
  for (size_t i = seen[q]; i < mins.size(); ++i) m = std::min(m, mins[i]);
  return m;
}

inline bool naive_member(const Automaton& A, int q, const UPWord& x) { return naive_inf_min(A, q, x) % 2 == 0; }

// All ultimately periodic words with |u| <= lu and 1 <= |v| <= lv.
inline std::vector<UPWord> all_upwords(int k, int lu, int lv) {
  std::vector<Word> ws{{}};
  int len = std::max(lu, lv);
  for (size_t i = 0; i < ws.size(); ++i)
    if (static_cast<int>(ws[i].size()) < len)
      for (int a = 0; a < k; ++a) ws.push_back(concat(ws[i], {a}));
  std::vector<UPWord> out;
  for (auto& u : ws)
    if (static_cast<int>(u.size()) <= lu)
      for (auto& v : ws)
        if (!v.empty() && static_cast<int>(v.size()) <= lv) out.push_back({u, v});
  return out;
}

}  // namespace testing
