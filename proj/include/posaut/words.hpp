#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "automaton.hpp"

namespace posaut {

using Word = std::vector<int>;

struct UPWord {
  Word u;
  Word v;
  bool operator==(const UPWord& o) const { return u == o.u && v == o.v; }
};

inline Word primitive_root(const Word& v) {
  size_t n = v.size();
  for (size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (size_t i = p; i < n && ok; ++i) ok = v[i] == v[i - p];
    if (ok) return Word(v.begin(), v.begin() + p);
  }
  return v;
}

inline size_t min_rotation(const Word& v) {
  size_t best = 0, n = v.size();
  for (size_t i = 1; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      int a = v[(i + j) % n], b = v[(best + j) % n];
      if (a != b) {
        if (a < b) best = i;
        break;
      }
    }
  }
  return best;
}

// Shortest prefix, primitive period, period rotated to its lexicographic minimum.
inline UPWord canonical(UPWord w) {
  if (w.v.empty()) throw Error("empty period");
  Word p = primitive_root(w.v);
  Word u = w.u;
  while (!u.empty() && u.back() == p.back()) {
    u.pop_back();
    std::rotate(p.begin(), p.end() - 1, p.end());
  }
  size_t i = min_rotation(p);
  u.insert(u.end(), p.begin(), p.begin() + i);
  std::rotate(p.begin(), p.begin() + i, p.end());
  return {u, p};
}

inline std::string word_str(const Automaton& A, const Word& w, const char* empty = "-") {
  if (w.empty()) return empty;
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += A.letter_name(w[i]);
  }
  return s;
}

inline std::string upword_str(const Automaton& A, const UPWord& w) {
  return word_str(A, w.u) + " | " + word_str(A, w.v);
}

inline Word parse_word(const Automaton& A, const std::string& s) {
  Word w;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    if (tok == "-") continue;
    int a = A.letter_index(tok);
    if (a == kEps) throw Error("eps is not a letter of a word");
    w.push_back(a);
  }
  return w;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace posaut
