#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "automaton.hpp"

namespace posaut {

struct ParseError : Error {
  int line;
  int col;
  ParseError(int l, int c, const std::string& m)
      : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + m), line(l), col(c) {}
};

struct Token {
  std::string text;
  int col = 1;
};

struct Line {
  int no = 0;
  std::vector<Token> toks;
  const std::string& key() const { return toks.front().text; }
};

// Splits into non-empty lines of whitespace tokens, dropping '#' comments.
inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    auto h = raw.find('#');
    if (h != std::string::npos) raw.resize(h);
    Line L;
    L.no = no;
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      size_t j = i;
      while (j < raw.size() && !isspace(static_cast<unsigned char>(raw[j]))) ++j;
      L.toks.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!L.toks.empty()) out.push_back(std::move(L));
  }
  return out;
}

inline int to_int(const Line& L, size_t i) {
  if (i >= L.toks.size()) {
    int col = L.toks.empty() ? 1 : L.toks.back().col + static_cast<int>(L.toks.back().text.size());
    throw ParseError(L.no, col, "missing integer");
  }
  auto& t = L.toks[i];
  static const std::regex re("-?[0-9]+");
  if (!std::regex_match(t.text, re)) throw ParseError(L.no, t.col, "expected integer, got '" + t.text + "'");
  return std::stoi(t.text);
}

inline void expect_args(const Line& L, size_t n) {
  if (L.toks.size() != n + 1) {
    int col = L.toks.size() > n + 1 ? L.toks[n + 1].col : L.toks.back().col;
    throw ParseError(L.no, col, "expected " + std::to_string(n) + " argument(s) after '" + L.key() + "'");
  }
}

inline bool valid_letter_token(const std::string& s) {
  static const std::regex re("[a-zA-Z0-9_]+");
  return std::regex_match(s, re);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

namespace detail {

inline std::vector<std::string> parse_alphabet(const Line& L) {
  std::vector<std::string> al;
  for (size_t i = 1; i < L.toks.size(); ++i) {
    auto& t = L.toks[i];
    if (t.text == "eps") throw ParseError(L.no, t.col, "'eps' is reserved");
    if (!valid_letter_token(t.text)) throw ParseError(L.no, t.col, "bad letter '" + t.text + "'");
    for (auto& a : al)
      if (a == t.text) throw ParseError(L.no, t.col, "duplicate letter '" + t.text + "'");
    al.push_back(t.text);
  }
  return al;
}

// Parses the automaton part; lines with keys in `extra` are handed back untouched.
inline Automaton parse_dpa_lines(const std::vector<Line>& lines, const std::string& magic,
                                 const std::vector<std::string>& extra, std::vector<Line>* rest) {
  if (lines.empty()) throw ParseError(1, 1, "empty input");
  if (lines[0].toks.size() != 1 || lines[0].key() != magic)
    throw ParseError(lines[0].no, 1, "expected '" + magic + "' header");
  Automaton A;
  bool seen_al = false, seen_n = false, seen_init = false, seen_pr = false, seen_det = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto& L = lines[i];
    const auto& k = L.key();
    if (k == "alphabet:") {
      A.alphabet = parse_alphabet(L);
      seen_al = true;
    } else if (k == "states:") {
      expect_args(L, 1);
      A.n = to_int(L, 1);
      if (A.n <= 0) throw ParseError(L.no, L.toks[1].col, "state count must be positive");
      seen_n = true;
    } else if (k == "initial:") {
      expect_args(L, 1);
      A.init = to_int(L, 1);
      seen_init = true;
    } else if (k == "priorities:") {
      expect_args(L, 2);
      A.dmin = to_int(L, 1);
      A.dmax = to_int(L, 2);
      if (A.dmin < 0 || A.dmin > A.dmax) throw ParseError(L.no, L.toks[1].col, "bad priority range");
      seen_pr = true;
    } else if (k == "deterministic:") {
      expect_args(L, 1);
      if (L.toks[1].text == "true") A.deterministic = true;
      else if (L.toks[1].text == "false") A.deterministic = false;
      else throw ParseError(L.no, L.toks[1].col, "expected true or false");
      seen_det = true;
    } else if (k == "trans:") {
      if (!seen_al || !seen_n) throw ParseError(L.no, 1, "trans before alphabet and states");
      expect_args(L, 4);
      Transition t;
      t.src = to_int(L, 1);
      if (L.toks[2].text == "eps") {
        t.letter = kEps;
      } else {
        t.letter = -2;
        for (int a = 0; a < A.k(); ++a)
          if (A.alphabet[a] == L.toks[2].text) t.letter = a;
        if (t.letter == -2) throw ParseError(L.no, L.toks[2].col, "unknown letter '" + L.toks[2].text + "'");
      }
      t.prio = to_int(L, 3);
      t.dst = to_int(L, 4);
      if (t.src < 0 || t.src >= A.n) throw ParseError(L.no, L.toks[1].col, "state out of range");
      if (t.dst < 0 || t.dst >= A.n) throw ParseError(L.no, L.toks[4].col, "state out of range");
      if (t.prio < 0) throw ParseError(L.no, L.toks[3].col, "negative priority");
      A.trans.push_back(t);
    } else if (std::find(extra.begin(), extra.end(), k) != extra.end() && rest) {
      rest->push_back(L);
    } else {
      throw ParseError(L.no, L.toks[0].col, "unknown key '" + k + "'");
    }
  }
  int last = lines.back().no;
  if (!seen_al) throw ParseError(last, 1, "missing alphabet");
  if (!seen_n) throw ParseError(last, 1, "missing states");
  if (!seen_init) throw ParseError(last, 1, "missing initial");
  if (!seen_pr) throw ParseError(last, 1, "missing priorities");
  if (!seen_det) throw ParseError(last, 1, "missing deterministic");
  if (A.init < 0 || A.init >= A.n) throw ParseError(last, 1, "initial state out of range");
  return A;
}

}  // namespace detail

inline Automaton parse_dpa(const std::string& text) {
  return detail::parse_dpa_lines(tokenize(text), "dpa", {}, nullptr);
}

inline std::string emit_dpa_body(const Automaton& A) {
  std::ostringstream o;
  o << "dpa\n";
  o << "alphabet:";
  for (auto& a : A.alphabet) o << ' ' << a;
  o << "\nstates: " << A.n << "\ninitial: " << A.init << "\npriorities: " << A.dmin << ' ' << A.dmax
    << "\ndeterministic: " << (A.deterministic ? "true" : "false") << "\n";
  for (auto& t : A.trans) o << "trans: " << t.src << ' ' << A.letter_name(t.letter) << ' ' << t.prio << ' ' << t.dst << "\n";
  return o.str();
}

inline std::string emit_dpa(const Automaton& A) { return emit_dpa_body(A); }

inline Automaton load_dpa(const std::string& path) { return parse_dpa(read_file(path)); }

inline Signature parse_sig(const std::string& text) {
  std::vector<Line> rest;
  Signature S;
  S.aut = detail::parse_dpa_lines(tokenize(text), "dpa", {"preorder:"}, &rest);
  for (auto& L : rest) {
    int x = to_int(L, 1);
    if (x != static_cast<int>(S.rank.size())) throw ParseError(L.no, L.toks[1].col, "preorder levels must be listed 0..d in order");
    expect_args(L, 1 + S.aut.n);
    std::vector<int> r;
    for (int q = 0; q < S.aut.n; ++q) r.push_back(to_int(L, 2 + q));
    S.rank.push_back(r);
  }
  if (S.rank.empty()) throw ParseError(1, 1, "signature without preorder lines");
  return S;
}

inline std::string emit_sig(const Signature& S) {
  std::ostringstream o;
  o << emit_dpa_body(S.aut);
  for (size_t x = 0; x < S.rank.size(); ++x) {
    o << "preorder: " << x;
    for (int r : S.rank[x]) o << ' ' << r;
    o << "\n";
  }
  return o.str();
}

inline bool looks_like_sig(const std::string& text) { return text.find("preorder:") != std::string::npos; }

}  // namespace posaut
