#pragma once

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "games.hpp"
#include "pipeline.hpp"

namespace posaut {

enum class Method { Signature, Completion, Both };

struct Decision {
  bool positional = false;
  bool disagree = false;  // only under Method::Both
  std::optional<P1Result> p1;
  std::optional<P2Result> p2;
};

inline Decision decide_positionality(const Automaton& A, Method m) {
  if (!structurally_deterministic(A)) throw Error("positionality needs a deterministic automaton");
  Decision D;
  Automaton W = trim(A);
  if (m != Method::Completion) D.p1 = decide_positionality_p1(W);
  if (m != Method::Signature) D.p2 = decide_positionality_p2(W, W);
  if (D.p1 && D.p2) D.disagree = D.p1->positional != D.p2->positional;
  D.positional = D.p1 ? D.p1->positional : D.p2->positional;
  return D;
}

// ---- warm-up fast path ----

struct FastPath {
  std::string tag = "none";
  std::optional<bool> positional;
};

namespace detail {

// States closed under transitions whose outgoing priorities all have parity `par`.
inline std::vector<char> sink_set(const Automaton& A, int par) {
  std::vector<char> in(A.n, 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& t : A.trans)
      if (in[t.src] && (t.prio % 2 != par || !in[t.dst])) {
        in[t.src] = 0;
        changed = true;
      }
  }
  return in;
}

inline bool sink_pattern(const Automaton& A, int par) {
  auto in = sink_set(A, par);
  for (auto& t : A.trans)
    if (!in[t.src] && t.prio % 2 == par) return false;
  return true;
}

inline bool prio_within(const Automaton& A, int lo, int hi) {
  for (auto& t : A.trans)
    if (t.prio < lo || t.prio > hi) return false;
  return true;
}

}  // namespace detail

inline FastPath warmup_fast_path(const Automaton& input) {
  FastPath F;
  Automaton A = normalize(trim(input), InterScc::Max);
  if (detail::sink_pattern(A, 1)) F.tag = "safety";
  else if (detail::sink_pattern(A, 0)) F.tag = "reachability";
  else if (detail::prio_within(A, 0, 1)) F.tag = "buchi";
  else if (detail::prio_within(A, 1, 2)) F.tag = "cobuchi";
  else return F;
  auto R = residual_preorder(A);
  if (!R.total) {
    F.positional = false;
    return F;
  }
  if (F.tag == "safety") {
    F.positional = true;
    return F;
  }
  if (check_progress_consistency(A, R)) {
    F.positional = false;
    return F;
  }
  if (F.tag == "reachability") {
    F.positional = true;
    return F;
  }
  auto RA = residual_automaton(A, R);
  if (RA.n == A.n) {
    F.positional = true;
  } else if (RA.n == 1 && F.tag == "cobuchi") {
    auto comp = safe_components(A, 2).cong.class_of;
    bool ok = true;
    for (int q = 0; q < A.n; ++q)
      for (int p = 0; p < A.n; ++p)
        if (comp[q] == comp[p] && safe_incl(A, 2, q, p) && safe_incl(A, 2, p, q)) ok = false;
    if (ok) F.positional = true;
  }
  return F;
}

// ---- bipositionality ----

struct BiDecision {
  bool bipositional = false;
  std::string side;  // "W" or "complement" when not bipositional
  Decision w, complement;
};

inline BiDecision decide_bipositionality(const Automaton& A, Method m = Method::Signature) {
  Automaton W = trim(A);
  Automaton C = complement_det(W);
  auto fc = std::async(std::launch::async, [&] { return decide_positionality(C, m); });
  BiDecision B;
  B.w = decide_positionality(W, m);
  B.complement = fc.get();
  B.bipositional = B.w.positional && B.complement.positional;
  if (!B.w.positional) B.side = "W";
  else if (!B.complement.positional) B.side = "complement";
  if (B.bipositional) {
    for (const Automaton* X : {&W, &C}) {
      auto N = normalize(*X, InterScc::Zero);
      auto R = residual_preorder(N);
      if (!R.total || check_progress_consistency(N, R))
        throw Error("bipositional verdict without bi-progress consistency");
    }
  }
  return B;
}

// ---- witness games ----

struct TwoLoops {
  Word u0, l1, l2;
};

// Loops l1, l2 after an access word u0 with u0 l1^w, u0 l2^w rejected and u0 (l1 l2)^w accepted.
// Loop length grows until a pair is found or the candidate set exceeds max_words.
inline std::optional<TwoLoops> find_two_loops(const Automaton& W, int max_len = 8, size_t max_words = 4000) {
  auto D = det_view(W);
  auto acc = access_words(W);
  auto reach = reachable_states(W, W.init);
  std::vector<Word> words;
  std::vector<std::vector<int>> bad(D.n);
  size_t level_begin = 0;
  words.push_back({});
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = words.size();
    for (size_t i = level_begin; i < level_end; ++i)
      for (int a = 0; a < D.k; ++a) words.push_back(concat(words[i], {a}));
    level_begin = level_end;
    if (words.size() > max_words) break;
    for (int s = 0; s < D.n; ++s) {
      if (!reach[s]) continue;
      size_t old = bad[s].size();
      for (size_t i = level_end; i < words.size(); ++i)
        if (!up_member_det(D, s, UPWord{{}, words[i]})) bad[s].push_back(static_cast<int>(i));
      for (size_t i = 0; i < bad[s].size(); ++i)
        for (size_t j = 0; j < bad[s].size(); ++j) {
          if (i < old && j < old) continue;
          auto& a = words[bad[s][i]];
          auto& b = words[bad[s][j]];
          if (up_member_det(D, s, UPWord{{}, concat(a, b)})) return TwoLoops{acc[s], a, b};
        }
    }
  }
  return std::nullopt;
}

struct Gadget {
  std::string kind;
  Arena arena;
  Objective objective;
};

inline Gadget completion_witness_gadget(const Automaton& Wdet, const P2Result& r) {
  auto C = completion_gadget(r.base, Wdet, r.q, r.q2, r.x);
  return Gadget{"completion", C.arena, C.objective};
}

// A finite game where Eve wins from the designated vertices but not positionally.
inline Gadget witness_gadget(const Automaton& input, const PositionalityWitness& w) {
  Automaton Wdet = trim(input);
  const Automaton& A = w.aut;
  auto O = objective_of(Wdet);
  if (w.kind == WitnessKind::IncomparableResiduals) {
    auto acc = access_words(A);
    return Gadget{"residual", gadget_residual(Wdet.alphabet, acc[w.q], acc[w.p], w.w1, w.w2), O};
  }
  if (w.kind == WitnessKind::ProgressFailure) {
    auto D = det_view(A);
    int p = w.q;
    for (int a : w.progress.w) p = D.dst(p, a);
    auto exit = incl_det(A, p, A, w.q);
    if (exit) return Gadget{"progress", gadget_progress(Wdet.alphabet, w.progress.u, w.progress.w, *exit), O};
  }
  if (auto t = find_two_loops(Wdet)) return Gadget{"two-loops", gadget_two_loops(Wdet.alphabet, t->u0, t->l1, t->l2), O};
  auto r = decide_positionality_p2(Wdet, Wdet);
  if (r.positional) throw Error("no witness game: the completion procedure finds the objective positional");
  return completion_witness_gadget(Wdet, r);
}

struct GadgetCheck {
  bool eve_wins = false;
  bool positional_found = false;
  long long tried = 0;
};

inline GadgetCheck check_gadget(const Gadget& g, long long limit = -1) {
  GadgetCheck c;
  auto R = solve(g.arena, g.objective);
  c.eve_wins = !g.arena.designated.empty();
  for (int v : g.arena.designated) c.eve_wins = c.eve_wins && R.eve_wins(v, g.objective.init);
  auto B = brute_force_positional(g.arena, g.objective, limit, &g.arena.designated);
  c.positional_found = B.uniform;
  c.tried = B.tried;
  return c;
}

}  // namespace posaut
