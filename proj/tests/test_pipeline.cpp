#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posaut/completion.hpp"
#include "posaut/games.hpp"
#include "posaut/pipeline.hpp"
#include "support.hpp"

using namespace posaut;
using namespace testing;

namespace {

detail::Work start(const Automaton& A) {
  detail::Work W;
  W.A = normalize(trim(A), InterScc::Zero);
  W.A.deterministic = true;
  W.rank.push_back(residual_preorder(W.A).rank);
  return W;
}

void same_language(const Automaton& A, const Automaton& B, std::mt19937& rng, int samples = 100) {
  for (int i = 0; i < samples; ++i) {
    auto x = random_upword(rng, A.k());
    CHECK(up_membership(A, x) == up_membership(B, x));
  }
}

// Inf(ab) with a parity bit flipped by every letter; every state has the same residual.
Automaton inf_ab_four_states() {
  Automaton A;
  A.alphabet = letters(2);
  A.n = 4;
  A.deterministic = true;
  A.dmax = 1;
  for (int last_a = 0; last_a < 2; ++last_a)
    for (int bit = 0; bit < 2; ++bit) {
      int q = last_a * 2 + bit;
      A.trans.push_back({q, 0, 1, 2 + (1 - bit)});
      A.trans.push_back({q, 1, last_a ? 0 : 1, 1 - bit});
    }
  return A;
}

// cobuchi_ac_bb with a copy of the safe component {q1,q2}; p1 -b:1-> enters the copy.
Automaton duplicated_component() {
  auto A = fixture("cobuchi_ac_bb");
  A.n = 6;
  std::vector<Transition> extra;
  for (auto t : A.trans)
    if (t.src <= 1) {
      t.src += 4;
      if (t.dst <= 1) t.dst += 4;
      extra.push_back(t);
    }
  for (auto& t : A.trans)
    if (t.src == 2 && t.letter == 1) t.dst = 5;
  A.trans.insert(A.trans.end(), extra.begin(), extra.end());
  sort_dedupe(A);
  return A;
}

}  // namespace

TEST_CASE("procedure 1 on three_priorities") {
  auto r = decide_positionality_p1(fixture("three_priorities"));
  REQUIRE(r.positional);
  CHECK(r.sig.rank.size() == 3);
  auto T = trim(fixture("three_priorities"));
  CHECK(r.sig.aut.n == 3);
  CHECK(r.sig.rank[2] == std::vector<int>{0, 1, 2});
  CHECK(r.sig.rank[0] == std::vector<int>{0, 1, 1});
  CHECK(equivalent_det(r.sig.aut, T));
}

TEST_CASE("procedure 1 on reach_aa") {
  auto A = fixture("reach_aa");
  auto r = decide_positionality_p1(A);
  CHECK_FALSE(r.positional);
  REQUIRE(r.witness);
  CHECK(r.witness->kind == WitnessKind::ProgressFailure);
  CHECK(r.witness->progress.u == Word{});
  CHECK(r.witness->progress.w == w(A, "b a"));
  CHECK(witness_str(*r.witness) == "witness: progress u=- w=b a");
}

TEST_CASE("procedure 1 on incomparable residuals") {
  auto A = fixture("first_letter_inf");
  auto r = decide_positionality_p1(A);
  CHECK_FALSE(r.positional);
  REQUIRE(r.witness);
  CHECK(r.witness->kind == WitnessKind::IncomparableResiduals);
  auto R = residual_preorder(r.witness->aut);
  CHECK_FALSE(R.leq[r.witness->q][r.witness->p]);
  CHECK_FALSE(R.leq[r.witness->p][r.witness->q]);
}

TEST_CASE("saturate without x-1 transitions or with singleton classes") {
  auto W = start(fixture("three_priorities"));
  W.rank[0] = {0, 1, 2};
  auto before = W.A;
  detail::saturate(W, 2);
  CHECK(W.A == before);
  auto P = start(fixture("parity_one_state"));
  before = P.A;
  detail::saturate(P, 2);
  CHECK(P.A == before);
}

TEST_CASE("saturate fans out cobuchi 1-transitions") {
  auto C = fixture("cobuchi_ac_bb");
  auto W = start(C);
  CHECK(W.rank[0] == std::vector<int>{0, 0, 0, 0});
  detail::saturate(W, 2);
  int ones = 0;
  for (auto& t : W.A.trans) ones += t.prio == 1;
  CHECK(ones == 8);
  for (auto& t : C.trans)
    if (t.prio == 1)
      for (int p = 0; p < 4; ++p) CHECK(std::count(W.A.trans.begin(), W.A.trans.end(), Transition{t.src, t.letter, 1, p}) == 1);
  CHECK_FALSE(incl_nd_in_det(W.A, C));
  std::mt19937 rng(51);
  same_language(W.A, C, rng);
}

TEST_CASE("safe centralisation") {
  auto C = fixture("cobuchi_ac_bb");
  auto W = start(C);
  detail::saturate(W, 2);
  auto before = W.A;
  detail::safe_centralise(W, 2);
  CHECK(W.A == before);
  CHECK(safe_incl(C, 2, 0, 2));
  CHECK(safe_incl(C, 2, 2, 0));

  auto D = duplicated_component();
  CHECK(validate(D).empty());
  CHECK(equivalent_det(D, C));
  auto V = start(D);
  CHECK(V.A.n == 6);
  detail::saturate(V, 2);
  detail::safe_centralise(V, 2);
  CHECK(V.A.n == 4);
  std::mt19937 rng(53);
  same_language(V.A, D, rng);
  CHECK_FALSE(detail::order_safe(V, 2));
  detail::redeterminise(V, 2);
  CHECK(structurally_deterministic(V.A));
  CHECK(equivalent_det(V.A, D));
}

TEST_CASE("total safe order") {
  auto T = start(fixture("three_priorities"));
  detail::saturate(T, 2);
  detail::safe_centralise(T, 2);
  CHECK_FALSE(detail::order_safe(T, 2));
  CHECK(T.rank[2] == std::vector<int>{0, 1, 2});

  Automaton H;
  H.alphabet = letters(2);
  H.n = 2;
  H.deterministic = true;
  H.dmax = 2;
  H.trans = {{0, 0, 2, 1}, {0, 1, 1, 0}, {1, 1, 2, 0}, {1, 0, 1, 1}};
  CHECK(safe_incl(H, 2, 0, 1) == w(H, "a"));
  CHECK(safe_incl(H, 2, 1, 0) == w(H, "b"));
  auto W = start(H);
  detail::saturate(W, 2);
  detail::safe_centralise(W, 2);
  auto f = detail::order_safe(W, 2);
  REQUIRE(f);
  CHECK(f->kind == WitnessKind::SafeOrderFailure);
  CHECK(f->sep_qp == *safe_incl(W.A, 2, f->q, f->p));
  CHECK(f->sep_pq == *safe_incl(W.A, 2, f->p, f->q));
}

TEST_CASE("redeterminisation on cobuchi_ac_bb") {
  auto C = fixture("cobuchi_ac_bb");
  auto W = start(C);
  detail::saturate(W, 2);
  detail::safe_centralise(W, 2);
  REQUIRE_FALSE(detail::order_safe(W, 2));
  detail::redeterminise(W, 2);
  auto D = det_view(W.A);
  CHECK(D.dst(2, 1) == 1);
  CHECK(D.pr(2, 1) == 1);
  CHECK(D.dst(0, 2) == 3);
  CHECK(D.pr(0, 2) == 1);
  CHECK(equivalent_det(W.A, C));
}

TEST_CASE("polish") {
  auto B = start(fixture("positional_buchi"));
  auto before = B.A;
  CHECK(detail::polish(B, 0) == detail::PolishOutcome::Structured);
  CHECK(B.A == before);
  auto P = start(fixture("parity_one_state"));
  CHECK(detail::polish(P, 0) == detail::PolishOutcome::Structured);

  auto N = inf_ab_four_states();
  auto W = start(N);
  CHECK(W.rank[0] == std::vector<int>{0, 0, 0, 0});
  auto out = detail::polish(W, 0);
  CHECK(out != detail::PolishOutcome::Structured);
  auto r = decide_positionality_p1(N);
  CHECK_FALSE(r.positional);
  auto G = gadget_two_loops(N.alphabet, {}, w(N, "a"), w(N, "b"));
  auto S = solve(G, N);
  CHECK(S.eve_wins(G.designated.at(0), 0));
  CHECK_FALSE(brute_force_positional(G, N, -1, &G.designated).uniform);
}

TEST_CASE("signature validation") {
  auto A = fixture("three_priorities");
  CHECK_FALSE(validate_signature(Signature{A, {{0, 1, 1}, {0, 1, 1}, {0, 1, 2}}}));
  CHECK(validate_signature(Signature{A, {{0, 1, 1}, {0, 1, 1}, {0, 2, 1}}}));
  auto B = fixture("positional_buchi");
  auto R = residual_preorder(B);
  CHECK_FALSE(validate_signature(Signature{B, {R.rank, R.rank}}));
  auto F = fixture("first_letter_inf");
  CHECK(validate_signature(Signature{F, {{0, 1, 2}, {0, 1, 2}}}));
}

TEST_CASE("pipeline stages preserve the language") {
  std::mt19937 rng(55);
  int stages = 0;
  for (int it = 0; it < 1500; ++it) {
    auto A = random_det(rng, 5, 3, 4);
    auto W = start(A);
    auto R = residual_preorder(W.A);
    if (!R.total || check_progress_consistency(W.A, R)) continue;
    const Automaton ref = W.A;
    if (detail::polish(W, 0) != detail::PolishOutcome::Structured) continue;
    int d = max_prio(W.A);
    for (int x = 2; x <= d; x += 2) {
      detail::saturate(W, x);
      same_language(W.A, ref, rng, 30);
      detail::safe_centralise(W, x);
      same_language(W.A, ref, rng, 30);
      if (detail::order_safe(W, x)) break;
      detail::redeterminise(W, x);
      CHECK(equivalent_det(W.A, ref));
      ++stages;
      if (detail::polish(W, x) != detail::PolishOutcome::Structured) break;
    }
  }
  CHECK(stages > 20);
}

TEST_CASE("procedure 1 certificates and restart bound") {
  std::mt19937 rng(57);
  for (int it = 0; it < 300; ++it) {
    auto A = random_det(rng, 5, 3, 3);
    auto r = decide_positionality_p1(A);
    auto T = trim(A);
    CHECK(r.restarts <= std::max(1, max_prio(T) + 1) * T.n);
    if (!r.positional) continue;
    CHECK_FALSE(validate_signature(r.sig));
    CHECK_FALSE(check_full_progress_consistency(r.sig));
    CHECK(equivalent_det(r.sig.aut, T));
  }
}

TEST_CASE("procedures 1 and 2 agree") {
  std::mt19937 rng(59);
  for (int it = 0; it < 200; ++it) {
    auto A = random_det(rng, 5, 3, 3);
    CHECK(decide_positionality_p1(A).positional == decide_positionality_p2(trim(A), trim(A)).positional);
  }
}
