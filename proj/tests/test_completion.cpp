#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "posaut/completion.hpp"
#include "posaut/pipeline.hpp"
#include "support.hpp"

using namespace posaut;
using namespace testing;

namespace {

bool has(const Automaton& A, int s, int a, int y, int d) {
  return std::find(A.trans.begin(), A.trans.end(), Transition{s, a, y, d}) != A.trans.end();
}

// The epsilon-transitions drawn for the completion of three_priorities (q1 = 0, q2 = 1, q3 = 2).
void check_figure_transitions(const Automaton& C) {
  for (int q : {1, 2})
    for (int y : {0, 1}) CHECK(has(C, q, kEps, y, 0));
  CHECK(has(C, 1, kEps, 1, 2));
  CHECK(has(C, 2, kEps, 1, 1));
  for (int y : {2, 3}) {
    CHECK(has(C, 2, kEps, y, 1));
    CHECK(has(C, 1, kEps, y, 0));
  }
  for (int q = 0; q < 3; ++q)
    for (int y : {1, 3}) CHECK(has(C, q, kEps, y, q));
}

Automaton with_extra(Automaton A, Transition t) {
  A.trans.push_back(t);
  A.deterministic = false;
  return A;
}

const char* kFixtures[] = {"bfmm",           "cobuchi_ac_bb",    "cobuchi_not_concave", "first_letter_inf",
                           "occ_parity",     "parity_one_state", "positional_buchi",    "reach_aa",
                           "reach_two_a",    "three_priorities"};

}  // namespace

TEST_CASE("procedure 2 completes three_priorities") {
  auto A = fixture("three_priorities");
  auto r = decide_positionality_p2(A, A);
  REQUIRE(r.positional);
  CHECK(r.completion.n == 3);
  CHECK(validate_eps_complete(r.completion));
  CHECK_FALSE(incl_nd_in_det(r.completion, A));
  check_figure_transitions(priority_close(r.completion));
}

TEST_CASE("completion from the published signature") {
  auto A = fixture("three_priorities");
  Signature S{A, {{0, 1, 1}, {0, 1, 1}, {0, 1, 2}}};
  auto C = eps_complete_from_signature(S);
  check_figure_transitions(C);
  CHECK(validate_eps_complete(C));
  CHECK_FALSE(incl_nd_in_det(C, A));
  auto P = priority_close(C);
  CHECK(priority_close(P) == P);
  CHECK_FALSE(incl_nd_in_det(P, A));
}

TEST_CASE("procedure 2 rejects reach_aa with verified counterexamples") {
  auto A = fixture("reach_aa");
  auto r = decide_positionality_p2(A, A);
  CHECK_FALSE(r.positional);
  auto up1 = with_extra(r.base, {r.q, kEps, r.x, r.q2});
  auto up2 = with_extra(r.base, {r.q2, kEps, r.x + 1, r.q});
  CHECK(up_membership(up1, r.cex1));
  CHECK_FALSE(up_membership(A, r.cex1));
  CHECK(up_membership(up2, r.cex2));
  CHECK_FALSE(up_membership(A, r.cex2));
  CHECK(decide_positionality_p1(A).positional == false);
}

TEST_CASE("procedure 2 on accept-all") {
  Automaton A;
  A.alphabet = letters(2);
  A.n = 1;
  A.deterministic = true;
  A.trans = {{0, 0, 0, 0}, {0, 1, 0, 0}};
  auto r = decide_positionality_p2(A, A);
  REQUIRE(r.positional);
  CHECK(has(r.completion, 0, kEps, 1, 0));
}

TEST_CASE("priority closure of a single 0-transition adds every priority") {
  Automaton A;
  A.alphabet = letters(1);
  A.n = 1;
  A.trans = {{0, 0, 0, 0}};
  auto C = priority_close(A);
  std::set<int> ps;
  for (auto& t : C.trans) ps.insert(t.prio);
  CHECK(ps == std::set<int>{0, 1});
  A.trans = {{0, 0, 0, 0}, {0, 0, 3, 0}};
  ps.clear();
  for (auto& t : priority_close(A).trans) ps.insert(t.prio);
  CHECK(ps == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("priority closure of a sandwich") {
  Automaton A;
  A.alphabet = letters(1);
  A.n = 4;
  A.trans = {{0, kEps, 1, 1}, {1, 0, 2, 2}, {2, kEps, 3, 3}};
  auto C = priority_close(A);
  CHECK(has(C, 0, 0, 1, 3));
  CHECK(priority_close(C) == C);
}

TEST_CASE("priority closure is idempotent and keeps the language") {
  std::mt19937 rng(61);
  for (auto name : kFixtures) {
    auto A = fixture(name);
    auto C = priority_close(A);
    CHECK(priority_close(C) == C);
    for (int i = 0; i < 100; ++i) {
      auto x = random_upword(rng, A.k());
      CHECK(up_membership(C, x) == up_membership(A, x));
    }
    auto r = decide_positionality_p2(A, A);
    if (!r.positional) continue;
    auto P = priority_close(r.completion);
    CHECK(priority_close(P) == P);
    CHECK_FALSE(incl_nd_in_det(P, trim(A)));
  }
}

TEST_CASE("eps-complete validation") {
  Automaton A;
  A.alphabet = letters(1);
  A.n = 1;
  A.trans = {{0, 0, 0, 0}, {0, kEps, 1, 0}, {0, kEps, 3, 0}};
  CHECK(validate_eps_complete(A));
  Automaton B;
  B.alphabet = letters(1);
  B.n = 2;
  B.trans = {{0, 0, 0, 0}, {1, 0, 0, 1}, {0, kEps, 1, 0}, {1, kEps, 1, 1}};
  auto v = eps_complete_violation(B);
  REQUIRE(v);
  CHECK(v->what == "not total");
  CHECK(v->q == 0);
  CHECK(v->p == 1);
}

TEST_CASE("completion from a one-state signature") {
  auto P = fixture("parity_one_state");
  auto r = decide_positionality_p1(P);
  REQUIRE(r.positional);
  auto C = eps_complete_from_signature(r.sig);
  for (auto& t : C.trans)
    if (t.letter == kEps) CHECK(t.prio % 2 == 1);
  for (int y = 1; y <= C.dmax; y += 2) CHECK(has(C, 0, kEps, y, 0));
  CHECK(validate_eps_complete(C));
}

TEST_CASE("completions of procedure 1 certificates") {
  for (auto name : kFixtures) {
    auto A = trim(fixture(name));
    auto r = decide_positionality_p1(A);
    if (!r.positional) continue;
    auto C = eps_complete_from_signature(r.sig);
    CHECK(validate_eps_complete(C));
    CHECK_FALSE(incl_nd_in_det(C, A));
    CHECK(equivalent_det(r.sig.aut, A));
  }
  std::mt19937 rng(63);
  int n = 0;
  for (int it = 0; it < 300; ++it) {
    auto A = trim(random_det(rng, 5, 3, 3));
    auto r = decide_positionality_p1(A);
    if (!r.positional) continue;
    ++n;
    auto C = eps_complete_from_signature(r.sig);
    CHECK(validate_eps_complete(C));
    CHECK_FALSE(incl_nd_in_det(C, A));
  }
  CHECK(n > 50);
}

TEST_CASE("procedure 2 verdict certificates") {
  std::mt19937 rng(65);
  for (int it = 0; it < 200; ++it) {
    auto A = trim(random_det(rng, 5, 3, 3));
    auto r = decide_positionality_p2(A, A);
    if (r.positional) {
      CHECK(validate_eps_complete(r.completion));
      CHECK_FALSE(incl_nd_in_det(r.completion, A));
      for (int i = 0; i < 30; ++i) {
        auto x = random_upword(rng, A.k());
        if (up_membership(A, x)) CHECK(up_membership(r.completion, x));
      }
    } else {
      CHECK(up_membership(with_extra(r.base, {r.q, kEps, r.x, r.q2}), r.cex1));
      CHECK(up_membership(with_extra(r.base, {r.q2, kEps, r.x + 1, r.q}), r.cex2));
      CHECK_FALSE(up_membership(A, r.cex1));
      CHECK_FALSE(up_membership(A, r.cex2));
    }
  }
}

TEST_CASE("preference order on priority sequences") {
  std::vector<std::vector<int>> seqs{{}};
  for (size_t i = 0; i < seqs.size(); ++i)
    if (seqs[i].size() < 6)
      for (int y = 0; y <= 3; ++y) {
        auto s = seqs[i];
        s.push_back(y);
        seqs.push_back(s);
      }
  long long pairs = 0;
  for (auto& s : seqs) {
    if (s.empty()) continue;
    int ms = *std::min_element(s.begin(), s.end());
    // enumerate all pointwise-preferred sequences of the same length
    std::vector<int> t(s.size(), 0);
    for (;;) {
      bool dominated = true;
      for (size_t i = 0; i < s.size(); ++i) dominated = dominated && pref_leq(s[i], t[i]);
      if (dominated) {
        ++pairs;
        if (ms % 2 == 0) CHECK(*std::min_element(t.begin(), t.end()) % 2 == 0);
      }
      size_t i = 0;
      while (i < t.size() && t[i] == 3) t[i++] = 0;
      if (i == t.size()) break;
      ++t[i];
    }
  }
  CHECK(pairs > 0);
}
