#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posaut/decide.hpp"
#include "support.hpp"

using namespace posaut;
using namespace testing;

namespace {

Automaton accept_all(int k) {
  Automaton A;
  A.alphabet = letters(k);
  A.n = 1;
  A.deterministic = true;
  for (int a = 0; a < k; ++a) A.trans.push_back({0, a, 0, 0});
  return A;
}

// W = ab(a+b)^w: 0 -a-> 1 -b-> 2 accepting sink, 3 rejecting sink.
Automaton starts_with_ab() {
  Automaton A;
  A.alphabet = letters(2);
  A.n = 4;
  A.deterministic = true;
  A.dmax = 1;
  A.trans = {{0, 0, 1, 1}, {0, 1, 1, 3}, {1, 0, 1, 3}, {1, 1, 1, 2},
             {2, 0, 0, 2}, {2, 1, 0, 2}, {3, 0, 1, 3}, {3, 1, 1, 3}};
  return A;
}

Arena non_uniform() {
  Arena G;
  G.alphabet = letters(2);
  G.add_vertex(Eve);
  G.add_vertex(Eve);
  G.add_edge(0, 0, 1);
  G.add_edge(0, 1, 0);
  G.add_edge(1, 0, 0);
  G.add_edge(1, 1, 1);
  G.designated = {0, 1};
  return G;
}

// Eve picks the cycle ab or the cycle ba at vertex 0.
Arena reach_aa_game() {
  Arena G;
  G.alphabet = letters(2);
  for (int i = 0; i < 3; ++i) G.add_vertex(Eve);
  G.add_edge(0, 0, 1);
  G.add_edge(1, 1, 0);
  G.add_edge(0, 1, 2);
  G.add_edge(2, 0, 0);
  G.designated = {0, 1, 2};
  return G;
}

Arena random_arena(std::mt19937& rng, int k, bool with_adam) {
  Arena G;
  G.alphabet = letters(k);
  int n = 1 + static_cast<int>(rng() % 4);
  for (int v = 0; v < n; ++v) G.add_vertex(with_adam && rng() % 2 ? Adam : Eve);
  for (int v = 0; v < n; ++v) {
    int deg = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < deg; ++i) G.add_edge(v, static_cast<int>(rng() % k), static_cast<int>(rng() % n));
  }
  return G;
}

Arena dual(Arena G) {
  for (auto& o : G.owner) o = o == Eve ? Adam : Eve;
  return G;
}

}  // namespace

TEST_CASE("one vertex with a self-loop") {
  Arena G;
  G.alphabet = letters(1);
  G.add_vertex(Eve);
  G.add_edge(0, 0, 0);
  auto W = accept_all(1);
  CHECK(solve(G, W).eve_wins(0, 0));
  CHECK(brute_force_positional(G, W).uniform);
  CHECK(validate_arena(G).empty());
}

TEST_CASE("non-uniform winning region") {
  auto G = non_uniform();
  auto W = starts_with_ab();
  auto S = solve(G, W);
  CHECK(S.eve_wins(0, W.init));
  CHECK(S.eve_wins(1, W.init));
  auto B = brute_force_positional(G, W, -1, &G.designated);
  CHECK_FALSE(B.uniform);
  CHECK(B.tried == 4);
  std::vector<int> one{0};
  CHECK(brute_force_positional(G, W, -1, &one).uniform);
}

TEST_CASE("reach_aa game") {
  auto G = reach_aa_game();
  auto W = fixture("reach_aa");
  auto S = solve(G, W);
  for (int v = 0; v < 3; ++v) CHECK(S.eve_wins(v, W.init));
  CHECK_FALSE(brute_force_positional(G, W).uniform);
  CHECK_FALSE(brute_force_positional(G, W, -1, &G.designated).uniform);
}

TEST_CASE("brute force bound") {
  auto G = reach_aa_game();
  CHECK_THROWS_AS(brute_force_positional(G, fixture("reach_aa"), 1), Error);
}

TEST_CASE("residual gadget") {
  auto A = fixture("first_letter_inf");
  auto r = decide_positionality_p1(A);
  REQUIRE(r.witness);
  auto g = witness_gadget(A, *r.witness);
  CHECK(g.kind == "residual");
  auto c = check_gadget(g);
  CHECK(c.eve_wins);
  CHECK_FALSE(c.positional_found);

  auto same = gadget_residual(A.alphabet, w(A, "a"), w(A, "a"), up(A, "", "a"), up(A, "", "b"));
  CHECK(brute_force_positional(same, A, -1, &same.designated).uniform);
  auto B = fixture("positional_buchi");
  auto comparable = gadget_residual(B.alphabet, w(B, ""), w(B, "a"), up(B, "", "a"), up(B, "", "b"));
  CHECK(solve(comparable, B).eve_wins(comparable.designated[0], B.init));
  CHECK(brute_force_positional(comparable, B, -1, &comparable.designated).uniform);
}

TEST_CASE("progress gadget") {
  auto A = fixture("reach_aa");
  auto r = decide_positionality_p1(A);
  REQUIRE(r.witness);
  auto g = witness_gadget(A, *r.witness);
  CHECK(g.kind == "progress");
  auto c = check_gadget(g);
  CHECK(c.eve_wins);
  CHECK_FALSE(c.positional_found);

  auto loop_wins = gadget_progress(A.alphabet, {}, w(A, "a a"), up(A, "", "b"));
  CHECK(brute_force_positional(loop_wins, A, -1, &loop_wins.designated).uniform);
  auto exit_wins = gadget_progress(A.alphabet, {}, w(A, "b"), up(A, "a a", "b"));
  CHECK(brute_force_positional(exit_wins, A, -1, &exit_wins.designated).uniform);
}

TEST_CASE("two-loops gadget") {
  auto A = fixture("reach_aa");
  auto g = gadget_two_loops(A.alphabet, {}, w(A, "b a"), w(A, "a b"));
  CHECK(solve(g, A).eve_wins(g.designated[0], A.init));
  CHECK_FALSE(brute_force_positional(g, A, -1, &g.designated).uniform);
  auto easy = gadget_two_loops(A.alphabet, {}, w(A, "a"), w(A, "b"));
  CHECK(brute_force_positional(easy, A, -1, &easy.designated).uniform);
  auto same_win = gadget_two_loops(A.alphabet, w(A, "b"), w(A, "a"), w(A, "a"));
  CHECK(brute_force_positional(same_win, A, -1, &same_win.designated).uniform);
  auto same_lose = gadget_two_loops(A.alphabet, w(A, "b"), w(A, "b"), w(A, "b"));
  CHECK_FALSE(brute_force_positional(same_lose, A, -1, &same_lose.designated).uniform);
  CHECK_THROWS_AS(gadget_two_loops(A.alphabet, {}, {}, w(A, "a")), Error);
}

TEST_CASE("completion gadget on positional fixtures") {
  for (auto name : {"three_priorities", "positional_buchi", "reach_two_a"}) {
    auto A = fixture(name);
    int d = even_ceiling(max_prio(A));
    for (int x = 0; x <= d; x += 2)
      for (int q = 0; q < A.n; ++q)
        for (int q2 = 0; q2 < A.n; ++q2) {
          auto C = completion_gadget(A, A, q, q2, x);
          auto S = solve(C.arena, C.objective);
          for (int v : C.arena.designated) CHECK(S.eve_wins(v, C.objective.init));
          auto B = brute_force_positional(C.arena, C.objective, -1, &C.arena.designated);
          REQUIRE(B.uniform);
          Automaton E = A;
          E.deterministic = false;
          int e = B.choice[C.q_choice];
          if (e == C.edge_x) E.trans.push_back({q, kEps, x, q2});
          else E.trans.push_back({q2, kEps, x + 1, q});
          CHECK_FALSE(incl_nd_in_det(E, A));
        }
  }
}

TEST_CASE("odd self-loops are always addable") {
  for (auto name : {"reach_aa", "three_priorities", "first_letter_inf"}) {
    auto A = fixture(name);
    for (int q = 0; q < A.n; ++q)
      for (int y = 1; y <= 3; y += 2) {
        Automaton E = A;
        E.deterministic = false;
        E.trans.push_back({q, kEps, y, q});
        CHECK_FALSE(incl_nd_in_det(E, A));
      }
  }
}

TEST_CASE("witness gadgets on random automata") {
  std::mt19937 rng(71);
  int n = 0;
  for (int it = 0; it < 800; ++it) {
    auto A = random_det(rng, 4, 2, 3);
    auto r = decide_positionality_p1(A);
    if (r.positional) continue;
    ++n;
    auto c = check_gadget(witness_gadget(A, *r.witness));
    CHECK(c.eve_wins);
    CHECK_FALSE(c.positional_found);
  }
  CHECK(n > 50);
}

TEST_CASE("solver strategies and determinacy") {
  std::mt19937 rng(73);
  for (int it = 0; it < 300; ++it) {
    auto A = random_det(rng, 3, 2, 3);
    auto G = random_arena(rng, A.k(), true);
    auto O = objective_of(A);
    auto S = solve(G, O);
    CHECK(check_strategy(G, O, S));
    auto T = solve(dual(G), complement_det(A));
    for (int v = 0; v < G.n(); ++v)
      for (int s = 0; s < A.n; ++s) CHECK(S.eve_wins(v, s) != T.eve_wins(v, s));
  }
}

TEST_CASE("positional fixtures admit uniform positional strategies") {
  std::mt19937 rng(75);
  for (auto name : {"three_priorities", "positional_buchi", "reach_two_a", "parity_one_state"}) {
    auto A = fixture(name);
    for (int i = 0; i < 200; ++i) {
      auto G = random_arena(rng, A.k(), false);
      auto S = solve(G, A);
      bool any = false;
      for (int v = 0; v < G.n(); ++v) any = any || S.eve_wins(v, A.init);
      if (any) CHECK(brute_force_positional(G, A).uniform);
    }
  }
}

TEST_CASE("arena validation") {
  Arena G;
  G.alphabet = letters(1);
  G.add_vertex(Eve);
  G.add_vertex(Eve);
  G.add_edge(0, kEps, 1);
  G.add_edge(1, kEps, 0);
  CHECK_FALSE(validate_arena(G).empty());
  Arena H;
  H.alphabet = letters(1);
  H.add_vertex(Eve);
  CHECK_FALSE(validate_arena(H).empty());
}
