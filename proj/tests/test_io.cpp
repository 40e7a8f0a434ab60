#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posaut/games.hpp"
#include "posaut/pipeline.hpp"
#include "support.hpp"

using namespace posaut;
using namespace testing;

namespace {

Word unroll(const UPWord& x, size_t len) {
  Word out = x.u;
  while (out.size() < len) out.insert(out.end(), x.v.begin(), x.v.end());
  out.resize(len);
  return out;
}

int parse_error_column(const std::string& text, int* line) {
  try {
    parse_dpa(text);
  } catch (const ParseError& e) {
    *line = e.line;
    return e.col;
  }
  return -1;
}

const char* kFixtures[] = {"bfmm",           "cobuchi_ac_bb",    "cobuchi_not_concave", "first_letter_inf",
                           "occ_parity",     "parity_one_state", "positional_buchi",    "reach_aa",
                           "reach_two_a",    "three_priorities"};

}  // namespace

TEST_CASE("dpa round trip") {
  for (auto name : kFixtures) {
    auto A = fixture(name);
    CHECK(validate(A).empty());
    CHECK(parse_dpa(emit_dpa(A)) == A);
    CHECK(emit_dpa(parse_dpa(emit_dpa(A))) == emit_dpa(A));
  }
  std::mt19937 rng(81);
  for (int i = 0; i < 50; ++i) {
    auto A = random_det(rng, 5, 3, 4);
    A.trans.push_back({0, kEps, 1, A.n - 1});
    A.deterministic = false;
    CHECK(parse_dpa(emit_dpa(A)) == A);
  }
}

TEST_CASE("transitions keep file order") {
  auto A = parse_dpa("dpa\nalphabet: a\nstates: 2\ninitial: 0\npriorities: 0 1\ndeterministic: false\n"
                     "trans: 1 a 0 0\ntrans: 0 a 1 1\ntrans: 0 eps 1 0\n");
  REQUIRE(A.trans.size() == 3);
  CHECK(A.trans[0] == Transition{1, 0, 0, 0});
  CHECK(A.trans[2].letter == kEps);
}

TEST_CASE("dpa parse errors carry positions") {
  int line = 0;
  CHECK(parse_error_column("dpa\nalphabet: a eps\n", &line) == 13);
  CHECK(line == 2);
  CHECK(parse_error_column("dpa\nalphabet: a\nstates: 1\ntrans: 0 b 0 0\n", &line) == 10);
  CHECK(line == 4);
  CHECK(parse_error_column("dpa\nalphabet: a\nstates: x\n", &line) == 9);
  CHECK(line == 3);
  CHECK(parse_error_column("nope\n", &line) == 1);
  CHECK(parse_error_column("dpa\nalphabet: a\nstates: 1\ninitial: 0\npriorities: 0 1\n", &line) == 1);
  CHECK(line == 5);
}

TEST_CASE("sig round trip") {
  auto r = decide_positionality_p1(fixture("three_priorities"));
  REQUIRE(r.positional);
  auto text = emit_sig(r.sig);
  auto S = parse_sig(text);
  CHECK(S == r.sig);
  CHECK(emit_sig(S) == text);
  CHECK(looks_like_sig(text));
  CHECK_THROWS_AS(parse_sig(emit_dpa(r.sig.aut) + "preorder: 1 0 0 0\n"), ParseError);
}

TEST_CASE("arena round trip") {
  auto A = fixture("reach_aa");
  auto G = gadget_two_loops(A.alphabet, w(A, "b"), w(A, "b a"), w(A, "a b"));
  G.add_edge(0, kEps, 1);
  G.owner[1] = Adam;
  auto text = emit_arena(G);
  auto H = parse_arena(text);
  CHECK(emit_arena(H) == text);
  CHECK(H.designated == G.designated);
  CHECK_THROWS_AS(parse_arena("arena\nalphabet: a\nvertex: 0 eve\nedge: 0 c 0\n"), ParseError);
}

TEST_CASE("canonical ultimately periodic words") {
  auto A = fixture("reach_aa");
  CHECK(canonical(up(A, "a b", "a b a b")) == up(A, "", "a b"));
  CHECK(canonical(up(A, "", "b a")) == up(A, "b", "a b"));
  CHECK(canonical(up(A, "", "b a a")) == up(A, "b", "a a b"));
  CHECK(upword_str(A, up(A, "", "b")) == "- | b");
  std::mt19937 rng(83);
  for (int i = 0; i < 2000; ++i) {
    auto x = random_upword(rng, 2);
    auto c = canonical(x);
    CHECK(unroll(c, 40) == unroll(x, 40));
    CHECK(primitive_root(c.v) == c.v);
    for (size_t r = 1; r < c.v.size(); ++r) {
      Word rot = c.v;
      std::rotate(rot.begin(), rot.begin() + r, rot.end());
      CHECK(c.v < rot);
    }
    for (size_t k = 0; k < c.u.size(); ++k)
      CHECK(unroll(UPWord{Word(c.u.begin(), c.u.begin() + k), c.v}, 40) != unroll(c, 40));
    CHECK(canonical(c) == c);
  }
}
