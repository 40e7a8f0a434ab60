#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posaut/decide.hpp"
#include "support.hpp"

using namespace posaut;
using namespace testing;

namespace {

std::vector<Word> words_upto(int k, int len) {
  std::vector<Word> ws{{}};
  for (size_t i = 0; i < ws.size(); ++i)
    if (static_cast<int>(ws[i].size()) < len)
      for (int a = 0; a < k; ++a) ws.push_back(concat(ws[i], {a}));
  return ws;
}

// Target and minimal priority of the run from q on a nonempty w.
std::pair<int, int> run(const DetView& D, int q, const Word& w) {
  int m = 1 << 20;
  for (int a : w) {
    m = std::min(m, D.pr(q, a));
    q = D.dst(q, a);
  }
  return {q, m};
}

bool full_progress_by_words(const Signature& S, int len) {
  auto D = det_view(S.aut);
  auto ws = words_upto(D.k, len);
  for (int x = 0; x <= S.d(); x += 2)
    for (int q = 0; q < D.n; ++q)
      for (int p = 0; p < D.n; ++p) {
        if (S.rank[x][q] >= S.rank[x][p]) continue;
        for (auto& w : ws) {
          if (w.empty()) continue;
          auto [t1, m1] = run(D, q, w);
          auto [t2, m2] = run(D, p, w);
          if (t1 == p && m1 >= x && t2 == p && m2 % 2 == 1) return true;
        }
      }
  return false;
}

Signature random_signature(std::mt19937& rng, const Automaton& A, int d) {
  Signature S;
  S.aut = A;
  for (int x = 0; x <= d; ++x) {
    std::vector<int> r;
    for (int q = 0; q < A.n; ++q) r.push_back(static_cast<int>(rng() % A.n));
    S.rank.push_back(r);
  }
  return S;
}

}  // namespace

TEST_CASE("progress witness for reach_aa") {
  auto A = fixture("reach_aa");
  auto w = check_progress_consistency(A);
  REQUIRE(w);
  CHECK(w->u == Word{});
  CHECK(w->w == parse_word(A, "b a"));
}

TEST_CASE("reach_two_a and one-state automata are progress consistent") {
  CHECK_FALSE(check_progress_consistency(fixture("reach_two_a")));
  CHECK_FALSE(check_progress_consistency(fixture("parity_one_state")));
  CHECK_FALSE(check_progress_consistency(fixture("positional_buchi")));
}

TEST_CASE("plain progress witnesses verify") {
  std::mt19937 rng(31);
  int seen = 0;
  for (int it = 0; it < 2000; ++it) {
    auto A = trim(normalize(random_det(rng, 5, 3, 3)));
    auto R = residual_preorder(A);
    if (!R.total) continue;
    auto w = check_progress_consistency(A, R);
    if (!w) continue;
    ++seen;
    auto D = det_view(A);
    int q = A.init;
    for (int a : w->u) q = D.dst(q, a);
    int p = run(D, q, w->w).first;
    CHECK(R.leq[q][p]);
    CHECK_FALSE(R.leq[p][q]);
    CHECK_FALSE(naive_member(A, A.init, UPWord{w->u, w->w}));
  }
  CHECK(seen > 20);
}

TEST_CASE("finite path languages on three_priorities") {
  auto A = fixture("three_priorities");
  auto L = finite_path_language(A, 2, 1, PathMode::AtLeast, 2);
  CHECK(L.accepts(w(A, "b")));
  CHECK_FALSE(L.accepts(w(A, "b b")));
  auto E = finite_path_language(A, 1, 2, PathMode::Exactly, 1);
  CHECK(E.accepts(w(A, "b")));
  auto all = finite_path_language(A, 2, 0, PathMode::AtLeast, 0);
  CHECK(all.accepts(w(A, "b c a")));
}

TEST_CASE("finite path languages agree with enumeration") {
  std::mt19937 rng(33);
  for (int it = 0; it < 50; ++it) {
    auto A = random_det(rng, 4, 2, 3);
    auto D = det_view(A);
    auto ws = words_upto(A.k(), 4);
    for (int q = 0; q < A.n; ++q)
      for (int p = 0; p < A.n; ++p)
        for (int x = 0; x <= 3; ++x) {
          auto La = finite_path_language(A, q, p, PathMode::AtLeast, x);
          auto Le = finite_path_language(A, q, p, PathMode::Exactly, x);
          for (auto& v : ws) {
            auto [t, m] = run(D, q, v);
            CHECK(La.accepts(v) == (t == p && (v.empty() || m >= x)));
            CHECK(Le.accepts(v) == (!v.empty() && t == p && m == x));
          }
        }
  }
}

TEST_CASE("full progress consistency") {
  auto A = fixture("three_priorities");
  Signature S{A, {{0, 1, 1}, {0, 1, 1}, {0, 1, 2}}};
  CHECK_FALSE(check_full_progress_consistency(S));
  Automaton H;
  H.alphabet = letters(1);
  H.n = 2;
  H.deterministic = true;
  H.trans = {{0, 0, 2, 1}, {1, 0, 1, 1}};
  H.dmax = 2;
  Signature T{H, {{0, 0}, {0, 0}, {0, 1}}};
  auto w = check_full_progress_consistency(T);
  REQUIRE(w);
  CHECK(w->full);
  CHECK(w->x == 2);
  CHECK(w->q == 0);
  CHECK(w->p == 1);
  CHECK(w->w == Word{0});
  CHECK(full_progress_by_words(T, 4));
  Signature flat{H, {{0, 0}, {0, 0}, {0, 0}}};
  CHECK_FALSE(check_full_progress_consistency(flat));
}

TEST_CASE("full progress witnesses verify") {
  std::mt19937 rng(35);
  for (int it = 0; it < 200; ++it) {
    auto A = random_det(rng, 4, 3, 3);
    auto S = random_signature(rng, A, 3);
    auto w = check_full_progress_consistency(S);
    if (!w) continue;
    auto D = det_view(A);
    auto [t, m] = run(D, w->q, w->w);
    CHECK(t == w->p);
    CHECK(m >= w->x);
    CHECK(S.rank[w->x][w->q] < S.rank[w->x][w->p]);
    CHECK(run(D, w->p, w->w).second % 2 == 1);
  }
}

TEST_CASE("full progress checker agrees with words up to length 8") {
  std::mt19937 rng(37);
  for (int it = 0; it < 100; ++it) {
    auto A = random_det(rng, 4, 3, 3);
    auto S = random_signature(rng, A, 3);
    CHECK(check_full_progress_consistency(S).has_value() == full_progress_by_words(S, 8));
  }
}

TEST_CASE("fast path classes") {
  auto r = warmup_fast_path(fixture("reach_aa"));
  CHECK(r.tag == "reachability");
  CHECK(r.positional == false);
  auto b = warmup_fast_path(fixture("positional_buchi"));
  CHECK(b.tag == "buchi");
  CHECK(b.positional == true);
  auto c = warmup_fast_path(fixture("cobuchi_ac_bb"));
  CHECK(c.tag == "cobuchi");
  CHECK(c.positional == true);
  CHECK(warmup_fast_path(fixture("three_priorities")).tag == "none");
}

TEST_CASE("fast path agrees with both procedures") {
  for (auto name : {"bfmm", "cobuchi_ac_bb", "cobuchi_not_concave", "first_letter_inf", "occ_parity", "parity_one_state",
                    "positional_buchi", "reach_aa", "reach_two_a", "three_priorities"}) {
    auto A = fixture(name);
    auto f = warmup_fast_path(A);
    auto d = decide_positionality(A, Method::Both);
    CHECK_FALSE(d.disagree);
    if (f.positional) CHECK(*f.positional == d.positional);
  }
  std::mt19937 rng(39);
  for (int it = 0; it < 200; ++it) {
    auto A = random_det(rng, 4, 2, 2);
    auto f = warmup_fast_path(A);
    if (!f.positional) continue;
    CHECK(*f.positional == decide_positionality(A, Method::Both).positional);
  }
}

TEST_CASE("bipositionality") {
  auto o = decide_bipositionality(fixture("occ_parity"));
  CHECK(o.bipositional);
  auto r = decide_bipositionality(fixture("reach_aa"));
  CHECK_FALSE(r.bipositional);
  CHECK(r.side == "W");
  REQUIRE(r.w.p1);
  REQUIRE(r.w.p1->witness);
  CHECK(r.w.p1->witness->kind == WitnessKind::ProgressFailure);
  CHECK(decide_bipositionality(fixture("parity_one_state")).bipositional);
}

TEST_CASE("bipositional implies bi-progress consistency") {
  std::mt19937 rng(41);
  for (int it = 0; it < 150; ++it) {
    auto A = random_det(rng, 4, 2, 3);
    auto B = decide_bipositionality(A);
    if (!B.bipositional) continue;
    for (auto X : {trim(A), complement_det(trim(A))}) {
      auto N = normalize(X);
      auto R = residual_preorder(N);
      CHECK(R.total);
      if (R.total) CHECK_FALSE(check_progress_consistency(N, R));
    }
  }
}
