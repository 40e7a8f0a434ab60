// Acceptance run: one line per criterion, exit status 1 when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "posaut/completion.hpp"
#include "posaut/decide.hpp"
#include "posaut/io.hpp"
#include "posaut/ugraph.hpp"

using namespace posaut;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Automaton fixture(const std::string& name) { return load_dpa(std::string(POSAUT_FIXTURES) + "/" + name + ".dpa"); }

std::vector<std::string> letters(int k) {
  std::vector<std::string> v;
  for (int a = 0; a < k; ++a) v.push_back(std::string(1, static_cast<char>('a' + a)));
  return v;
}

Automaton random_det(std::mt19937& rng, int max_states, int max_letters, int max_prio) {
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

Word random_word(std::mt19937& rng, int k, int min_len, int max_len) {
  Word w(min_len + rng() % (max_len - min_len + 1));
  for (auto& a : w) a = static_cast<int>(rng() % k);
  return w;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int n, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s %s (%.2fs)\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
  std::fflush(stdout);
}

// ---- criteria 1-3 ----

std::vector<std::pair<Automaton, PositionalityWitness>> not_positional;

Outcome fixture_verdicts() {
  struct Case {
    const char* name;
    bool positional;
  };
  const Case cases[] = {{"three_priorities", true},    {"positional_buchi", true}, {"reach_aa", false},
                        {"cobuchi_ac_bb", true},       {"cobuchi_not_concave", true}, {"bfmm", true},
                        {"reach_two_a", true},         {"first_letter_inf", false}};
  Outcome o;
  std::ostringstream bad;
  for (auto& c : cases) {
    auto A = fixture(c.name);
    for (auto m : {Method::Signature, Method::Completion}) {
      auto t0 = Clock::now();
      auto D = decide_positionality(A, m);
      double dt = seconds_since(t0);
      if (D.positional != c.positional || dt >= 10) {
        o.pass = false;
        bad << " " << c.name << (m == Method::Signature ? "/p1" : "/p2");
      }
      if (m == Method::Signature && !D.positional && D.p1->witness) not_positional.push_back({A, *D.p1->witness});
    }
  }
  auto B = decide_bipositionality(fixture("reach_two_a"));
  if (!B.bipositional) {
    o.pass = false;
    bad << " reach_two_a/bipositional";
  }
  o.detail = o.pass ? "8 fixtures, both procedures" : "mismatch:" + bad.str();
  return o;
}

Outcome cross_procedure() {
  std::mt19937 rng(20240501);
  int disagree = 0, neg = 0;
  const int total = 500;
  for (int it = 0; it < total; ++it) {
    auto A = random_det(rng, 5, 3, 3);
    auto D = decide_positionality(A, Method::Both);
    if (D.disagree) ++disagree;
    if (!D.p1->positional) {
      ++neg;
      not_positional.push_back({A, *D.p1->witness});
    }
  }
  std::ostringstream s;
  s << total << " automata, " << neg << " not positional, " << disagree << " disagreements";
  return {disagree == 0, s.str()};
}

Outcome witness_validation() {
  int bad = 0;
  for (auto& [A, w] : not_positional) {
    auto c = check_gadget(witness_gadget(A, w));
    if (!c.eve_wins || c.positional_found) ++bad;
  }
  std::ostringstream s;
  s << not_positional.size() << " gadgets, " << bad << " failures";
  return {bad == 0 && !not_positional.empty(), s.str()};
}

// ---- criterion 4 ----

Outcome positional_side() {
  std::mt19937 rng(4242);
  int checked = 0, bad = 0;
  for (auto name : {"three_priorities", "positional_buchi", "reach_two_a", "parity_one_state"}) {
    auto A = fixture(name);
    if (A.n > 3 || !decide_positionality(A, Method::Signature).positional) continue;
    for (int i = 0; i < 200; ++i) {
      Arena G;
      G.alphabet = A.alphabet;
      int n = 1 + static_cast<int>(rng() % 4);
      for (int v = 0; v < n; ++v) G.add_vertex(rng() % 2 ? Adam : Eve);
      for (int v = 0; v < n; ++v) {
        int deg = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < deg; ++j) G.add_edge(v, static_cast<int>(rng() % A.k()), static_cast<int>(rng() % n));
      }
      auto S = solve(G, A);
      bool any = false;
      for (int v = 0; v < n; ++v) any = any || S.eve_wins(v, A.init);
      if (!any) continue;
      ++checked;
      if (!brute_force_positional(G, A).uniform) ++bad;
    }
  }
  std::ostringstream s;
  s << checked << " arenas with Eve winning, " << bad << " failures";
  return {bad == 0, s.str()};
}

// ---- criterion 5 ----

const char* kFixtures[] = {"bfmm",       "cobuchi_ac_bb",    "cobuchi_not_concave", "first_letter_inf", "occ_parity",
                           "parity_one_state", "positional_buchi", "reach_aa",    "reach_two_a",      "three_priorities"};

// Edge subsets forming a strongly connected subgraph.
std::vector<unsigned> cycle_sets(int n, const std::vector<Transition>& tr) {
  int m = static_cast<int>(tr.size());
  std::vector<unsigned> out;
  for (unsigned s = 1; s < (1u << m); ++s) {
    Adj g(n);
    int first = -1;
    for (int i = 0; i < m; ++i)
      if (s >> i & 1) {
        g[tr[i].src].push_back(tr[i].dst);
        if (first < 0) first = tr[i].src;
      }
    auto comp = scc(g);
    bool ok = true;
    for (int i = 0; i < m; ++i)
      if (s >> i & 1) ok = ok && comp[tr[i].src] == comp[first] && comp[tr[i].dst] == comp[first];
    if (ok) out.push_back(s);
  }
  return out;
}

// All priority labellings of one transition structure, grouped by the parity of every cycle's minimum.
// Returns the number of labellings where normalize differs from the pointwise least equivalent labelling.
long long check_structure(Automaton A, int top) {
  int m = static_cast<int>(A.trans.size());
  auto cycles = cycle_sets(A.n, A.trans);
  unsigned on_cycle = 0;
  for (unsigned s : cycles) on_cycle |= s;
  int count = 1;
  for (int i = 0; i < m; ++i) count *= top + 1;
  std::vector<std::vector<int>> labs(count, std::vector<int>(m));
  std::vector<unsigned long long> sig(count);
  std::unordered_map<unsigned long long, std::vector<int>> least;
  for (int c = 0; c < count; ++c) {
    for (int i = 0, r = c; i < m; ++i, r /= top + 1) labs[c][i] = r % (top + 1);
    unsigned long long bits = 0;
    for (size_t j = 0; j < cycles.size(); ++j) {
      int mn = top + 1;
      for (int i = 0; i < m; ++i)
        if (cycles[j] >> i & 1) mn = std::min(mn, labs[c][i]);
      if (mn % 2) bits |= 1ull << j;
    }
    sig[c] = bits;
    auto [it, fresh] = least.try_emplace(bits, labs[c]);
    if (!fresh)
      for (int i = 0; i < m; ++i) it->second[i] = std::min(it->second[i], labs[c][i]);
  }
  long long bad = 0;
  for (int c = 0; c < count; ++c) {
    for (int i = 0; i < m; ++i) A.trans[i].prio = labs[c][i];
    A.dmax = top;
    auto N = normalize(A);
    auto& best = least[sig[c]];
    for (int i = 0; i < m; ++i) {
      int want = (on_cycle >> i & 1) ? best[i] : N.dmax;
      if (N.trans[i].prio != want) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

Outcome normal_form() {
  auto t0 = Clock::now();
  std::mt19937 rng(555);
  long long idem_bad = 0, lang_bad = 0;
  for (auto name : kFixtures) {
    auto A = fixture(name);
    auto N = normalize(A);
    if (!(normalize(N) == N)) ++idem_bad;
    for (int i = 0; i < 100; ++i) {
      UPWord x{random_word(rng, A.k(), 0, 4), random_word(rng, A.k(), 1, 4)};
      if (up_membership(A, x) != up_membership(N, x)) ++lang_bad;
    }
  }
  long long structures = 0, automata = 0, min_bad = 0;
  for (int k = 1; k <= 3; ++k)
    for (int n = 1; n <= 3 && n * k <= 6; ++n) {
      int m = n * k;
      long long shapes = 1;
      for (int i = 0; i < m; ++i) shapes *= n;
      for (long long s = 0; s < shapes; ++s) {
        Automaton A;
        A.n = n;
        A.alphabet = letters(k);
        A.deterministic = true;
        long long r = s;
        for (int q = 0; q < n; ++q)
          for (int a = 0; a < k; ++a, r /= n) A.trans.push_back({q, a, 0, static_cast<int>(r % n)});
        min_bad += check_structure(A, 3);
        ++structures;
        long long c = 1;
        for (int i = 0; i < m; ++i) c *= 4;
        automata += c;
      }
    }
  double dt = seconds_since(t0);
  std::ostringstream s;
  s << "idempotence failures " << idem_bad << ", membership mismatches " << lang_bad << ", " << automata
    << " labelled automata over " << structures << " structures, " << min_bad << " non-minimal";
  return {idem_bad == 0 && lang_bad == 0 && min_bad == 0 && dt < 60, s.str()};
}

// ---- criterion 6 ----

bool has(const Automaton& A, int s, int y, int d) {
  return std::find(A.trans.begin(), A.trans.end(), Transition{s, kEps, y, d}) != A.trans.end();
}

Outcome completion_fidelity() {
  auto A = fixture("three_priorities");
  auto r = decide_positionality_p2(A, A);
  if (!r.positional) return {false, "three_priorities not completed"};
  auto C = priority_close(r.completion);
  int missing = 0;
  // q1 = 0, q2 = 1, q3 = 2
  for (int q : {1, 2})
    for (int y : {0, 1}) missing += !has(C, q, y, 0);
  missing += !has(C, 1, 1, 2);
  missing += !has(C, 2, 1, 1);
  for (int y : {2, 3}) missing += !has(C, 2, y, 1) + !has(C, 1, y, 0);
  for (int q = 0; q < 3; ++q)
    for (int y : {1, 3}) missing += !has(C, q, y, q);
  bool eps_complete = validate_eps_complete(C);
  bool sub = incl_nd_in_det(C, A).has_value();
  // The completion keeps every letter transition of A on the same states, so L(A) is contained in L(C).
  bool embedded = C.n == A.n && C.init == A.init;
  for (auto& t : A.trans) embedded = embedded && std::find(C.trans.begin(), C.trans.end(), t) != C.trans.end();
  std::ostringstream s;
  s << "missing eps-transitions " << missing << ", eps-complete " << (eps_complete ? "yes" : "no")
    << ", L(C) in L(A) " << (sub ? "no" : "yes") << ", L(A) in L(C) " << (embedded ? "yes" : "no");
  return {missing == 0 && eps_complete && !sub && embedded, s.str()};
}

// ---- criterion 7 ----

Outcome bipositionality() {
  struct Case {
    const char* name;
    bool bipositional;
  };
  Outcome o;
  std::ostringstream s;
  for (auto c : {Case{"occ_parity", true}, Case{"reach_aa", false}, Case{"parity_one_state", true}}) {
    auto t0 = Clock::now();
    auto B = decide_bipositionality(fixture(c.name));
    double dt = seconds_since(t0);
    s << c.name << "=" << (B.bipositional ? "Bipositional" : "NotBipositional") << " ";
    if (B.bipositional != c.bipositional || dt >= 10) o.pass = false;
  }
  o.detail = s.str();
  return o;
}

// ---- criterion 8 ----

Outcome universal_graphs() {
  auto t0 = Clock::now();
  auto U = build_upar(2, 3);
  bool mono = is_monotone(U);
  bool even = all_cycles_even_min(U);
  auto rep = check_universality_bounded(U, parity_automaton(3), 2);
  auto A = fixture("three_priorities");
  auto r = decide_positionality_p2(A, A);
  bool aut_ok = false;
  if (r.positional) {
    auto UA = build_uaut(priority_close(r.completion), 2);
    auto sat = satisfying_vertices(UA, A, UA.state);
    aut_ok = is_monotone(UA) && std::all_of(sat.begin(), sat.end(), [](char c) { return c; });
  }
  double dt = seconds_since(t0);
  std::ostringstream s;
  s << "U_Par monotone " << (mono ? "yes" : "no") << ", cycles even " << (even ? "yes" : "no") << ", k=2 "
    << (rep.exhaustive ? "exhaustive " : "sampled ") << rep.graphs << " graphs " << rep.counterexamples
    << " counterexamples, U_Aut " << (aut_ok ? "ok" : "failed");
  return {mono && even && rep.exhaustive && rep.counterexamples == 0 && aut_ok && dt < 120, s.str()};
}

// ---- criterion 9 ----

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
  std::vector<Word> ws{{}};
  for (size_t i = 0; i < ws.size(); ++i)
    if (static_cast<int>(ws[i].size()) < len)
      for (int a = 0; a < D.k; ++a) ws.push_back(concat(ws[i], {a}));
  for (int x = 0; x <= S.d(); x += 2)
    for (int q = 0; q < D.n; ++q)
      for (int p = 0; p < D.n; ++p) {
        if (S.rank[x][q] >= S.rank[x][p]) continue;
        for (size_t i = 1; i < ws.size(); ++i) {
          auto [t1, m1] = run(D, q, ws[i]);
          auto [t2, m2] = run(D, p, ws[i]);
          if (t1 == p && m1 >= x && t2 == p && m2 % 2 == 1) return true;
        }
      }
  return false;
}

Outcome full_progress() {
  std::mt19937 rng(9099);
  int mismatch = 0, violated = 0;
  for (int it = 0; it < 100; ++it) {
    Signature S;
    S.aut = random_det(rng, 4, 3, 3);
    for (int x = 0; x <= 3; ++x) {
      std::vector<int> r;
      for (int q = 0; q < S.aut.n; ++q) r.push_back(static_cast<int>(rng() % S.aut.n));
      S.rank.push_back(r);
    }
    bool fast = check_full_progress_consistency(S).has_value();
    bool slow = full_progress_by_words(S, 8);
    violated += slow;
    mismatch += fast != slow;
  }
  std::ostringstream s;
  s << "100 signatures, " << violated << " violating, " << mismatch << " mismatches";
  return {mismatch == 0, s.str()};
}

// ---- criterion 10 ----

Outcome union_spot_check() {
  auto A = fixture("positional_buchi");
  auto D = decide_positionality(A, Method::Both);
  bool ok = D.positional && !D.disagree;
  return {ok, std::string("InfOften(a) or Reach(aa): ") + (ok ? "Positional" : "NotPositional")};
}

}  // namespace

int main() {
  report(1, fixture_verdicts);
  report(2, cross_procedure);
  report(3, witness_validation);
  report(4, positional_side);
  report(5, normal_form);
  report(6, completion_fidelity);
  report(7, bipositionality);
  report(8, universal_graphs);
  report(9, full_progress);
  report(10, union_spot_check);
  return failures ? 1 : 0;
}
