#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <string>

#include "posaut/decide.hpp"
#include "posaut/io.hpp"
#include "posaut/ugraph.hpp"

using namespace posaut;
using json = nlohmann::ordered_json;

namespace {

struct Out {
  bool as_json = false;
  json j = json::object();
  std::vector<std::string> lines;

  void set(const std::string& key, const std::string& text, json value) {
    lines.push_back(key + ": " + text);
    j[key] = std::move(value);
  }
  void set(const std::string& key, const std::string& text) { set(key, text, text); }
  void add(const std::string& key, const std::string& text, json value) {
    lines.push_back(key + ": " + text);
    if (!j.contains(key)) j[key] = json::array();
    j[key].push_back(std::move(value));
  }
  void raw(const std::string& line) { lines.push_back(line); }
  void flush() const {
    if (as_json) {
      std::cout << j.dump(2) << "\n";
    } else {
      for (auto& l : lines) std::cout << l << "\n";
    }
  }
};

struct Global {
  unsigned seed = 1;
  long long limit = -1;
  std::string format = "text";
};

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string with_path(const std::string& path, const std::string& msg) { return path + ":" + msg; }

Automaton load_automaton(const std::string& path) {
  auto text = read_file(path);
  try {
    return parse_dpa(text);
  } catch (const ParseError& e) {
    throw Error(with_path(path, e.what()));
  }
}

Signature load_signature(const std::string& path) {
  auto text = read_file(path);
  try {
    return parse_sig(text);
  } catch (const ParseError& e) {
    throw Error(with_path(path, e.what()));
  }
}

Arena load_arena(const std::string& path) {
  auto text = read_file(path);
  try {
    return parse_arena(text);
  } catch (const ParseError& e) {
    throw Error(with_path(path, e.what()));
  }
}

Automaton load_deterministic(const std::string& path) {
  auto A = load_automaton(path);
  if (!structurally_deterministic(A)) throw Error(path + ": automaton is not deterministic");
  return A;
}

json upword_json(const Automaton& A, const UPWord& w) { return json{{"u", word_str(A, w.u)}, {"v", word_str(A, w.v)}}; }

json witness_json(const PositionalityWitness& W) {
  const Automaton& A = W.aut;
  json j{{"kind", witness_kind_name(W.kind)}};
  switch (W.kind) {
    case WitnessKind::IncomparableResiduals:
      j["q"] = W.q;
      j["p"] = W.p;
      j["w1"] = upword_json(A, W.w1);
      j["w2"] = upword_json(A, W.w2);
      break;
    case WitnessKind::ProgressFailure:
      j["u"] = word_str(A, W.progress.u);
      j["w"] = word_str(A, W.progress.w);
      break;
    case WitnessKind::FullProgressFailure:
      j["x"] = W.progress.x;
      j["q"] = W.progress.q;
      j["p"] = W.progress.p;
      j["w"] = word_str(A, W.progress.w);
      break;
    case WitnessKind::SafeOrderFailure:
      j["x"] = W.x;
      j["q"] = W.q;
      j["p"] = W.p;
      j["sep_qp"] = word_str(A, W.sep_qp);
      j["sep_pq"] = word_str(A, W.sep_pq);
      break;
    case WitnessKind::PolishLanguageChange:
      j["x"] = W.x;
      j["w"] = upword_json(A, W.w1);
      break;
    case WitnessKind::PolishFailure:
      j["x"] = W.x;
      j["q"] = W.q;
      break;
  }
  return j;
}

std::string p2_witness_str(const Automaton& A, const P2Result& r) {
  return "completion q=" + std::to_string(r.q) + " q2=" + std::to_string(r.q2) + " x=" + std::to_string(r.x) +
         " cex1=" + upword_str(A, r.cex1) + " cex2=" + upword_str(A, r.cex2);
}

json p2_witness_json(const Automaton& A, const P2Result& r) {
  return json{{"kind", "completion"}, {"q", r.q},           {"q2", r.q2},
              {"x", r.x},             {"cex1", upword_json(A, r.cex1)}, {"cex2", upword_json(A, r.cex2)}};
}

void report_witness(Out& o, const Automaton& W, const Decision& D) {
  if (D.p1 && D.p1->witness) {
    auto s = witness_str(*D.p1->witness);
    o.set("witness", s.substr(std::string("witness: ").size()), witness_json(*D.p1->witness));
  }
  if (D.p2 && !D.p2->positional) o.set("completion-witness", p2_witness_str(W, *D.p2), p2_witness_json(W, *D.p2));
}

Method parse_method(const std::string& m) {
  if (m == "signature") return Method::Signature;
  if (m == "completion") return Method::Completion;
  return Method::Both;
}

UPWord parse_upword(const Automaton& A, const std::string& s) {
  auto bar = s.find('|');
  if (bar == std::string::npos) throw Error("expected 'u | v', got '" + s + "'");
  UPWord w{parse_word(A, s.substr(0, bar)), parse_word(A, s.substr(bar + 1))};
  if (w.v.empty()) throw Error("empty period in '" + s + "'");
  return w;
}

// ---- commands ----

int cmd_validate(Out& o, const std::string& path) {
  auto text = read_file(path);
  if (looks_like_sig(text)) {
    Signature S;
    try {
      S = parse_sig(text);
    } catch (const ParseError& e) {
      throw Error(with_path(path, e.what()));
    }
    auto err = validate_signature(S);
    o.set("kind", "signature");
    o.set("valid", yes(!err), !err);
    if (err) o.set("problem", *err);
    auto fp = check_full_progress_consistency(S);
    o.set("fully-progress-consistent", yes(!fp), !fp);
    return err ? 2 : 0;
  }
  auto A = load_automaton(path);
  o.set("kind", "automaton");
  o.set("states", std::to_string(A.n), A.n);
  o.set("letters", std::to_string(A.k()), A.k());
  o.set("priorities", std::to_string(A.dmin) + " " + std::to_string(A.dmax), json{A.dmin, A.dmax});
  o.set("deterministic", yes(structurally_deterministic(A)), structurally_deterministic(A));
  for (int q : unreachable(A)) o.add("unreachable", std::to_string(q), q);
  o.set("valid", "yes", true);
  return 0;
}

int cmd_normalize(Out& o, const std::string& in, const std::string& out) {
  auto A = load_automaton(in);
  auto B = normalize(A);
  write_file(out, emit_dpa(B));
  o.set("priorities", std::to_string(B.dmin) + " " + std::to_string(B.dmax), json{B.dmin, B.dmax});
  o.set("output", out);
  return 0;
}

int cmd_residuals(Out& o, const std::string& path) {
  auto A = trim(load_deterministic(path));
  auto N = normalize(A, InterScc::Zero);
  auto R = residual_preorder(N);
  o.set("total", yes(R.total), static_cast<bool>(R.total));
  if (!R.total) {
    auto& w = *R.incomparable;
    o.set("incomparable",
          std::to_string(w.q) + " " + std::to_string(w.p) + " in_q_not_p=" + upword_str(A, w.in_q_not_p) +
              " in_p_not_q=" + upword_str(A, w.in_p_not_q),
          json{{"q", w.q}, {"p", w.p}, {"in_q_not_p", upword_json(A, w.in_q_not_p)},
               {"in_p_not_q", upword_json(A, w.in_p_not_q)}});
    return 1;
  }
  for (int q = 0; q < A.n; ++q)
    o.add("rank", std::to_string(q) + " " + std::to_string(R.rank[q]), json{{"state", q}, {"rank", R.rank[q]}});
  auto RA = residual_automaton(N, R);
  o.set("classes", std::to_string(RA.n), RA.n);
  auto pw = check_progress_consistency(N, R);
  o.set("progress-consistent", yes(!pw), !pw);
  if (pw) {
    auto s = witness_str(A, *pw);
    o.set("witness", s.substr(std::string("witness: ").size()), json{{"u", word_str(A, pw->u)}, {"w", word_str(A, pw->w)}});
  }
  return 0;
}

int cmd_positional(Out& o, const std::string& path, const std::string& method, const std::string& cert) {
  auto A = trim(load_deterministic(path));
  auto F = warmup_fast_path(A);
  auto D = decide_positionality(A, parse_method(method));
  o.set("class", F.tag);
  if (D.p1) o.set("signature", D.p1->positional ? "Positional" : "NotPositional");
  if (D.p2) o.set("completion", D.p2->positional ? "Positional" : "NotPositional");
  bool fast_mismatch = F.positional && *F.positional != D.positional;
  if (D.disagree || fast_mismatch) {
    o.set("verdict", "Disagreement");
    report_witness(o, A, D);
    return 2;
  }
  o.set("verdict", D.positional ? "Positional" : "NotPositional");
  if (D.positional) {
    if (!cert.empty()) {
      if (D.p1) write_file(cert, emit_sig(D.p1->sig));
      else write_file(cert, emit_dpa(D.p2->completion));
      o.set("certificate", cert);
    }
    return 0;
  }
  report_witness(o, A, D);
  return 1;
}

int cmd_bipositional(Out& o, const std::string& path, const std::string& method) {
  auto A = trim(load_deterministic(path));
  auto B = decide_bipositionality(A, parse_method(method));
  if (B.w.disagree || B.complement.disagree) {
    o.set("verdict", "Disagreement");
    return 2;
  }
  o.set("objective", B.w.positional ? "Positional" : "NotPositional");
  o.set("complement", B.complement.positional ? "Positional" : "NotPositional");
  o.set("verdict", B.bipositional ? "Bipositional" : "NotBipositional");
  if (!B.bipositional) {
    o.set("side", B.side);
    if (B.side == "W") report_witness(o, A, B.w);
    else report_witness(o, complement_det(A), B.complement);
  }
  return B.bipositional ? 0 : 1;
}

int cmd_complete(Out& o, const std::string& in, const std::string& out, const std::string& method) {
  auto A = trim(load_deterministic(in));
  Automaton C;
  if (method == "completion") {
    auto r = decide_positionality_p2(A, A);
    if (!r.positional) {
      o.set("verdict", "NotPositional");
      o.set("witness", p2_witness_str(A, r), p2_witness_json(A, r));
      return 1;
    }
    C = r.completion;
  } else {
    auto r = decide_positionality_p1(A);
    if (!r.positional) {
      o.set("verdict", "NotPositional");
      o.set("witness", witness_str(*r.witness).substr(9), witness_json(*r.witness));
      return 1;
    }
    C = merge_equivalent(eps_complete_from_signature(r.sig));
  }
  C = priority_close(C);
  if (auto v = eps_complete_violation(C)) throw Error("completion is not eps-complete (" + v->what + ")");
  if (incl_nd_in_det(C, A)) throw Error("completion changed the language");
  write_file(out, emit_dpa(C));
  o.set("verdict", "Positional");
  o.set("states", std::to_string(C.n), C.n);
  o.set("output", out);
  return 0;
}

int cmd_signature(Out& o, const std::string& in, const std::string& out) {
  auto A = trim(load_deterministic(in));
  auto r = decide_positionality_p1(A);
  if (!r.positional) {
    o.set("verdict", "NotPositional");
    o.set("witness", witness_str(*r.witness).substr(9), witness_json(*r.witness));
    return 1;
  }
  write_file(out, emit_sig(r.sig));
  o.set("verdict", "Positional");
  o.set("states", std::to_string(r.sig.aut.n), r.sig.aut.n);
  o.set("levels", std::to_string(r.sig.rank.size()), r.sig.rank.size());
  o.set("restarts", std::to_string(r.restarts), r.restarts);
  o.set("output", out);
  return 0;
}

void universality_report(Out& o, const MonotoneGraph& U, const Automaton& W, int k, const Global& g) {
  auto R = check_universality_bounded(U, W, k, 2000, g.seed);
  o.set("universality",
        "k=" + std::to_string(R.k) + (R.exhaustive ? " exhaustive" : " sampled") + " graphs=" + std::to_string(R.graphs) +
            " counterexamples=" + std::to_string(R.counterexamples),
        json{{"k", R.k}, {"exhaustive", R.exhaustive}, {"graphs", R.graphs}, {"counterexamples", R.counterexamples}});
  if (R.first) o.set("counterexample", emit_mgraph(*R.first), emit_mgraph(*R.first));
}

int cmd_ugraph(Out& o, const std::string& in, int parity, int n, const std::string& out, int k, const Global& g) {
  MonotoneGraph U;
  Automaton W;
  std::vector<int> start;
  if (parity >= 0) {
    U = build_upar(parity, n);
    W = parity_automaton(parity + 1);
    start.assign(U.n(), 0);
  } else {
    Signature S;
    if (looks_like_sig(read_file(in))) {
      S = load_signature(in);
      if (auto e = validate_signature(S)) throw Error("invalid signature: " + *e);
      if (auto fp = check_full_progress_consistency(S)) throw Error("signature is not fully progress consistent");
    } else {
      auto r = decide_positionality_p1(trim(load_deterministic(in)));
      if (!r.positional) {
        o.set("verdict", "NotPositional");
        o.set("witness", witness_str(*r.witness).substr(9), witness_json(*r.witness));
        return 1;
      }
      S = r.sig;
    }
    std::vector<int> map;
    auto C = priority_close(merge_equivalent(priority_close(eps_complete_from_signature(S)), &map));
    U = build_uaut(C, n);
    W = S.aut;
    std::vector<int> rep(C.n, -1);
    for (int q = 0; q < S.aut.n; ++q)
      if (rep[map[q]] < 0) rep[map[q]] = q;
    for (int v = 0; v < U.n(); ++v) start.push_back(rep[U.state[v]]);
  }
  bool mono = is_monotone(U);
  U.monotone = mono;
  auto sat = satisfying_vertices(U, W, start);
  bool all = std::all_of(sat.begin(), sat.end(), [](char c) { return c; });
  write_file(out, emit_mgraph(U));
  o.set("vertices", std::to_string(U.n()), U.n());
  o.set("edges", std::to_string(U.edges.size()), U.edges.size());
  o.set("bound", std::to_string(n), n);
  o.set("monotone", yes(mono), mono);
  o.set("all-paths-satisfy", yes(all), all);
  if (parity >= 0) o.set("cycles-even-min", yes(all_cycles_even_min(U)), all_cycles_even_min(U));
  o.set("output", out);
  if (!mono || !all) return 2;
  if (k > 0) {
    universality_report(o, U, W, k, g);
    if (o.j["universality"]["counterexamples"].get<long long>() > 0) return 1;
  }
  return 0;
}

int cmd_solve(Out& o, const std::string& arena, const std::string& obj) {
  auto G = load_arena(arena);
  auto W = load_deterministic(obj);
  check_same_alphabet(G, W);
  if (auto errs = validate_arena(G); !errs.empty()) throw Error(arena + ": " + errs.front());
  auto O = objective_of(W);
  auto R = solve(G, O);
  std::string region;
  json reg = json::array();
  for (int v = 0; v < G.n(); ++v)
    if (R.eve_wins(v, O.init)) {
      region += (region.empty() ? "" : " ") + std::to_string(v);
      reg.push_back(v);
    }
  o.set("region", region.empty() ? "-" : region, reg);
  for (int v = 0; v < G.n(); ++v)
    for (int s = 0; s < O.n; ++s)
      if (R.eve_wins(v, s)) o.add("win", std::to_string(v) + " " + std::to_string(s), json{v, s});
  for (int v = 0; v < G.n(); ++v)
    for (int s = 0; s < O.n; ++s) {
      int e = R.move[v * O.n + s];
      if (e >= 0 && G.owner[v] == Eve)
        o.add("move", std::to_string(v) + " " + std::to_string(e) + " " + std::to_string(s), json{v, e, s});
    }
  return 0;
}

int cmd_oracle(Out& o, const std::string& arena, const std::string& obj, const Global& g) {
  auto G = load_arena(arena);
  auto W = load_deterministic(obj);
  check_same_alphabet(G, W);
  if (auto errs = validate_arena(G); !errs.empty()) throw Error(arena + ": " + errs.front());
  auto B = brute_force_positional(G, W, g.limit, G.designated.empty() ? nullptr : &G.designated);
  o.set("positional", yes(B.uniform), B.uniform);
  o.set("tried", std::to_string(B.tried), B.tried);
  if (B.uniform)
    for (int v = 0; v < G.n(); ++v)
      if (B.choice[v] >= 0) o.add("choice", std::to_string(v) + " " + std::to_string(B.choice[v]), json{v, B.choice[v]});
  return B.uniform ? 0 : 1;
}

struct GadgetArgs {
  std::string kind, in, out;
  int q = -1, p = -1, x = -1;
  std::string w1, w2, u, w, l1, l2, u0;
  bool check = true;
};

int cmd_gadget(Out& o, const GadgetArgs& a, const Global& g) {
  auto W = trim(load_deterministic(a.in));
  Gadget gd;
  gd.objective = objective_of(W);
  auto acc = access_words(W);
  auto need_state = [&](int s, const char* what) {
    if (s < 0 || s >= W.n) throw Error(std::string("--") + what + " must be a state of the trimmed automaton");
  };
  if (a.kind == "residual") {
    int q = a.q, p = a.p;
    UPWord w1, w2;
    if (q < 0 || p < 0 || a.w1.empty() || a.w2.empty()) {
      auto R = residual_preorder(W);
      if (R.total) throw Error("residuals are totally ordered; no residual gadget");
      q = R.incomparable->q;
      p = R.incomparable->p;
      w1 = R.incomparable->in_q_not_p;
      w2 = R.incomparable->in_p_not_q;
    } else {
      need_state(q, "q");
      need_state(p, "p");
      w1 = parse_upword(W, a.w1);
      w2 = parse_upword(W, a.w2);
    }
    gd = Gadget{"residual", gadget_residual(W.alphabet, acc[q], acc[p], w1, w2), gd.objective};
  } else if (a.kind == "progress") {
    Word u, w;
    int q;
    if (a.w.empty()) {
      auto N = normalize(W, InterScc::Zero);
      auto R = residual_preorder(N);
      if (!R.total) throw Error("residuals are not totally ordered");
      auto pw = check_progress_consistency(N, R);
      if (!pw) throw Error("automaton is progress consistent; no progress gadget");
      u = pw->u;
      w = pw->w;
      q = pw->q;
    } else {
      u = parse_word(W, a.u);
      w = parse_word(W, a.w);
      auto D = det_view(W);
      q = W.init;
      for (int c : u) q = D.dst(q, c);
    }
    auto D = det_view(W);
    int p = q;
    for (int c : w) p = D.dst(p, c);
    auto exit = incl_det(W, p, W, q);
    if (!exit) throw Error("the state reached by w is not above the start; no exit word");
    gd = Gadget{"progress", gadget_progress(W.alphabet, u, w, *exit), gd.objective};
  } else if (a.kind == "two-loops") {
    TwoLoops t;
    if (a.l1.empty() || a.l2.empty()) {
      auto f = find_two_loops(W);
      if (!f) throw Error("no pair of loops found within the search bound");
      t = *f;
    } else {
      t = TwoLoops{parse_word(W, a.u0), parse_word(W, a.l1), parse_word(W, a.l2)};
    }
    gd = Gadget{"two-loops", gadget_two_loops(W.alphabet, t.u0, t.l1, t.l2), gd.objective};
  } else if (a.kind == "completion") {
    P2Result r = decide_positionality_p2(W, W);
    if (a.q >= 0 || a.p >= 0 || a.x >= 0) {
      need_state(a.q, "q");
      need_state(a.p, "q2");
      if (a.x < 0 || a.x % 2) throw Error("--x must be an even priority");
      r.q = a.q;
      r.q2 = a.p;
      r.x = a.x;
      r.base = W;
    } else if (r.positional) {
      throw Error("the completion procedure finds the objective positional; pass --q --q2 --x");
    }
    gd = completion_witness_gadget(W, r);
  } else {
    throw Error("unknown gadget kind '" + a.kind + "'");
  }
  write_file(a.out, emit_arena(gd.arena));
  o.set("kind", gd.kind);
  o.set("vertices", std::to_string(gd.arena.n()), gd.arena.n());
  o.set("output", a.out);
  if (!a.check) return 0;
  auto c = check_gadget(gd, g.limit);
  o.set("eve-wins", yes(c.eve_wins), c.eve_wins);
  o.set("positional", yes(c.positional_found), c.positional_found);
  o.set("tried", std::to_string(c.tried), c.tried);
  return c.eve_wins && !c.positional_found ? 0 : 1;
}

int cmd_member(Out& o, const std::string& path, const std::string& u, const std::string& v) {
  auto A = load_automaton(path);
  UPWord w{parse_word(A, u), parse_word(A, v)};
  bool in = up_membership(A, w);
  o.raw(in ? "accepted" : "rejected");
  o.j["word"] = upword_json(A, w);
  o.j["verdict"] = in ? "accepted" : "rejected";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positionality analysis for parity automata"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--limit", g.limit, "bound on brute-force strategy enumeration");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string in, in2, out, method = "both", cert;
  int n = 2, k = 0, parity = -1;
  GadgetArgs ga;
  std::string u, v;

  auto* validate_c = app.add_subcommand("validate", "parse and check a .dpa or .sig file");
  validate_c->add_option("file", in)->required();

  auto* normalize_c = app.add_subcommand("normalize", "rewrite priorities into normal form");
  normalize_c->add_option("input", in)->required();
  normalize_c->add_option("-o", out)->required();

  auto* residuals_c = app.add_subcommand("residuals", "residual preorder and progress consistency");
  residuals_c->add_option("file", in)->required();

  auto* positional_c = app.add_subcommand("positional", "decide positionality");
  positional_c->add_option("file", in)->required();
  positional_c->add_option("--method", method)->check(CLI::IsMember({"signature", "completion", "both"}));
  positional_c->add_option("--cert-out", cert, "write the certificate here");

  auto* bipositional_c = app.add_subcommand("bipositional", "decide bipositionality");
  bipositional_c->add_option("file", in)->required();
  bipositional_c->add_option("--method", method)->check(CLI::IsMember({"signature", "completion", "both"}));

  std::string complete_method = "signature";
  auto* complete_c = app.add_subcommand("complete", "emit an eps-completion");
  complete_c->add_option("input", in)->required();
  complete_c->add_option("-o", out)->required();
  complete_c->add_option("--method", complete_method)->check(CLI::IsMember({"signature", "completion"}));

  auto* signature_c = app.add_subcommand("signature", "emit a signature automaton");
  signature_c->add_option("input", in)->required();
  signature_c->add_option("-o", out)->required();

  auto* ugraph_c = app.add_subcommand("ugraph", "build a truncated universal graph");
  ugraph_c->add_option("input", in, ".dpa or .sig input");
  ugraph_c->add_option("--parity", parity, "build U_Par for this even d instead");
  ugraph_c->add_option("-n", n, "ordinal bound")->required();
  ugraph_c->add_option("-o", out)->required();
  ugraph_c->add_option("--check-universality", k, "graph size bound");

  auto* solve_c = app.add_subcommand("solve", "solve a game");
  solve_c->add_option("arena", in)->required();
  solve_c->add_option("objective", in2)->required();

  auto* oracle_c = app.add_subcommand("oracle", "brute-force positional strategies");
  oracle_c->add_option("arena", in)->required();
  oracle_c->add_option("objective", in2)->required();

  auto* gadget_c = app.add_subcommand("gadget", "emit a witness arena");
  gadget_c->add_option("kind", ga.kind)->required()->check(CLI::IsMember({"residual", "progress", "two-loops", "completion"}));
  gadget_c->add_option("input", ga.in)->required();
  gadget_c->add_option("-o", ga.out)->required();
  gadget_c->add_option("--q", ga.q);
  gadget_c->add_option("--p,--q2", ga.p);
  gadget_c->add_option("--x", ga.x);
  gadget_c->add_option("--w1", ga.w1, "u | v");
  gadget_c->add_option("--w2", ga.w2, "u | v");
  gadget_c->add_option("--u", ga.u);
  gadget_c->add_option("--w", ga.w);
  gadget_c->add_option("--u0", ga.u0);
  gadget_c->add_option("--l1", ga.l1);
  gadget_c->add_option("--l2", ga.l2);
  gadget_c->add_flag("!--no-check", ga.check, "skip solving the emitted arena");

  auto* member_c = app.add_subcommand("member", "ultimately periodic word membership");
  member_c->add_option("file", in)->required();
  member_c->add_option("--u", u)->required();
  member_c->add_option("--v", v)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Out o;
  o.as_json = g.format == "json";
  int rc = 0;
  try {
    if (*validate_c) rc = cmd_validate(o, in);
    else if (*normalize_c) rc = cmd_normalize(o, in, out);
    else if (*residuals_c) rc = cmd_residuals(o, in);
    else if (*positional_c) rc = cmd_positional(o, in, method, cert);
    else if (*bipositional_c) rc = cmd_bipositional(o, in, method);
    else if (*complete_c) rc = cmd_complete(o, in, out, complete_method);
    else if (*signature_c) rc = cmd_signature(o, in, out);
    else if (*ugraph_c) {
      if (parity < 0 && in.empty()) throw Error("ugraph needs an input file or --parity");
      rc = cmd_ugraph(o, in, parity, n, out, k, g);
    } else if (*solve_c) rc = cmd_solve(o, in, in2);
    else if (*oracle_c) rc = cmd_oracle(o, in, in2, g);
    else if (*gadget_c) rc = cmd_gadget(o, ga, g);
    else if (*member_c) rc = cmd_member(o, in, u, v);
  } catch (const std::exception& e) {
    if (o.as_json) std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  o.flush();
  return rc;
}
