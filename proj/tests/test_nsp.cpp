#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsplab/nsp.hpp"
#include "nsplab/parser.hpp"
#include "nsplab/reduction.hpp"
#include "nsplab/translations.hpp"

using namespace nsplab;
using namespace nsplab::nsp;

namespace {

ProcPtr num_proc(const Nat& n) { return mk_proc({}, lz_value(n)); }
ProcPtr bot_proc() { return mk_proc({}, lz_bottom()); }

Nat must_value(const ProcPtr& p, const Budget& b = {}) {
  auto v = ground_value(p, b);
  REQUIRE(v.has_value());
  return *v;
}

// Sequence codes, as used by the worked separation objects.
Nat seq1(const Nat& i) { return cantor_pair(0, i) + 1; }  // code of <i>

}  // namespace

TEST_CASE("head reduction: case of value, bottom, beta") {
  // p = lambda x. case x() of (i => i+1); case-of-n selects the branch.
  ProcPtr p = mk_proc({{"x", ty_nat()}},
                      lz_case("x", ty_nat(), {},
                              br_fn([](const Nat& i) { return lz_value(i + 1); })));
  CHECK(must_value(nsp::apply(p, num_proc(2))) == 3);
  // case-of-bot is proven bottom, not unresolved.
  Expr e = force_body(nsp::apply(p, bot_proc()), Budget{});
  CHECK(e.kind == Expr::Bottom);
  // (lambda x. case x() of i => i)(lambda.5) -> 5.
  ProcPtr idp = mk_proc({{"x", ty_nat()}},
                        lz_case("x", ty_nat(), {}, br_identity()));
  CHECK(must_value(nsp::apply(idp, num_proc(5))) == 5);
}

TEST_CASE("constant trees: suc, pre, ifzero") {
  CHECK(must_value(nsp::apply(denote(parse_term("suc")), num_proc(41))) == 42);
  CHECK(must_value(nsp::apply(denote(parse_term("pre")), num_proc(0))) == 0);
  CHECK(must_value(nsp::apply(denote(parse_term("pre")), num_proc(9))) == 8);

  // ifzero's tree: case x() of (0 => case y() of j=>j | i+1 => case z() of j=>j).
  ProcPtr ifz = denote(parse_term("ifzero"));
  REQUIRE(ifz->params.size() == 3);
  Budget b;
  Expr body = force(ifz->body, b);
  REQUIRE(body.kind == Expr::Case);
  CHECK(body.head == ifz->params[0].first);
  EvalCtx c0{b.steps, nullptr};
  Expr b0 = body.branches->at(0)->force(c0);
  REQUIRE(b0.kind == Expr::Case);
  CHECK(b0.head == ifz->params[1].first);
  EvalCtx c1{b.steps, nullptr};
  Expr b0j = b0.branches->at(7)->force(c1);
  REQUIRE(b0j.kind == Expr::Value);
  CHECK(b0j.value == 7);
  EvalCtx c2{b.steps, nullptr};
  Expr b3 = body.branches->at(3)->force(c2);
  REQUIRE(b3.kind == Expr::Case);
  CHECK(b3.head == ifz->params[2].first);
}

TEST_CASE("eta expansion") {
  // x^(nat eta) = lambda. case x() of i => i.
  ProcPtr xn = eta_expand("x", ty_nat());
  CHECK(xn->params.empty());
  Expr e = force(xn->body, Budget{});
  REQUIRE(e.kind == Expr::Case);
  CHECK(e.head == "x");
  CHECK(e.args.empty());
  EvalCtx c{1000, nullptr};
  CHECK(e.branches->at(5)->force(c).value == 5);

  // x^(1 eta) = lambda z. case x(z^(nat eta)) of i => i.
  ProcPtr x1 = eta_expand("x", parse_type("(-> nat nat)"));
  REQUIRE(x1->params.size() == 1);
  Expr e1 = force(x1->body, Budget{});
  REQUIRE(e1.kind == Expr::Case);
  CHECK(e1.head == "x");
  REQUIRE(e1.args.size() == 1);
  Expr inner = force(e1.args[0]->body, Budget{});
  REQUIRE(inner.kind == Expr::Case);
  CHECK(inner.head == x1->params[0].first);
}

TEST_CASE("application examples") {
  // p = lambda x. case x() of (i => 2i), q = lambda.3 -> lambda.6
  ProcPtr p = mk_proc({{"x", ty_nat()}},
                      lz_case("x", ty_nat(), {},
                              br_fn([](const Nat& i) { return lz_value(2 * i); })));
  CHECK(must_value(nsp::apply(p, num_proc(3))) == 6);
  // lambda x. bot applied to anything stays bottom.
  ProcPtr pb = mk_proc({{"x", ty_nat()}}, lz_bottom());
  CHECK(force_body(nsp::apply(pb, num_proc(3)), Budget{}).kind == Expr::Bottom);
}

TEST_CASE("denotation basics and numerals") {
  CHECK(must_value(denote(parse_term("((lam (x nat) x) 5)"))) == 5);
  CHECK(must_value(denote(parse_term("(suc (suc 3))"))) == 5);
  CHECK(must_value(denote(parse_term("(ifzero 0 7 9)"))) == 7);
  CHECK(must_value(denote(parse_term("(ifzero 2 7 9)"))) == 9);
}

TEST_CASE("Y denotes the non-LWF fixed point") {
  ProcPtr d = denote(parse_term("((Y nat) (lam (x nat) x))"));
  CHECK(force_body(d, Budget{1000, 32, 64}).kind == Expr::Unresolved);
  CHECK(force_body(d, Budget{100000, 32, 64}).kind == Expr::Unresolved);

  // Y's own tree: nested applications of F without end.
  ProcPtr y = denote(parse_term("(Y nat)"));
  LwfResult r = lwf_probe(y, 5, Budget{10000, 16, 4});
  CHECK(r.chain_found);
}

TEST_CASE("byval forces its nat argument in the tree") {
  CHECK(must_value(denote(
            parse_term("((byval () nat) (lam (n nat) 9) 3)"))) == 9);
  ProcPtr d = denote(parse_term(
      "((byval () nat) (lam (n nat) 9) ((Y nat) (lam (x nat) x)))"));
  CHECK(force_body(d, Budget{20000, 32, 64}).kind == Expr::Unresolved);
  // The lazy version ignores the divergent argument.
  CHECK(must_value(denote(parse_term(
            "((lam (n nat) 9) ((Y nat) (lam (x nat) x)))"))) == 9);
}

TEST_CASE("adequacy spot checks against small-step evaluation") {
  LangTag pb = *parse_lang_tag("pcf+byval");
  std::vector<const char*> progs = {
      "((lam (x nat) (suc x)) 4)",
      "(pre (pre 7))",
      "(ifzero (pre 1) 3 8)",
      "((byval (nat) nat) (lam (x nat) (lam (n nat) x)) 3 (suc 4))",
      "((Y (-> nat nat)) (lam (f (-> nat nat)) (lam (n nat) (ifzero n 0 (f (pre n))))) 6)",
  };
  for (const char* s : progs) {
    TermPtr m = parse_term(s);
    StepTrace tr = evaluate(m, pb, 100000);
    REQUIRE(tr.outcome == StepTrace::Value);
    auto v = ground_value(denote(m), Budget{1000000, 32, 64});
    REQUIRE(v.has_value());
    CHECK(*v == tr.value);
  }
  // Translated looping programs agree too.
  LangTag w = *parse_lang_tag("w");
  TermPtr loop = parse_term(
      "((while nat) (lam (x nat) (pre (pre (pre x)))) 0 (lam (x nat) (suc x)))");
  StepTrace tw = evaluate(loop, w);
  REQUIRE(tw.outcome == StepTrace::Value);
  auto vw = ground_value(denote(to_pcf(loop, w)), Budget{1000000, 32, 64});
  REQUIRE(vw.has_value());
  CHECK(*vw == tw.value);
  // Divergence on both sides.
  TermPtr div = parse_term("((Y nat) (lam (x nat) x))");
  CHECK(evaluate(div, pb, 2000).outcome == StepTrace::FuelExhausted);
  CHECK(!ground_value(denote(div), Budget{2000, 32, 64}).has_value());
}

TEST_CASE("denoting T+min and W constants directly") {
  // The induced interpretation: constants go through their PCF programs.
  TermPtr m = parse_term("((rec nat) 5 (lam (x nat) (lam (n nat) (suc (suc x)))) 4)");
  auto v = ground_value(denote(m), Budget{1000000, 32, 64});
  REQUIRE(v.has_value());
  CHECK(*v == 13);
  TermPtr mn = parse_term("(min (lam (x nat) (pre (pre x))) 0)");
  auto v2 = ground_value(denote(mn), Budget{1000000, 32, 64});
  REQUIRE(v2.has_value());
  CHECK(*v2 == 0);
}

TEST_CASE("lambda-eta algebra spot checks") {
  Budget b{10000, 6, 6};
  CHECK(proc_equal(denote(parse_term("(lam (x nat) ((lam (y nat) y) x))")),
                   denote(parse_term("(lam (x nat) x)")), b) == Tri::True);
  CHECK(proc_equal(denote(parse_term("(lam (x nat) (suc x))")),
                   denote(parse_term("suc")), b) == Tri::True);
  CHECK(proc_equal(denote(parse_term("suc")), denote(parse_term("pre")), b) ==
        Tri::False);
}

TEST_CASE("syntactic order") {
  Budget b{10000, 6, 8};
  CHECK(syntactic_leq(bot_proc(), num_proc(7), b) == Tri::True);
  CHECK(syntactic_leq(num_proc(3), num_proc(7), b) == Tri::False);
  CHECK(syntactic_leq(num_proc(7), num_proc(7), b) == Tri::True);

  // The truncation pattern: F0 = lambda f. case f(0) of (i<k => <i> | else bot)
  // sits below Fplus0 = lambda f. case f(0) of (i => <i>).
  int k0 = 3;
  auto mkF = [&](bool truncated) {
    return mk_proc(
        {{"f", parse_type("(-> nat nat)")}},
        lz_case("f", parse_type("(-> nat nat)"), {num_proc(0)},
                br_fn([truncated, k0](const Nat& i) {
                  if (truncated && i >= k0) return lz_bottom();
                  return lz_value(seq1(i));
                })));
  };
  ProcPtr f0 = mkF(true), fplus = mkF(false);
  CHECK(syntactic_leq(f0, fplus, b) == Tri::True);
  CHECK(syntactic_leq(fplus, f0, b) == Tri::False);
}

TEST_CASE("monotonicity of application on explored regions") {
  Budget b{10000, 6, 6};
  ProcPtr p = bot_proc();
  ProcPtr q = num_proc(7);
  REQUIRE(syntactic_leq(p, q, b) == Tri::True);
  for (const char* rs :
       {"(lam (x nat) (ifzero x 1 2))", "(lam (x nat) (suc x))",
        "(lam (x nat) 5)"}) {
    ProcPtr r = denote(parse_term(rs));
    CHECK(syntactic_leq(nsp::apply(r, p), nsp::apply(r, q), b) != Tri::False);
  }
}

TEST_CASE("context lemma spot check") {
  Budget b{20000, 6, 6};
  // p only defined at 0; p' is constantly 0. Extensionally p precedes p'.
  ProcPtr p = mk_proc({{"n", ty_nat()}},
                      lz_case("n", ty_nat(), {},
                              br_table({{Nat(0), lz_value(0)}})));
  ProcPtr pp = mk_proc({{"n", ty_nat()}},
                       lz_case("n", ty_nat(), {},
                               br_fn([](const Nat&) { return lz_value(0); })));
  std::vector<std::vector<ProcPtr>> grid;
  for (int i = 0; i < 4; ++i) grid.push_back({num_proc(i)});
  grid.push_back({bot_proc()});
  REQUIRE(nsp::ext_leq_on_grid(p, pp, grid, b) == Tri::True);
  for (const char* rs :
       {"(lam (f (-> nat nat)) (f 2))", "(lam (f (-> nat nat)) (suc (f 0)))",
        "(lam (f (-> nat nat)) (ifzero (f 0) (f 1) 5))"}) {
    ProcPtr r = denote(parse_term(rs));
    CHECK(syntactic_leq(nsp::apply(r, p), nsp::apply(r, pp), b) != Tri::False);
  }
}

TEST_CASE("lwf probe classifies min as left-bounded and Y as non-LWF") {
  Budget b{20000, 8, 6};
  ProcPtr pmin = denote(parse_term("min"));
  LwfResult rm = lwf_probe(pmin, 1, b);
  CHECK(!rm.chain_found);
  CHECK(rm.max_depth == 1);

  ProcPtr py = denote(parse_term("(Y (-> nat nat))"));
  CHECK(lwf_probe(py, 3, b).chain_found);
  CHECK(lwf_probe(py, 10, b).chain_found);

  // eta-expansion of a level-1 variable nests z() inside x(-).
  ProcPtr x1 = eta_expand("x", parse_type("(-> nat nat)"));
  LwfResult r1 = lwf_probe(x1, 4, b);
  CHECK(!r1.chain_found);
  CHECK(r1.max_depth == 2);

  // Syntactic certificates.
  CHECK(lwf_by_construction(parse_term("(min (lam (x nat) x) 0)")));
  CHECK(lwf_by_construction(parse_term(
      "((while nat) (lam (x nat) x) 3 (lam (x nat) (suc x)))")));
  CHECK(!lwf_by_construction(parse_term("((Y nat) (lam (x nat) x))")));
}

TEST_CASE("unresolved nodes upgrade under a larger budget") {
  TermPtr loop = to_pcf(
      parse_term(
          "((while nat) (lam (x nat) (pre (pre (pre x)))) 0 (lam (x nat) (suc x)))"),
      *parse_lang_tag("w"));
  ProcPtr d = denote(loop);
  Expr small = force_body(d, Budget{40, 32, 64});
  CHECK(small.kind == Expr::Unresolved);
  Expr big = force_body(d, Budget{1000000, 32, 64});
  REQUIRE(big.kind == Expr::Value);
  CHECK(big.value == 4);
  // Memoization coherence: forcing again yields the identical node.
  Expr again = force_body(d, Budget{10, 32, 64});
  REQUIRE(again.kind == Expr::Value);
  CHECK(again.value == 4);
}

TEST_CASE("acceleration table substitutes native procedures") {
  TermPtr helper = parse_term("(lam (x nat) ((lam (y nat) y) x))");
  SemVal native = sem_fun(parse_type("(-> nat nat)"), [](const SemVal&) {
    return sem_num(42);
  });
  AccelTable acc;
  acc[canonical_key(helper)] = native;
  TermPtr use = mk_app(helper, mk_num(7));
  auto v = ground_value(denote(use, acc), Budget{});
  REQUIRE(v.has_value());
  CHECK(*v == 42);
  // Without the table the term means the identity.
  auto v2 = ground_value(denote(use), Budget{});
  REQUIRE(v2.has_value());
  CHECK(*v2 == 7);
}

TEST_CASE("oracle hook intercepts free heads") {
  // Evaluate case F(lambda.1) of i => i+10 under an oracle answering F.
  TermPtr open = mk_app(mk_suc(), mk_app(mk_var("F", parse_type("(-> nat nat)")),
                                         mk_num(1)));
  SemVal s = denote_sem(open);
  std::vector<Nat> seen;
  Oracle orc = [&](const std::string& head,
                   const std::vector<SemVal>& args) -> std::optional<Nat> {
    if (head != "F") return std::nullopt;
    REQUIRE(args.size() == 1);
    auto v = ground_value(readback(args[0]), Budget{});
    REQUIRE(v.has_value());
    seen.push_back(*v);
    return *v + 100;
  };
  Expr e = force_with_oracle(s, Budget{}, orc);
  REQUIRE(e.kind == Expr::Value);
  CHECK(e.value == 102);  // suc(F(1)) with F answering 101
  REQUIRE(seen.size() == 1);
  CHECK(seen[0] == 1);
  // Without the oracle the same node surfaces as a case on F.
  Expr e2 = force(s.ground, Budget{});
  REQUIRE(e2.kind == Expr::Case);
  CHECK(e2.head == "F");
}

TEST_CASE("printer and JSON export") {
  Budget b{1000, 3, 3};
  ProcPtr s = denote(parse_term("suc"));
  std::string txt = show_proc(s, b);
  CHECK(txt.find("case") != std::string::npos);
  CHECK(txt.find("=>") != std::string::npos);
  std::string js = proc_to_json(s, b);
  CHECK(js.find("\"kind\": \"case\"") != std::string::npos);
  CHECK(js.find("\"default\": \"elided\"") != std::string::npos);
  CHECK(proc_to_json(num_proc(4), b).find("\"value\": \"4\"") !=
        std::string::npos);
}
