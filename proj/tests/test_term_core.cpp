#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nsplab/lang.hpp"
#include "nsplab/parser.hpp"
#include "nsplab/term.hpp"

using namespace nsplab;

TEST_CASE("cantor pairing round trip") {
  for (unsigned long n = 0; n < 5000; ++n) {
    Nat a, b;
    cantor_unpair(Nat(n), a, b);
    CHECK(cantor_pair(a, b) == Nat(n));
  }
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(1, 0) == 1);
  CHECK(cantor_pair(0, 1) == 2);
  Nat big = Nat("123456789123456789123456789");
  Nat a, b;
  cantor_unpair(cantor_pair(big, big + 7), a, b);
  CHECK(a == big);
  CHECK(b == big + 7);
}

TEST_CASE("odd part") {
  CHECK(odd_part(Nat(12)) == 3);
  CHECK(odd_part(Nat(7)) == 7);
  CHECK(odd_part(Nat(1)) == 1);
  CHECK(odd_part(Nat(64)) == 1);
}

TEST_CASE("type levels and pure types") {
  CHECK(type_level(ty_nat()) == 0);
  CHECK(type_level(ty_arrow(ty_nat(), ty_nat())) == 1);
  CHECK(type_level(ty_product(ty_nat(), ty_nat())) == 0);
  CHECK(type_level(ty_arrow(ty_arrow(ty_nat(), ty_nat()), ty_nat())) == 2);
  for (int k = 0; k < 6; ++k) CHECK(type_level(pure_type(k)) == k);
  CHECK(type_cross_free(pure_type(3)));
  CHECK(!type_cross_free(ty_product(ty_nat(), ty_nat())));
}

TEST_CASE("parse basic terms") {
  TermPtr id = parse_term("(lam (x nat) x)");
  CHECK(id->kind == Term::Lam);
  CHECK(type_equal(id->type, ty_arrow(ty_nat(), ty_nat())));

  TermPtr s3 = parse_term("(app suc 3)");
  CHECK(s3->kind == Term::App);
  CHECK(s3->a->kind == Term::Const);
  CHECK(s3->b->kind == Term::Num);
  CHECK(s3->b->num == 3);
  CHECK(type_equal(s3->type, ty_nat()));

  // Application sugar is left-associative.
  TermPtr sug = parse_term("(ifzero 0 1 2)");
  CHECK(type_equal(sug->type, ty_nat()));

  // Typed constant forms.
  TermPtr y = parse_term("(Y (-> nat nat))");
  CHECK(y->kind == Term::Const);
  CHECK(y->ck == ConstKind::Y);

  TermPtr bv = parse_term("(byval (nat (-> nat nat)) nat)");
  CHECK(bv->ck == ConstKind::Byval);
  CHECK(bv->bv_sigmas.size() == 2);

  CHECK_THROWS_AS(parse_term("(app 3 4)"), TypeError);
  CHECK_THROWS_AS(parse_term("(lam (x nat) y)"), ParseError);
  CHECK_THROWS_AS(parse_term("(lam (x nat"), ParseError);
  // rec-str only exists at level-0 type parameters.
  CHECK_THROWS_AS(parse_term("(rec-str (-> nat nat))"), TypeError);
}

TEST_CASE("language membership") {
  LangTag t0strmin = *parse_lang_tag("t0str+min");
  // rec (the lazy one) is not in T0^str+min; only rec-str is.
  TermPtr lazyrec = parse_term("(rec nat)");
  CHECK(membership_violation(lazyrec, t0strmin).has_value());
  TermPtr strrec = parse_term("(rec-str nat)");
  CHECK(!membership_violation(strrec, t0strmin).has_value());
  CHECK(!membership_violation(parse_term("min"), t0strmin).has_value());
  CHECK(!membership_violation(parse_term("(byval () nat)"), t0strmin)
             .has_value());
  CHECK(membership_violation(parse_term("(byval (nat) nat)"), t0strmin)
            .has_value());

  LangTag w = *parse_lang_tag("w");
  CHECK(in_language(parse_term("(while nat)"), w));
  CHECK(!in_language(parse_term("(Y nat)"), w));
}

TEST_CASE("level caps") {
  LangTag pcf0 = *parse_lang_tag("pcf@0");
  CHECK(in_language(parse_term("(Y nat)"), pcf0));
  CHECK(!in_language(parse_term("(Y (-> nat nat))"), pcf0));
  LangTag pcf1 = *parse_lang_tag("pcf@1");
  CHECK(in_language(parse_term("(Y (-> nat nat))"), pcf1));

  // Membership is monotone: a B term is in every language.
  TermPtr b = parse_term("(lam (x nat) (suc (pre x)))");
  for (const char* tag : {"b", "pcf", "pcf+byval", "t", "t+min", "w", "t0str",
                          "t0str+min", "w0str"})
    CHECK(in_language(b, *parse_lang_tag(tag)));
}

TEST_CASE("substitution") {
  TermPtr x = mk_var("x", ty_nat());
  CHECK(alpha_equal(substitute(x, "x", ty_nat(), mk_num(3)), mk_num(3)));

  // Capture avoidance: (lam (y nat) x)[x -> y] must rename the binder.
  TermPtr lam = mk_lam("y", ty_nat(), mk_var("x", ty_nat()));
  TermPtr out = substitute(lam, "x", ty_nat(), mk_var("y", ty_nat()));
  CHECK(out->kind == Term::Lam);
  CHECK(out->name != "y");
  CHECK(out->a->kind == Term::Var);
  CHECK(out->a->name == "y");

  TermPtr ifz = parse_term("(lam (x nat) (ifzero x 1 2))");
  TermPtr sub = substitute(ifz->a, "x", ty_nat(), mk_num(0));
  CHECK(alpha_equal(sub, parse_term("(ifzero 0 1 2)")));

  CHECK_THROWS_AS(substitute(x, "x", ty_nat(), parse_term("suc")), TypeError);
}

TEST_CASE("alpha equality and canonical keys") {
  TermPtr a = parse_term("(lam (x nat) (lam (y nat) x))");
  TermPtr b = parse_term("(lam (u nat) (lam (v nat) u))");
  TermPtr c = parse_term("(lam (u nat) (lam (v nat) v))");
  CHECK(alpha_equal(a, b));
  CHECK(!alpha_equal(a, c));
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_key(a) != canonical_key(c));
}

TEST_CASE("print/parse round trip") {
  for (const char* src : {
           "(lam (x nat) x)",
           "(app suc 3)",
           "(lam (f (-> nat nat)) (lam (n nat) (f (f n))))",
           "(pair 4 (lam (x nat) (pre x)))",
           "(fst (pair 4 7))",
           "((while (* nat nat)) (lam (p (* nat nat)) (fst p)))",
           "(min (lam (x nat) 0) 5)",
           "((byval (nat) nat) (lam (x nat) (lam (n nat) x)) 3 4)",
           "((ifzero (-> nat nat)) 0 suc pre)",
       }) {
    TermPtr t = parse_term(src);
    TermPtr t2 = parse_term(show_term(t));
    CHECK(alpha_equal(t, t2));
  }
}

TEST_CASE("long beta-eta normal form") {
  // suc eta-expands.
  TermPtr s = long_beta_eta_normal_form(mk_suc());
  CHECK(alpha_equal(s, parse_term("(lam (x nat) (suc x))")));

  // Beta step then identity.
  TermPtr m = parse_term("((lam (x (-> nat nat)) x) (lam (y nat) (suc y)))");
  CHECK(alpha_equal(long_beta_eta_normal_form(m),
                    parse_term("(lam (y nat) (suc y))")));

  // min eta-expands per its arity; the functional argument occurrence is
  // itself eta-expanded so that every variable is fully applied.
  TermPtr mn = long_beta_eta_normal_form(mk_min());
  CHECK(alpha_equal(
      mn, parse_term(
              "(lam (f (-> nat nat)) (lam (n nat) (min (lam (z nat) (f z)) n)))")));

  // Arguments are eta-expanded hereditarily.
  TermPtr app = parse_term("(min suc 0)");
  CHECK(alpha_equal(long_beta_eta_normal_form(app),
                    parse_term("(min (lam (z nat) (suc z)) 0)")));
}
