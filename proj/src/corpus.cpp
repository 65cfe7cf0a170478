#include "nsplab/corpus.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "nsplab/translations.hpp"
#include "nsplab/type.hpp"

namespace nsplab {
namespace corpus {

namespace {

// Plus for the pure PCF corpus (no byval): the usual Y-unfolded recursion
// on the first argument, which terminates on numerals.
TermPtr pcf_plus() {
  TypePtr n2 = ty_arrow(ty_nat(), ty_arrow(ty_nat(), ty_nat()));
  TermPtr p = mk_var("p", n2);
  TermPtr a = mk_var("a", ty_nat());
  TermPtr b = mk_var("b", ty_nat());
  TermPtr body = mk_apps(
      mk_ifzero(),
      {a, b,
       mk_app(mk_suc(),
              mk_apps(p, {mk_app(mk_pre(), a), b}))});
  return mk_app(mk_Y(n2),
                mk_lam("p", n2, mk_lam("a", ty_nat(), mk_lam("b", ty_nat(), body))));
}

struct Gen {
  std::mt19937_64 rng;
  LangTag tag;
  std::vector<std::string> scope;  // nat variables in scope
  int counter = 0;

  // Cached closed helper programs (tag-dependent arithmetic).
  TermPtr plus, monus;

  explicit Gen(const LangTag& t, unsigned long long seed) : rng(seed), tag(t) {
    switch (tag.base) {
      case LangTag::PCF:
      case LangTag::PCF_byval:
        plus = pcf_plus();
        break;
      case LangTag::T:
      case LangTag::T_min:
        plus = plus_t();
        monus = monus_t();
        break;
      case LangTag::W:
        plus = plus_w();
        monus = monus_w();
        break;
      default:
        break;  // B: pure arithmetic constants only
    }
  }

  long long pick(long long n) { return static_cast<long long>(rng() % n); }

  TermPtr numeral() { return mk_num(Nat(static_cast<long>(pick(9)))); }

  std::string fresh() { return "v" + std::to_string(counter++); }

  TermPtr variable() {
    return mk_var(scope[static_cast<std::size_t>(pick(
                      static_cast<long long>(scope.size())))],
                  ty_nat());
  }

  // A closed diverging program of the language, or null for the total ones.
  TermPtr diverger() {
    switch (tag.base) {
      case LangTag::PCF:
      case LangTag::PCF_byval:
        return mk_app(mk_Y(ty_nat()), mk_lam("x", ty_nat(), mk_var("x", ty_nat())));
      case LangTag::T_min:
        return mk_apps(mk_min(),
                       {mk_lam("x", ty_nat(), mk_num(1)), mk_num(0)});
      default:
        // B and T are total; a W spin accumulates state redexes without
        // bound under call-by-name, so the W corpus stays terminating.
        return nullptr;
    }
  }

  // A terminating loop in the tag's own looping construct, consuming small
  // generated arguments. Null for B.
  TermPtr loop(int depth) {
    long k = static_cast<long>(pick(5));
    switch (tag.base) {
      case LangTag::PCF:
      case LangTag::PCF_byval: {
        // Y-recursion with a structurally decreasing argument.
        TypePtr n1 = ty_arrow(ty_nat(), ty_nat());
        TermPtr f = mk_var("f", n1);
        TermPtr n = mk_var("n", ty_nat());
        TermPtr base = gen(depth - 1);
        TermPtr body = mk_apps(
            mk_ifzero(),
            {n, base,
             mk_app(mk_suc(),
                    mk_app(mk_suc(), mk_app(f, mk_app(mk_pre(), n))))});
        TermPtr fn = mk_app(mk_Y(n1),
                            mk_lam("f", n1, mk_lam("n", ty_nat(), body)));
        return mk_app(fn, small(depth - 1));
      }
      case LangTag::T:
      case LangTag::T_min: {
        // rec X F bound, with F one of a few simple recurrences.
        TermPtr x = mk_var("x", ty_nat());
        TermPtr n = mk_var("n", ty_nat());
        TermPtr body;
        switch (pick(3)) {
          case 0: body = mk_app(mk_suc(), x); break;
          case 1: body = mk_apps(plus, {x, n}); break;
          default: body = mk_apps(mk_ifzero(), {n, mk_app(mk_suc(), x), x});
        }
        TermPtr F = mk_lam("x", ty_nat(), mk_lam("n", ty_nat(), body));
        if (tag.base == LangTag::T_min && pick(2) == 0) {
          // min searching for the zero of a monus ramp: value is exactly k.
          return mk_apps(mk_min(),
                         {mk_lam("x", ty_nat(),
                                 mk_apps(monus, {mk_num(Nat(k)),
                                                 mk_var("x", ty_nat())})),
                          mk_num(0)});
        }
        return mk_apps(mk_rec(ty_nat()), {gen(depth - 1), F, small(depth - 1)});
      }
      case LangTag::W: {
        if (pick(3) == 0) {
          // Product-state countdown: fst runs up while snd runs down.
          TypePtr nn = ty_product(ty_nat(), ty_nat());
          TermPtr p = mk_var("p", nn);
          TermPtr guard =
              mk_lam("p", nn, mk_apps(mk_ifzero(), {mk_snd(p), mk_num(1), mk_num(0)}));
          TermPtr step = mk_lam(
              "p", nn,
              mk_pair(mk_app(mk_suc(), mk_fst(p)), mk_app(mk_pre(), mk_snd(p))));
          TermPtr start = mk_pair(gen(depth - 1), mk_num(Nat(k)));
          return mk_fst(mk_apps(mk_while(nn), {guard, start, step}));
        }
        // Plain nat loop: run x up by 2 until it passes k.
        TermPtr x = mk_var("x", ty_nat());
        TermPtr guard =
            mk_lam("x", ty_nat(), mk_apps(monus, {x, mk_num(Nat(k))}));
        TermPtr step =
            mk_lam("x", ty_nat(), mk_app(mk_suc(), mk_app(mk_suc(), x)));
        return mk_apps(mk_while(ty_nat()), {guard, small(depth - 1), step});
      }
      default:
        return nullptr;
    }
  }

  // A small argument: numeral or scope variable (loop bounds stay tiny).
  TermPtr small(int depth) {
    if (!scope.empty() && pick(3) == 0) return variable();
    (void)depth;
    return numeral();
  }

  TermPtr gen(int depth) {
    if (depth <= 0) {
      if (!scope.empty() && pick(2) == 0) return variable();
      return numeral();
    }
    switch (pick(12)) {
      case 0:
      case 1:
        return numeral();
      case 2:
        if (!scope.empty()) return variable();
        return numeral();
      case 3:
        return mk_app(mk_suc(), gen(depth - 1));
      case 4:
        return mk_app(mk_pre(), gen(depth - 1));
      case 5:
        return mk_apps(mk_ifzero(),
                       {gen(depth - 1), gen(depth - 1), gen(depth - 1)});
      case 6: {  // beta redex with the bound variable in scope
        std::string v = fresh();
        scope.push_back(v);
        TermPtr body = gen(depth - 1);
        scope.pop_back();
        return mk_app(mk_lam(v, ty_nat(), body), gen(depth - 1));
      }
      case 7:
      case 8:
        if (plus) return mk_apps(plus, {gen(depth - 1), gen(depth - 1)});
        return mk_app(mk_suc(), gen(depth - 1));
      case 9:
        if (monus) return mk_apps(monus, {gen(depth - 1), small(depth - 1)});
        if (plus) return mk_apps(plus, {small(depth - 1), gen(depth - 1)});
        return mk_app(mk_pre(), gen(depth - 1));
      case 10:
        if (tag.base == LangTag::PCF_byval) {
          // byval^eps_nat forcing a computed argument.
          std::string v = fresh();
          scope.push_back(v);
          TermPtr body = gen(depth - 1);
          scope.pop_back();
          return mk_apps(mk_byval({}, ty_nat()),
                         {mk_lam(v, ty_nat(), body), gen(depth - 1)});
        }
        [[fallthrough]];
      default: {
        TermPtr l = loop(depth);
        if (l) return l;
        return mk_apps(mk_ifzero(),
                       {gen(depth - 1), numeral(), gen(depth - 1)});
      }
    }
  }
};

}  // namespace

std::vector<TermPtr> generate(const LangTag& tag, unsigned long long seed,
                              int size, int depth) {
  switch (tag.base) {
    case LangTag::B:
    case LangTag::PCF:
    case LangTag::PCF_byval:
    case LangTag::T:
    case LangTag::T_min:
    case LangTag::W:
      break;
    default:
      throw std::invalid_argument("corpus generation supports b, pcf, "
                                  "pcf+byval, t, t+min and w");
  }
  Gen g(tag, seed);
  std::vector<TermPtr> out;
  out.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    TermPtr m;
    if (i % 10 == 9) m = g.diverger();  // partial languages only
    if (!m) m = g.gen(depth);
    if (!is_closed(m) || !type_equal(m->type, ty_nat()) ||
        !in_language(m, tag))
      throw std::logic_error("corpus generator produced a bad term");
    out.push_back(m);
  }
  return out;
}

}  // namespace corpus
}  // namespace nsplab
