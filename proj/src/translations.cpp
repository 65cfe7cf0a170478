#include "nsplab/translations.hpp"

#include <functional>

#include "nsplab/programs.hpp"

namespace nsplab {

namespace {

TypePtr nat_t() { return ty_nat(); }
TypePtr arr(TypePtr a, TypePtr b) { return ty_arrow(std::move(a), std::move(b)); }

// rho = type of rec_sigma, tau_w = type of while_sigma
TypePtr rec_type(const TypePtr& s) {
  return arr(s, arr(arr(s, arr(nat_t(), s)), arr(nat_t(), s)));
}
TypePtr while_type(const TypePtr& s) {
  return arr(arr(s, nat_t()), arr(s, arr(arr(s, s), s)));
}

TermPtr byval_plus(const TypePtr& s) {
  return mk_byval({s, arr(s, arr(nat_t(), s))}, s);
}

}  // namespace

TermPtr While_prog(const TypePtr& s) {
  // Y_tau (\W c x f. ifzero_s (c x) (W c (f x) f) x)
  TypePtr tw = while_type(s);
  std::string W = fresh_name("W"), c = fresh_name("c"), x = fresh_name("x"),
              f = fresh_name("f");
  TermPtr Wv = mk_var(W, tw);
  TermPtr cv = mk_var(c, arr(s, nat_t()));
  TermPtr xv = mk_var(x, s);
  TermPtr fv = mk_var(f, arr(s, s));
  TermPtr body = mk_apps(
      mk_ifzero(s),
      {mk_app(cv, xv), mk_apps(Wv, {cv, mk_app(fv, xv), fv}), xv});
  TermPtr gen = mk_lam(
      W, tw,
      mk_lam(c, cv->type, mk_lam(x, s, mk_lam(f, fv->type, body))));
  return mk_app(mk_Y(tw), gen);
}

TermPtr Rec_prog(const TypePtr& s) {
  // byval+_s (Y_rho (\r x f n. ifzero_s n x
  //   (byval^eps_s (\n'. f ((byval+_s r) x f n') n') (pre n))))
  TypePtr rho = rec_type(s);
  std::string r = fresh_name("r"), x = fresh_name("x"), f = fresh_name("f"),
              n = fresh_name("n"), np = fresh_name("n'");
  TermPtr rv = mk_var(r, rho);
  TermPtr xv = mk_var(x, s);
  TermPtr fv = mk_var(f, arr(s, arr(nat_t(), s)));
  TermPtr nv = mk_var(n, nat_t());
  TermPtr npv = mk_var(np, nat_t());
  TermPtr recur = mk_apps(mk_app(byval_plus(s), rv), {xv, fv, npv});
  TermPtr inner = mk_lam(np, nat_t(), mk_apps(fv, {recur, npv}));
  TermPtr seq = mk_apps(mk_byval({}, s), {inner, mk_app(mk_pre(), nv)});
  TermPtr body = mk_apps(mk_ifzero(s), {nv, xv, seq});
  TermPtr gen = mk_lam(
      r, rho,
      mk_lam(x, s, mk_lam(f, fv->type, mk_lam(n, nat_t(), body))));
  return mk_app(byval_plus(s), mk_app(mk_Y(rho), gen));
}

TermPtr Min_prog() {
  // byval^1_nat (Y_mu (\m f n. ifzero (f n) n ((byval^1_nat m) f (suc n))))
  TypePtr one = arr(nat_t(), nat_t());
  TypePtr mu = arr(one, arr(nat_t(), nat_t()));
  TermPtr bv1 = mk_byval({one}, nat_t());
  std::string m = fresh_name("m"), f = fresh_name("f"), n = fresh_name("n");
  TermPtr mv = mk_var(m, mu);
  TermPtr fv = mk_var(f, one);
  TermPtr nv = mk_var(n, nat_t());
  TermPtr body = mk_apps(
      mk_ifzero(),
      {mk_app(fv, nv), nv,
       mk_apps(mk_app(bv1, mv), {fv, mk_app(mk_suc(), nv)})});
  TermPtr gen =
      mk_lam(m, mu, mk_lam(f, one, mk_lam(n, nat_t(), body)));
  return mk_app(bv1, mk_app(mk_Y(mu), gen));
}

TermPtr RecStr_prog(const TypePtr& s) {
  // As Rec_prog, but each freshly computed state is forced with byval_[s]
  // before f consumes it, mirroring the rec-str rule.
  TypePtr rho = rec_type(s);
  std::string r = fresh_name("r"), x = fresh_name("x"), f = fresh_name("f"),
              n = fresh_name("n"), np = fresh_name("n'"), m = fresh_name("m");
  TermPtr rv = mk_var(r, rho);
  TermPtr xv = mk_var(x, s);
  TermPtr fv = mk_var(f, arr(s, arr(nat_t(), s)));
  TermPtr nv = mk_var(n, nat_t());
  TermPtr npv = mk_var(np, nat_t());
  TermPtr mv = mk_var(m, s);
  TermPtr recur = mk_apps(mk_app(byval_plus(s), rv), {xv, fv, npv});
  TermPtr use = mk_lam(m, s, mk_apps(fv, {mv, npv}));
  TermPtr forced = mk_apps(byval_bracket(s), {use, recur});
  TermPtr inner = mk_lam(np, nat_t(), forced);
  TermPtr seq = mk_apps(mk_byval({}, s), {inner, mk_app(mk_pre(), nv)});
  TermPtr body = mk_apps(mk_ifzero(s), {nv, xv, seq});
  TermPtr gen = mk_lam(
      r, rho,
      mk_lam(x, s, mk_lam(f, fv->type, mk_lam(n, nat_t(), body))));
  return mk_app(byval_plus(s), mk_app(mk_Y(rho), gen));
}

TermPtr WhileStr_prog(const TypePtr& s) {
  // Y_tau (\W c x f. byval_[s] (\v. ifzero_s (c v) (W c (f v) f) v) x)
  TypePtr tw = while_type(s);
  std::string W = fresh_name("W"), c = fresh_name("c"), x = fresh_name("x"),
              f = fresh_name("f"), v = fresh_name("v");
  TermPtr Wv = mk_var(W, tw);
  TermPtr cv = mk_var(c, arr(s, nat_t()));
  TermPtr xv = mk_var(x, s);
  TermPtr fv = mk_var(f, arr(s, s));
  TermPtr vv = mk_var(v, s);
  TermPtr inner = mk_apps(
      mk_ifzero(s),
      {mk_app(cv, vv), mk_apps(Wv, {cv, mk_app(fv, vv), fv}), vv});
  TermPtr body =
      mk_apps(byval_bracket(s), {mk_lam(v, s, inner), xv});
  TermPtr gen = mk_lam(
      W, tw,
      mk_lam(c, cv->type, mk_lam(x, s, mk_lam(f, fv->type, body))));
  return mk_app(mk_Y(tw), gen);
}

namespace {

// while_{nat*nat}-based a (+/-') b: iterate step on (a, b) while b != 0.
TermPtr arith_w(bool plus) {
  TypePtr nn = ty_product(nat_t(), nat_t());
  std::string a = fresh_name("a"), b = fresh_name("b"), p = fresh_name("p");
  TermPtr av = mk_var(a, nat_t());
  TermPtr bv = mk_var(b, nat_t());
  TermPtr pv = mk_var(p, nn);
  TermPtr guard = mk_lam(
      p, nn, mk_apps(mk_ifzero(), {mk_snd(pv), mk_num(1), mk_num(0)}));
  TermPtr first = mk_app(plus ? mk_suc() : mk_pre(), mk_fst(pv));
  TermPtr stepf =
      mk_lam(p, nn, mk_pair(first, mk_app(mk_pre(), mk_snd(pv))));
  TermPtr loop =
      mk_apps(mk_while(nn), {guard, mk_pair(av, bv), stepf});
  return mk_lam(a, nat_t(), mk_lam(b, nat_t(), mk_fst(loop)));
}

TermPtr arith_t(bool plus) {
  std::string a = fresh_name("a"), b = fresh_name("b"), p = fresh_name("p"),
              i = fresh_name("i");
  TermPtr av = mk_var(a, nat_t());
  TermPtr bv = mk_var(b, nat_t());
  TermPtr pv = mk_var(p, nat_t());
  TermPtr stepf = mk_lam(
      p, nat_t(),
      mk_lam(i, nat_t(), mk_app(plus ? mk_suc() : mk_pre(), pv)));
  TermPtr loop = mk_apps(mk_rec(nat_t()), {av, stepf, bv});
  return mk_lam(a, nat_t(), mk_lam(b, nat_t(), loop));
}

// neq a b = 0 iff a != b (0 doubles as "true" throughout).
TermPtr neq_from(const TermPtr& plus, const TermPtr& monus) {
  std::string a = fresh_name("a"), b = fresh_name("b");
  TermPtr av = mk_var(a, nat_t());
  TermPtr bv = mk_var(b, nat_t());
  TermPtr diff = mk_apps(plus, {mk_apps(monus, {av, bv}),
                                mk_apps(monus, {bv, av})});
  TermPtr body = mk_apps(mk_ifzero(), {diff, mk_num(1), mk_num(0)});
  return mk_lam(a, nat_t(), mk_lam(b, nat_t(), body));
}

}  // namespace

TermPtr plus_w() { return arith_w(true); }
TermPtr monus_w() { return arith_w(false); }
TermPtr neq_w() { return neq_from(plus_w(), monus_w()); }
TermPtr plus_t() { return arith_t(true); }
TermPtr monus_t() { return arith_t(false); }
TermPtr neq_t() { return neq_from(plus_t(), monus_t()); }

TermPtr RecP_prog(const TypePtr& s) {
  // \x f n. snd (while_{nat*s} (\p. fst p != n) (0, x)
  //                            (\p. (suc (fst p), f (snd p) (fst p))))
  TypePtr ns = ty_product(nat_t(), s);
  std::string x = fresh_name("x"), f = fresh_name("f"), n = fresh_name("n"),
              p = fresh_name("p");
  TermPtr xv = mk_var(x, s);
  TermPtr fv = mk_var(f, arr(s, arr(nat_t(), s)));
  TermPtr nv = mk_var(n, nat_t());
  TermPtr pv = mk_var(p, ns);
  TermPtr guard = mk_lam(p, ns, mk_apps(neq_w(), {mk_fst(pv), nv}));
  TermPtr stepf = mk_lam(
      p, ns,
      mk_pair(mk_app(mk_suc(), mk_fst(pv)),
              mk_apps(fv, {mk_snd(pv), mk_fst(pv)})));
  TermPtr loop = mk_apps(mk_while(ns),
                         {guard, mk_pair(mk_num(0), xv), stepf});
  return mk_lam(
      x, s, mk_lam(f, fv->type, mk_lam(n, nat_t(), mk_snd(loop))));
}

TermPtr MinP_prog() {
  // \f n. while_nat (\n'. f n' != 0) n suc
  TypePtr one = arr(nat_t(), nat_t());
  std::string f = fresh_name("f"), n = fresh_name("n"), np = fresh_name("n'");
  TermPtr fv = mk_var(f, one);
  TermPtr nv = mk_var(n, nat_t());
  TermPtr npv = mk_var(np, nat_t());
  TermPtr guard =
      mk_lam(np, nat_t(), mk_apps(neq_w(), {mk_app(fv, npv), mk_num(0)}));
  TermPtr loop = mk_apps(mk_while(nat_t()), {guard, nv, mk_suc()});
  return mk_lam(f, one, mk_lam(n, nat_t(), loop));
}

TermPtr WhileP_prog(const TypePtr& s) {
  // \c x f. rec_s x (\x' n. f x')
  //           (min (\n. c (rec_s x (\x' m. f x') n) != 0) 0)
  std::string c = fresh_name("c"), x = fresh_name("x"), f = fresh_name("f"),
              xp = fresh_name("x'"), n = fresh_name("n"), m = fresh_name("m");
  TermPtr cv = mk_var(c, arr(s, nat_t()));
  TermPtr xv = mk_var(x, s);
  TermPtr fv = mk_var(f, arr(s, s));
  TermPtr xpv = mk_var(xp, s);
  TermPtr nv = mk_var(n, nat_t());
  auto iter = [&](const std::string& idx) {
    TermPtr stepf =
        mk_lam(xp, s, mk_lam(idx, nat_t(), mk_app(fv, xpv)));
    return mk_apps(mk_rec(s), {xv, stepf});
  };
  TermPtr probe = mk_lam(
      n, nat_t(),
      mk_apps(neq_t(), {mk_app(cv, mk_app(iter(m), nv)), mk_num(0)}));
  TermPtr idx = mk_apps(mk_min(), {probe, mk_num(0)});
  TermPtr body = mk_app(iter(n), idx);
  return mk_lam(c, cv->type, mk_lam(x, s, mk_lam(f, fv->type, body)));
}

namespace {

using ConstMap = std::function<TermPtr(const Term&)>;

TermPtr map_constants(const TermPtr& m, const ConstMap& cm) {
  switch (m->kind) {
    case Term::Var:
    case Term::Num:
      return m;
    case Term::Const:
      return cm(*m);
    case Term::Lam:
      return mk_lam(m->name, m->var_type, map_constants(m->a, cm));
    case Term::App:
      return mk_app(map_constants(m->a, cm), map_constants(m->b, cm));
    case Term::PairT:
      return mk_pair(map_constants(m->a, cm), map_constants(m->b, cm));
    case Term::Fst:
      return mk_fst(map_constants(m->a, cm));
    case Term::Snd:
      return mk_snd(map_constants(m->a, cm));
  }
  return m;
}

void require_member(const TermPtr& m, const LangTag& tag, const char* who) {
  if (auto v = membership_violation(m, tag))
    throw TypeError(std::string(who) + ": term not in " + show_lang_tag(tag) +
                    ": " + *v);
}

}  // namespace

TermPtr to_pcf(const TermPtr& m, const LangTag& source) {
  switch (source.base) {
    case LangTag::W:
    case LangTag::T:
    case LangTag::T_min:
    case LangTag::T0_str:
    case LangTag::T0_str_min:
    case LangTag::W0_str:
    case LangTag::B:
      break;
    default:
      throw TypeError("to_pcf: unsupported source language " +
                      show_lang_tag(source));
  }
  require_member(m, source, "to_pcf");
  return map_constants(m, [](const Term& c) -> TermPtr {
    switch (c.ck) {
      case ConstKind::While:
        return While_prog(c.cty);
      case ConstKind::Rec:
        return Rec_prog(c.cty);
      case ConstKind::Min:
        return Min_prog();
      case ConstKind::RecStr:
        return RecStr_prog(c.cty);
      case ConstKind::WhileStr:
        return WhileStr_prog(c.cty);
      default:
        return std::make_shared<Term>(c);
    }
  });
}

TermPtr t_min_to_w(const TermPtr& m) {
  require_member(m, LangTag{LangTag::T_min, std::nullopt}, "t_min_to_w");
  return map_constants(m, [](const Term& c) -> TermPtr {
    switch (c.ck) {
      case ConstKind::Rec:
        return RecP_prog(c.cty);
      case ConstKind::Min:
        return MinP_prog();
      default:
        return std::make_shared<Term>(c);
    }
  });
}

TermPtr w_to_t_min(const TermPtr& m) {
  require_member(m, LangTag{LangTag::W, std::nullopt}, "w_to_t_min");
  return map_constants(m, [](const Term& c) -> TermPtr {
    if (c.ck == ConstKind::While) return WhileP_prog(c.cty);
    return std::make_shared<Term>(c);
  });
}

// ---------------------------------------------------------------------------
// Product elimination
// ---------------------------------------------------------------------------

TypePtr hat_type(const TypePtr& t) {
  switch (t->kind) {
    case Type::Nat:
      return t;
    case Type::Arrow:
      return ty_arrow(hat_type(t->left), hat_type(t->right));
    case Type::Product: {
      auto as = arrow_args(hat_type(t->left));
      auto bs = arrow_args(hat_type(t->right));
      std::vector<TypePtr> all = as;
      all.insert(all.end(), bs.begin(), bs.end());
      return ty_arrow(ty_nat(), ty_arrows(all, ty_nat()));
    }
  }
  return t;
}

namespace {

// Canonical inhabitant \z... . 0 of a cross-free type.
TermPtr canon(const TypePtr& t) {
  TermPtr body = mk_num(0);
  auto args = arrow_args(t);
  std::vector<std::pair<std::string, TypePtr>> binders;
  for (const auto& a : args) binders.emplace_back(fresh_name("z"), a);
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    body = mk_lam(it->first, it->second, body);
  return body;
}

struct PairShape {
  std::vector<TypePtr> as, bs;  // argument lists of hat(left), hat(right)
};

PairShape pair_shape(const TypePtr& prod) {
  return PairShape{arrow_args(hat_type(prod->left)),
                   arrow_args(hat_type(prod->right))};
}

std::vector<TermPtr> fresh_vars(const std::vector<TypePtr>& tys,
                                const char* base,
                                std::vector<std::pair<std::string, TypePtr>>& binders) {
  std::vector<TermPtr> vs;
  for (const auto& t : tys) {
    std::string nm = fresh_name(base);
    binders.emplace_back(nm, t);
    vs.push_back(mk_var(nm, t));
  }
  return vs;
}

TermPtr lams(const std::vector<std::pair<std::string, TypePtr>>& binders,
             TermPtr body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it)
    body = mk_lam(it->first, it->second, std::move(body));
  return body;
}

std::vector<TermPtr> canon_args(const std::vector<TypePtr>& tys) {
  std::vector<TermPtr> vs;
  for (const auto& t : tys) vs.push_back(canon(t));
  return vs;
}

TermPtr elim(const TermPtr& m);

TermPtr elim_const(const Term& c) {
  auto need_pure = [&](const TypePtr& s, const char* who) {
    if (!type_cross_free(s))
      throw TypeError(std::string("eliminate_products: ") + who +
                      " with a product-carrying type parameter " +
                      show_type(s) + " has no cross-free counterpart here");
  };
  switch (c.ck) {
    case ConstKind::Suc:
    case ConstKind::Pre:
    case ConstKind::Min:
      return std::make_shared<Term>(c);
    case ConstKind::Ifzero:
      return mk_ifzero(hat_type(c.cty));
    case ConstKind::Y:
      return mk_Y(hat_type(c.cty));
    case ConstKind::While:
      return mk_while(hat_type(c.cty));
    case ConstKind::Rec:
      return mk_rec(hat_type(c.cty));
    case ConstKind::Byval: {
      std::vector<TypePtr> sig;
      for (const auto& s : c.bv_sigmas) sig.push_back(hat_type(s));
      return mk_byval(std::move(sig), hat_type(c.bv_tau));
    }
    case ConstKind::RecStr:
      need_pure(c.cty, "rec-str");
      return mk_rec_str(c.cty);
    case ConstKind::WhileStr:
      need_pure(c.cty, "while-str");
      return mk_while_str(c.cty);
  }
  throw TypeError("eliminate_products: bad constant");
}

TermPtr elim(const TermPtr& m) {
  switch (m->kind) {
    case Term::Var:
      return mk_var(m->name, hat_type(m->var_type));
    case Term::Num:
      return m;
    case Term::Const:
      return elim_const(*m);
    case Term::Lam:
      return mk_lam(m->name, hat_type(m->var_type), elim(m->a));
    case Term::App:
      return mk_app(elim(m->a), elim(m->b));
    case Term::PairT: {
      PairShape sh = pair_shape(m->type);
      std::vector<std::pair<std::string, TypePtr>> binders;
      std::string n = fresh_name("n");
      binders.emplace_back(n, ty_nat());
      TermPtr nv = mk_var(n, ty_nat());
      auto avs = fresh_vars(sh.as, "a", binders);
      auto bvs = fresh_vars(sh.bs, "b", binders);
      TermPtr left = mk_apps(elim(m->a), avs);
      TermPtr right = mk_apps(elim(m->b), bvs);
      return lams(binders, mk_apps(mk_ifzero(), {nv, left, right}));
    }
    case Term::Fst: {
      PairShape sh = pair_shape(m->a->type);
      std::vector<std::pair<std::string, TypePtr>> binders;
      auto avs = fresh_vars(sh.as, "a", binders);
      std::vector<TermPtr> args{mk_num(0)};
      args.insert(args.end(), avs.begin(), avs.end());
      auto pads = canon_args(sh.bs);
      args.insert(args.end(), pads.begin(), pads.end());
      return lams(binders, mk_apps(elim(m->a), args));
    }
    case Term::Snd: {
      PairShape sh = pair_shape(m->a->type);
      std::vector<std::pair<std::string, TypePtr>> binders;
      auto bvs = fresh_vars(sh.bs, "b", binders);
      std::vector<TermPtr> args{mk_num(1)};
      auto pads = canon_args(sh.as);
      args.insert(args.end(), pads.begin(), pads.end());
      args.insert(args.end(), bvs.begin(), bvs.end());
      return lams(binders, mk_apps(elim(m->a), args));
    }
  }
  return m;
}

}  // namespace

TermPtr enc_term(const TypePtr& t) {
  switch (t->kind) {
    case Type::Nat: {
      std::string x = fresh_name("x");
      return mk_lam(x, ty_nat(), mk_var(x, ty_nat()));
    }
    case Type::Arrow: {
      // \f x^hat(dom). enc_cod (f (dec_dom x))
      std::string f = fresh_name("f"), x = fresh_name("x");
      TypePtr hd = hat_type(t->left);
      TermPtr fv = mk_var(f, t);
      TermPtr xv = mk_var(x, hd);
      TermPtr body = mk_app(enc_term(t->right),
                            mk_app(fv, mk_app(dec_term(t->left), xv)));
      return mk_lam(f, t, mk_lam(x, hd, body));
    }
    case Type::Product: {
      PairShape sh = pair_shape(t);
      std::string p = fresh_name("p");
      TermPtr pv = mk_var(p, t);
      std::vector<std::pair<std::string, TypePtr>> binders;
      std::string n = fresh_name("n");
      binders.emplace_back(n, ty_nat());
      TermPtr nv = mk_var(n, ty_nat());
      auto avs = fresh_vars(sh.as, "a", binders);
      auto bvs = fresh_vars(sh.bs, "b", binders);
      TermPtr left = mk_apps(mk_app(enc_term(t->left), mk_fst(pv)), avs);
      TermPtr right = mk_apps(mk_app(enc_term(t->right), mk_snd(pv)), bvs);
      return mk_lam(p, t,
                    lams(binders, mk_apps(mk_ifzero(), {nv, left, right})));
    }
  }
  throw TypeError("enc_term: bad type");
}

TermPtr dec_term(const TypePtr& t) {
  switch (t->kind) {
    case Type::Nat: {
      std::string x = fresh_name("x");
      return mk_lam(x, ty_nat(), mk_var(x, ty_nat()));
    }
    case Type::Arrow: {
      std::string g = fresh_name("g"), x = fresh_name("x");
      TypePtr ht = hat_type(t);
      TermPtr gv = mk_var(g, ht);
      TermPtr xv = mk_var(x, t->left);
      TermPtr body = mk_app(dec_term(t->right),
                            mk_app(gv, mk_app(enc_term(t->left), xv)));
      return mk_lam(g, ht, mk_lam(x, t->left, body));
    }
    case Type::Product: {
      PairShape sh = pair_shape(t);
      TypePtr ht = hat_type(t);
      std::string q = fresh_name("q");
      TermPtr qv = mk_var(q, ht);
      // first component: \a... . q 0 a... canon(b)...
      std::vector<std::pair<std::string, TypePtr>> ab;
      auto avs = fresh_vars(sh.as, "a", ab);
      std::vector<TermPtr> args0{mk_num(0)};
      args0.insert(args0.end(), avs.begin(), avs.end());
      auto padb = canon_args(sh.bs);
      args0.insert(args0.end(), padb.begin(), padb.end());
      TermPtr c0 = lams(ab, mk_apps(qv, args0));
      std::vector<std::pair<std::string, TypePtr>> bb;
      auto bvs = fresh_vars(sh.bs, "b", bb);
      std::vector<TermPtr> args1{mk_num(1)};
      auto pada = canon_args(sh.as);
      args1.insert(args1.end(), pada.begin(), pada.end());
      args1.insert(args1.end(), bvs.begin(), bvs.end());
      TermPtr c1 = lams(bb, mk_apps(qv, args1));
      TermPtr body = mk_pair(mk_app(dec_term(t->left), c0),
                             mk_app(dec_term(t->right), c1));
      return mk_lam(q, ht, body);
    }
  }
  throw TypeError("dec_term: bad type");
}

TermPtr eliminate_products(const TermPtr& m) {
  if (!is_closed(m))
    throw TypeError("eliminate_products: term must be closed");
  if (!type_cross_free(m->type))
    throw TypeError("eliminate_products: target type contains a product: " +
                    show_type(m->type));
  return elim(m);
}

}  // namespace nsplab
