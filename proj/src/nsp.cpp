#include "nsplab/nsp.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "nsplab/lang.hpp"
#include "nsplab/translations.hpp"

namespace nsplab {
namespace nsp {

namespace {

bool is_ground_type(const TypePtr& t) { return t->kind == Type::Nat; }

using Cont = std::function<Expr(const Nat&, EvalCtx&)>;
using ContPtr = std::shared_ptr<const Cont>;

Expr map_ground(const Expr& s, const ContPtr& k, EvalCtx& ctx);

}  // namespace

Expr ex_bottom() { return Expr{}; }

Expr ex_value(const Nat& n) {
  Expr e;
  e.kind = Expr::Value;
  e.value = n;
  return e;
}

Expr ex_unresolved() {
  Expr e;
  e.kind = Expr::Unresolved;
  return e;
}

Expr ex_case(std::string head, TypePtr head_type, std::vector<ProcPtr> args,
             BranchesPtr branches) {
  Expr e;
  e.kind = Expr::Case;
  e.head = std::move(head);
  e.head_type = std::move(head_type);
  e.args = std::move(args);
  e.branches = std::move(branches);
  return e;
}

LazyExpr::LazyExpr(std::function<Expr(EvalCtx&)> compute)
    : compute_(std::move(compute)) {}

Expr LazyExpr::force(EvalCtx& ctx) {
  // Oracle-instrumented evaluation changes the meaning of free heads, so it
  // neither reads nor writes the memo.
  if (ctx.oracle == nullptr) {
    std::lock_guard<std::mutex> g(mu_);
    if (memo_) return *memo_;
  }
  if (ctx.steps <= 0 || ctx.rec_left <= 0) return ex_unresolved();
  --ctx.steps;
  --ctx.rec_left;
  Expr r = compute_(ctx);
  ++ctx.rec_left;
  if (r.kind != Expr::Unresolved && ctx.oracle == nullptr) {
    std::lock_guard<std::mutex> g(mu_);
    if (!memo_) memo_ = r;
    return *memo_;
  }
  return r;
}

LazyPtr lz_of(std::function<Expr(EvalCtx&)> compute) {
  return std::make_shared<LazyExpr>(std::move(compute));
}

LazyPtr lz_expr(Expr e) {
  return lz_of([e](EvalCtx&) { return e; });
}

LazyPtr lz_value(const Nat& n) { return lz_expr(ex_value(n)); }
LazyPtr lz_bottom() { return lz_expr(ex_bottom()); }

LazyPtr lz_case(std::string head, TypePtr head_type, std::vector<ProcPtr> args,
                BranchesPtr branches) {
  return lz_expr(ex_case(std::move(head), std::move(head_type), std::move(args),
                         std::move(branches)));
}

Branches::Branches(std::map<Nat, LazyPtr> table,
                   std::function<LazyPtr(const Nat&)> dflt)
    : table_(std::move(table)), default_(std::move(dflt)) {}

LazyPtr Branches::at(const Nat& i) {
  std::lock_guard<std::mutex> g(mu_);
  auto it = table_.find(i);
  if (it != table_.end()) return it->second;
  auto mt = memo_.find(i);
  if (mt != memo_.end()) return mt->second;
  LazyPtr e = default_ ? default_(i) : lz_bottom();
  memo_[i] = e;
  return e;
}

BranchesPtr br_table(std::map<Nat, LazyPtr> table,
                     std::function<LazyPtr(const Nat&)> dflt) {
  return std::make_shared<Branches>(std::move(table), std::move(dflt));
}

BranchesPtr br_fn(std::function<LazyPtr(const Nat&)> f) {
  return std::make_shared<Branches>(std::map<Nat, LazyPtr>{}, std::move(f));
}

BranchesPtr br_identity() {
  return br_fn([](const Nat& i) { return lz_value(i); });
}

ProcPtr mk_proc(std::vector<std::pair<std::string, TypePtr>> params,
                LazyPtr body) {
  auto p = std::make_shared<Procedure>();
  std::vector<TypePtr> doms;
  for (auto& pr : params) doms.push_back(pr.second);
  p->type = ty_arrows(doms, ty_nat());
  p->params = std::move(params);
  p->body = std::move(body);
  return p;
}

// ---------------------------------------------------------------------------
// Semantic values

SemVal sem_ground(LazyPtr e) {
  SemVal v;
  v.type = ty_nat();
  v.ground = std::move(e);
  return v;
}

SemVal sem_num(const Nat& n) { return sem_ground(lz_value(n)); }
SemVal sem_bottom_nat() { return sem_ground(lz_bottom()); }

SemVal sem_fun(TypePtr type, std::function<SemVal(const SemVal&)> fn) {
  if (type->kind != Type::Arrow)
    throw TypeError("sem_fun: type is not an arrow");
  SemVal v;
  v.type = std::move(type);
  v.fn = std::move(fn);
  return v;
}

SemVal apply_sem(const SemVal& f, const SemVal& a) {
  if (!f.fn || f.type->kind != Type::Arrow)
    throw TypeError("apply_sem: not a function value");
  if (!type_equal(f.type->left, a.type))
    throw TypeError("apply_sem: argument type mismatch: expected " +
                    show_type(f.type->left) + ", got " + show_type(a.type));
  return f.fn(a);
}

SemVal apply_sem(SemVal f, const std::vector<SemVal>& args) {
  for (const auto& a : args) f = apply_sem(f, a);
  return f;
}

namespace {

Expr map_ground(const Expr& s, const ContPtr& k, EvalCtx& ctx) {
  if (ctx.steps <= 0) return ex_unresolved();
  --ctx.steps;
  switch (s.kind) {
    case Expr::Bottom:
      return ex_bottom();
    case Expr::Unresolved:
      return ex_unresolved();
    case Expr::Value:
      return (*k)(s.value, ctx);
    case Expr::Case: {
      // case-of-case: push the continuation into every branch.
      BranchesPtr inner = s.branches;
      auto wrapped = br_fn([inner, k](const Nat& i) {
        return lz_of([inner, k, i](EvalCtx& c) {
          Expr e = inner->at(i)->force(c);
          return map_ground(e, k, c);
        });
      });
      return ex_case(s.head, s.head_type, s.args, wrapped);
    }
  }
  return ex_bottom();
}

SemVal reflect_partial(const std::string& name, const TypePtr& head_type,
                       const TypePtr& remaining, std::vector<SemVal> args) {
  if (is_ground_type(remaining)) {
    return sem_ground(lz_of([name, head_type, args](EvalCtx& ctx) -> Expr {
      if (ctx.oracle) {
        auto r = (*ctx.oracle)(name, args);
        if (r) return ex_value(*r);
      }
      std::vector<ProcPtr> pargs;
      pargs.reserve(args.size());
      for (const auto& a : args) pargs.push_back(readback(a));
      return ex_case(name, head_type, std::move(pargs), br_identity());
    }));
  }
  TypePtr rest = remaining;
  return sem_fun(remaining,
                 [name, head_type, rest, args](const SemVal& a) {
                   auto args2 = args;
                   args2.push_back(a);
                   return reflect_partial(name, head_type, rest->right,
                                          std::move(args2));
                 });
}

}  // namespace

SemVal reflect(const std::string& name, const TypePtr& type) {
  return reflect_partial(name, type, type, {});
}

ProcPtr readback(const SemVal& v) {
  std::vector<TypePtr> argtys = arrow_args(v.type);
  std::vector<std::pair<std::string, TypePtr>> params;
  params.reserve(argtys.size());
  for (const auto& t : argtys) params.emplace_back(fresh_name("z"), t);
  SemVal vc = v;
  LazyPtr body = lz_of([vc, params](EvalCtx& ctx) -> Expr {
    SemVal cur = vc;
    for (const auto& pr : params) cur = apply_sem(cur, reflect(pr.first, pr.second));
    return cur.ground->force(ctx);
  });
  auto p = std::make_shared<Procedure>();
  p->params = params;
  p->type = v.type;
  p->body = body;
  p->origin = std::make_shared<SemVal>(v);
  return p;
}

ProcPtr eta_expand(const std::string& name, const TypePtr& type) {
  return readback(reflect(name, type));
}

// ---------------------------------------------------------------------------
// Interpreting syntactic procedures

namespace {

Expr eval_expr(const Expr& e, const Env& env, EvalCtx& ctx);

SemVal proc_sem(const ProcPtr& p, Env env, size_t i) {
  if (i == p->params.size()) {
    LazyPtr body = p->body;
    Env envc = std::move(env);
    return sem_ground(lz_of([body, envc](EvalCtx& ctx) {
      Expr e = body->force(ctx);
      return eval_expr(e, envc, ctx);
    }));
  }
  std::vector<TypePtr> doms;
  for (size_t j = i; j < p->params.size(); ++j) doms.push_back(p->params[j].second);
  TypePtr rest = ty_arrows(doms, ty_nat());
  Env envc = std::move(env);
  return sem_fun(rest, [p, envc, i](const SemVal& a) {
    Env e2 = envc;
    e2[p->params[i].first] = a;
    return proc_sem(p, std::move(e2), i + 1);
  });
}

Expr eval_expr(const Expr& e, const Env& env, EvalCtx& ctx) {
  if (e.kind != Expr::Case) return e;
  if (ctx.steps <= 0) return ex_unresolved();
  --ctx.steps;
  auto it = env.find(e.head);
  if (it == env.end()) {
    // Free head. An oracle may decide the call; otherwise the case node
    // surfaces, with args and branches re-closed over the environment.
    if (ctx.oracle) {
      std::vector<SemVal> sargs;
      sargs.reserve(e.args.size());
      for (const auto& a : e.args) sargs.push_back(tosem(a, env));
      auto r = (*ctx.oracle)(e.head, sargs);
      if (r) {
        Expr b = e.branches->at(*r)->force(ctx);
        return eval_expr(b, env, ctx);
      }
    }
    if (env.empty()) return e;
    std::vector<ProcPtr> args2;
    args2.reserve(e.args.size());
    for (const auto& a : e.args) args2.push_back(readback(tosem(a, env)));
    BranchesPtr inner = e.branches;
    Env envc = env;
    auto br2 = br_fn([inner, envc](const Nat& i) {
      return lz_of([inner, envc, i](EvalCtx& c) {
        return eval_expr(inner->at(i)->force(c), envc, c);
      });
    });
    return ex_case(e.head, e.head_type, std::move(args2), br2);
  }
  SemVal h = it->second;
  for (const auto& a : e.args) h = apply_sem(h, tosem(a, env));
  Expr s = h.ground->force(ctx);
  BranchesPtr inner = e.branches;
  Env envc = env;
  auto k = std::make_shared<const Cont>([inner, envc](const Nat& n, EvalCtx& c) {
    Expr b = inner->at(n)->force(c);
    return eval_expr(b, envc, c);
  });
  return map_ground(s, k, ctx);
}

}  // namespace

SemVal tosem(const ProcPtr& p, const Env& env) {
  if (p->origin && env.empty()) return *p->origin;
  return proc_sem(p, env, 0);
}

ProcPtr apply(const ProcPtr& p, const ProcPtr& q) {
  return readback(apply_sem(tosem(p), tosem(q)));
}

ProcPtr apply(ProcPtr p, const std::vector<ProcPtr>& args) {
  SemVal v = tosem(p);
  for (const auto& a : args) v = apply_sem(v, tosem(a));
  return readback(v);
}

Expr force(const LazyPtr& e, const Budget& b) {
  EvalCtx ctx;
  ctx.steps = b.steps;
  ctx.rec_left = b.recursion;
  return e->force(ctx);
}

Expr force_body(const ProcPtr& p, const Budget& b) {
  if (!p->params.empty())
    throw TypeError("force_body: procedure has parameters");
  return force(p->body, b);
}

std::optional<Nat> ground_value(const ProcPtr& p, const Budget& b) {
  Expr e = force_body(p, b);
  if (e.kind == Expr::Value) return e.value;
  return std::nullopt;
}

Expr force_with_oracle(const SemVal& ground, const Budget& b,
                       const Oracle& oracle) {
  if (!is_ground_type(ground.type))
    throw TypeError("force_with_oracle: value is not ground");
  EvalCtx ctx;
  ctx.steps = b.steps;
  ctx.rec_left = b.recursion;
  ctx.oracle = &oracle;
  return ground.ground->force(ctx);
}

// ---------------------------------------------------------------------------
// Constant denotations

SemVal sem_suc() {
  return sem_fun(ty_arrow(ty_nat(), ty_nat()), [](const SemVal& x) {
    LazyPtr g = x.ground;
    return sem_ground(lz_of([g](EvalCtx& ctx) {
      auto k = std::make_shared<const Cont>(
          [](const Nat& n, EvalCtx&) { return ex_value(n + 1); });
      return map_ground(g->force(ctx), k, ctx);
    }));
  });
}

SemVal sem_pre() {
  return sem_fun(ty_arrow(ty_nat(), ty_nat()), [](const SemVal& x) {
    LazyPtr g = x.ground;
    return sem_ground(lz_of([g](EvalCtx& ctx) {
      auto k = std::make_shared<const Cont>([](const Nat& n, EvalCtx&) {
        return ex_value(n == 0 ? Nat(0) : Nat(n - 1));
      });
      return map_ground(g->force(ctx), k, ctx);
    }));
  });
}

namespace {

SemVal ifz_result(const SemVal& x, const SemVal& y, const SemVal& z,
                  const TypePtr& sigma) {
  if (is_ground_type(sigma)) {
    LazyPtr g = x.ground;
    return sem_ground(lz_of([g, y, z](EvalCtx& ctx) {
      auto k = std::make_shared<const Cont>([y, z](const Nat& n, EvalCtx& c) {
        return (n == 0 ? y : z).ground->force(c);
      });
      return map_ground(g->force(ctx), k, ctx);
    }));
  }
  TypePtr res = sigma->right;
  return sem_fun(sigma, [x, y, z, res](const SemVal& a) {
    return ifz_result(x, apply_sem(y, a), apply_sem(z, a), res);
  });
}

}  // namespace

SemVal sem_ifzero(const TypePtr& sigma) {
  TypePtr t = ty_arrow(ty_nat(), ty_arrow(sigma, ty_arrow(sigma, sigma)));
  return sem_fun(t, [sigma](const SemVal& x) {
    return sem_fun(ty_arrow(sigma, ty_arrow(sigma, sigma)),
                   [x, sigma](const SemVal& y) {
                     return sem_fun(ty_arrow(sigma, sigma),
                                    [x, y, sigma](const SemVal& z) {
                                      return ifz_result(x, y, z, sigma);
                                    });
                   });
  });
}

namespace {

// byval, after f / xs / n have been collected: evaluate n first, then run
// f xs (lambda.n) on the remaining arguments.
SemVal byval_defer(const LazyPtr& nground,
                   const std::function<SemVal(const Nat&)>& app,
                   const TypePtr& tau) {
  if (is_ground_type(tau)) {
    return sem_ground(lz_of([nground, app](EvalCtx& ctx) {
      auto k = std::make_shared<const Cont>([app](const Nat& v, EvalCtx& c) {
        return app(v).ground->force(c);
      });
      return map_ground(nground->force(ctx), k, ctx);
    }));
  }
  TypePtr res = tau->right;
  return sem_fun(tau, [nground, app, res](const SemVal& y) {
    auto app2 = [app, y](const Nat& v) { return apply_sem(app(v), y); };
    return byval_defer(nground, app2, res);
  });
}

using SigPtr = std::shared_ptr<const std::vector<TypePtr>>;

SemVal byval_collect(const SemVal& f, std::vector<SemVal> xs,
                     const SigPtr& sigmas, const TypePtr& tau) {
  if (xs.size() == sigmas->size()) {
    TypePtr t = ty_arrow(ty_nat(), tau);
    return sem_fun(t, [f, xs, tau](const SemVal& n) {
      auto app = [f, xs](const Nat& v) {
        SemVal r = f;
        for (const auto& x : xs) r = apply_sem(r, x);
        return apply_sem(r, sem_num(v));
      };
      return byval_defer(n.ground, app, tau);
    });
  }
  size_t i = xs.size();
  TypePtr t = ty_arrow(ty_nat(), tau);
  for (size_t j = sigmas->size(); j-- > i;) t = ty_arrow((*sigmas)[j], t);
  return sem_fun(t, [f, xs, sigmas, tau](const SemVal& x) {
    auto xs2 = xs;
    xs2.push_back(x);
    return byval_collect(f, std::move(xs2), sigmas, tau);
  });
}

}  // namespace

SemVal sem_byval(const std::vector<TypePtr>& sigmas, const TypePtr& tau) {
  TypePtr inner = ty_arrow(ty_nat(), tau);
  for (size_t j = sigmas.size(); j-- > 0;) inner = ty_arrow(sigmas[j], inner);
  TypePtr whole = ty_arrow(inner, inner);
  auto sig = std::make_shared<const std::vector<TypePtr>>(sigmas);
  return sem_fun(whole, [sig, tau](const SemVal& f) {
    return byval_collect(f, {}, sig, tau);
  });
}

namespace {

using SeqCont = std::shared_ptr<
    const std::function<Expr(const std::vector<Nat>&, EvalCtx&)>>;

Expr seq_eval(const SeqCont& k, const std::vector<SemVal>& args, size_t i,
              std::vector<Nat> acc, EvalCtx& ctx) {
  if (i == args.size()) return (*k)(acc, ctx);
  Expr s = args[i].ground->force(ctx);
  std::vector<SemVal> rest = args;
  auto kk = std::make_shared<const Cont>(
      [k, rest, i, acc](const Nat& n, EvalCtx& c) {
        auto acc2 = acc;
        acc2.push_back(n);
        return seq_eval(k, rest, i + 1, std::move(acc2), c);
      });
  return map_ground(s, kk, ctx);
}

SemVal native_partial(const TypePtr& remaining, const SeqCont& k,
                      std::vector<SemVal> args) {
  if (is_ground_type(remaining)) {
    return sem_ground(lz_of([k, args](EvalCtx& ctx) {
      return seq_eval(k, args, 0, {}, ctx);
    }));
  }
  if (!is_ground_type(remaining->left))
    throw TypeError("sem_native: arguments must be ground");
  TypePtr rest = remaining->right;
  return sem_fun(remaining, [rest, k, args](const SemVal& a) {
    auto args2 = args;
    args2.push_back(a);
    return native_partial(rest, k, std::move(args2));
  });
}

}  // namespace

LazyPtr lz_seq(std::vector<SemVal> args,
               std::function<Expr(const std::vector<Nat>&, EvalCtx&)> k) {
  for (const auto& a : args)
    if (!a.ground) throw TypeError("lz_seq: arguments must be ground");
  auto kp = std::make_shared<
      const std::function<Expr(const std::vector<Nat>&, EvalCtx&)>>(std::move(k));
  return lz_of([kp, args](EvalCtx& ctx) { return seq_eval(kp, args, 0, {}, ctx); });
}

SemVal sem_native(const TypePtr& type,
                  std::function<Nat(const std::vector<Nat>&)> f) {
  auto kp = std::make_shared<
      const std::function<Expr(const std::vector<Nat>&, EvalCtx&)>>(
      [f = std::move(f)](const std::vector<Nat>& ns, EvalCtx&) {
        return ex_value(f(ns));
      });
  return native_partial(type, kp, {});
}

namespace {

SemVal sem_delay(const TypePtr& t, const std::function<SemVal()>& th) {
  if (is_ground_type(t)) {
    return sem_ground(lz_of([th](EvalCtx& ctx) {
      if (ctx.steps <= 0) return ex_unresolved();
      --ctx.steps;
      return th().ground->force(ctx);
    }));
  }
  TypePtr res = t->right;
  return sem_fun(t, [th, res](const SemVal& a) {
    return sem_delay(res, [th, a] { return apply_sem(th(), a); });
  });
}

}  // namespace

SemVal sem_fix(const SemVal& f, const TypePtr& sigma) {
  // Deliberate shared_ptr cycle: the fixed point refers to itself through
  // the cell. The procedure tree it denotes is the infinite nesting
  // F(F(F(...))), produced lazily.
  auto cell = std::make_shared<SemVal>();
  SemVal fc = f;
  *cell = sem_delay(sigma, [fc, cell] { return apply_sem(fc, *cell); });
  return *cell;
}

// ---------------------------------------------------------------------------
// Denotation of PCF+byval terms

namespace {

using AccelPtr = std::shared_ptr<const AccelTable>;

SemVal interp(const TermPtr& m, const Env& env, const AccelPtr& acc);

SemVal const_sem(const Term& c, const AccelPtr& acc) {
  switch (c.ck) {
    case ConstKind::Suc:
      return sem_suc();
    case ConstKind::Pre:
      return sem_pre();
    case ConstKind::Ifzero:
      return sem_ifzero(c.cty ? c.cty : ty_nat());
    case ConstKind::Byval:
      return sem_byval(c.bv_sigmas, c.bv_tau);
    case ConstKind::Y: {
      TypePtr sigma = c.cty;
      return sem_fun(ty_arrow(ty_arrow(sigma, sigma), sigma),
                     [sigma](const SemVal& f) { return sem_fix(f, sigma); });
    }
    // The looping constants denote via their PCF+byval programs, exactly as
    // the induced interpretations of T+min / W / strict variants require.
    case ConstKind::While:
      return interp(While_prog(c.cty), {}, acc);
    case ConstKind::Rec:
      return interp(Rec_prog(c.cty), {}, acc);
    case ConstKind::Min:
      return interp(Min_prog(), {}, acc);
    case ConstKind::RecStr:
      return interp(RecStr_prog(c.cty), {}, acc);
    case ConstKind::WhileStr:
      return interp(WhileStr_prog(c.cty), {}, acc);
  }
  throw TypeError("const_sem: unknown constant");
}

SemVal interp(const TermPtr& m, const Env& env, const AccelPtr& acc) {
  if (acc && !acc->empty() && m->kind != Term::Num && m->kind != Term::Var) {
    auto it = acc->find(canonical_key(m));
    if (it != acc->end() && is_closed(m)) return it->second;
  }
  switch (m->kind) {
    case Term::Var: {
      auto it = env.find(m->name);
      if (it != env.end()) return it->second;
      return reflect(m->name, m->var_type);
    }
    case Term::Lam: {
      TermPtr body = m->a;
      std::string x = m->name;
      Env envc = env;
      AccelPtr accc = acc;
      return sem_fun(m->type, [body, x, envc, accc](const SemVal& a) {
        Env e2 = envc;
        e2[x] = a;
        return interp(body, e2, accc);
      });
    }
    case Term::App:
      return apply_sem(interp(m->a, env, acc), interp(m->b, env, acc));
    case Term::Num:
      return sem_num(m->num);
    case Term::Const:
      return const_sem(*m, acc);
    case Term::PairT:
    case Term::Fst:
    case Term::Snd:
      throw TypeError("denote: product constructs have no NSP denotation");
  }
  throw TypeError("denote: unknown term kind");
}

}  // namespace

SemVal denote_sem(const TermPtr& m, const AccelTable& accel) {
  if (!type_cross_free(m->type))
    throw TypeError("denote: term type mentions products");
  // Product-typed subterms are permitted as long as every one of them is
  // covered by an acceleration entry; interp throws when one is actually
  // reached.
  if (accel.empty() && !term_cross_free(m))
    throw TypeError("denote: term has product types");
  auto acc = std::make_shared<const AccelTable>(accel);
  return interp(m, {}, acc);
}

ProcPtr denote(const TermPtr& m, const AccelTable& accel) {
  SemVal v = denote_sem(m, accel);
  if (is_ground_type(v.type)) {
    auto p = std::make_shared<Procedure>();
    p->type = v.type;
    p->body = v.ground;
    p->origin = std::make_shared<SemVal>(v);
    return p;
  }
  return readback(v);
}

// ---------------------------------------------------------------------------
// Bounded comparisons

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

namespace {

std::vector<Nat> branch_indices(const BranchesPtr& p, const BranchesPtr& q,
                                long long window) {
  std::vector<Nat> idx;
  for (long long i = 0; i < window; ++i) idx.push_back(Nat(static_cast<long>(i)));
  auto add_keys = [&](const BranchesPtr& b) {
    if (!b) return;
    for (const auto& kv : b->explicit_table())
      if (kv.first >= Nat(static_cast<long>(window))) idx.push_back(kv.first);
  };
  add_keys(p);
  add_keys(q);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

struct Renaming {
  std::map<std::string, std::string> fwd;
  std::map<std::string, std::string> bwd;
};

bool heads_match(const std::string& a, const std::string& b, const Renaming& r) {
  auto f = r.fwd.find(a);
  auto g = r.bwd.find(b);
  if (f != r.fwd.end() || g != r.bwd.end())
    return f != r.fwd.end() && g != r.bwd.end() && f->second == b &&
           g->second == a;
  return a == b;
}

enum class CmpMode { Equal, Leq };

Tri cmp_proc(const ProcPtr& p, const ProcPtr& q, int depth, const Budget& b,
             Renaming ren, CmpMode mode);

Tri cmp_expr(const Expr& x, const Expr& y, int depth, const Budget& b,
             const Renaming& ren, CmpMode mode) {
  if (mode == CmpMode::Leq) {
    if (x.kind == Expr::Bottom) return Tri::True;
    if (x.kind == Expr::Unresolved || y.kind == Expr::Unresolved)
      return Tri::Unknown;
  } else {
    if (x.kind == Expr::Unresolved || y.kind == Expr::Unresolved)
      return Tri::Unknown;
    if (x.kind == Expr::Bottom) return y.kind == Expr::Bottom ? Tri::True : Tri::False;
  }
  if (x.kind == Expr::Value)
    return (y.kind == Expr::Value && x.value == y.value) ? Tri::True
                                                         : Tri::False;
  if (x.kind != Expr::Case) return Tri::False;
  if (y.kind != Expr::Case) return Tri::False;
  if (!heads_match(x.head, y.head, ren)) return Tri::False;
  if (x.args.size() != y.args.size()) return Tri::False;
  if (depth <= 0) return Tri::Unknown;
  Tri r = Tri::True;
  for (size_t i = 0; i < x.args.size(); ++i)
    r = tri_and(r, cmp_proc(x.args[i], y.args[i], depth - 1, b, ren, mode));
  if (r == Tri::False) return r;
  for (const Nat& i : branch_indices(x.branches, y.branches, b.branch_window)) {
    EvalCtx cx, cy;
    cx.steps = b.steps;
    cy.steps = b.steps;
    cx.rec_left = b.recursion;
    cy.rec_left = b.recursion;
    cx.rec_left = b.recursion;
    cy.rec_left = b.recursion;
    Expr bx = x.branches->at(i)->force(cx);
    Expr by = y.branches->at(i)->force(cy);
    r = tri_and(r, cmp_expr(bx, by, depth - 1, b, ren, mode));
    if (r == Tri::False) return r;
  }
  return r;
}

Tri cmp_proc(const ProcPtr& p, const ProcPtr& q, int depth, const Budget& b,
             Renaming ren, CmpMode mode) {
  if (p->params.size() != q->params.size()) return Tri::False;
  for (size_t i = 0; i < p->params.size(); ++i) {
    if (!type_equal(p->params[i].second, q->params[i].second)) return Tri::False;
    ren.fwd[p->params[i].first] = q->params[i].first;
    ren.bwd[q->params[i].first] = p->params[i].first;
  }
  EvalCtx cx, cy;
  cx.steps = b.steps;
  cy.steps = b.steps;
  cx.rec_left = b.recursion;
  cy.rec_left = b.recursion;
  Expr x = p->body->force(cx);
  Expr y = q->body->force(cy);
  return cmp_expr(x, y, depth, b, ren, mode);
}

}  // namespace

Tri proc_equal(const ProcPtr& p, const ProcPtr& q, const Budget& b) {
  return cmp_proc(p, q, b.depth, b, {}, CmpMode::Equal);
}

Tri syntactic_leq(const ProcPtr& p, const ProcPtr& q, const Budget& b) {
  return cmp_proc(p, q, b.depth, b, {}, CmpMode::Leq);
}

Tri ext_leq_on_grid(const ProcPtr& p, const ProcPtr& q,
                    const std::vector<std::vector<ProcPtr>>& grid,
                    const Budget& b) {
  Tri r = Tri::True;
  for (const auto& qs : grid) {
    Expr x = force_body(apply(p, qs), b);
    if (x.kind == Expr::Unresolved) {
      r = tri_and(r, Tri::Unknown);
      continue;
    }
    if (x.kind != Expr::Value) continue;  // p undefined here: nothing required
    Expr y = force_body(apply(q, qs), b);
    if (y.kind == Expr::Unresolved) {
      r = tri_and(r, Tri::Unknown);
      continue;
    }
    if (y.kind != Expr::Value || y.value != x.value) return Tri::False;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Left-well-foundedness probe

namespace {

struct ProbeState {
  int bound;
  Budget b;
  long long nodes_left;
  bool found = false;
  int max_depth = 0;
};

void probe_expr(const Expr& e, int d, int explore, ProbeState& st);

void probe_proc(const ProcPtr& p, int d, int explore, ProbeState& st) {
  if (st.found || explore <= 0 || st.nodes_left-- <= 0) return;
  EvalCtx ctx;
  ctx.steps = st.b.steps;
  ctx.rec_left = st.b.recursion;
  probe_expr(p->body->force(ctx), d, explore, st);
}

void probe_expr(const Expr& e, int d, int explore, ProbeState& st) {
  if (st.found || explore <= 0 || st.nodes_left-- <= 0) return;
  if (e.kind != Expr::Case) return;
  int ad = d + 1;  // this application occurrence
  if (ad > st.max_depth) st.max_depth = ad;
  if (ad > st.bound) {
    st.found = true;
    return;
  }
  // Applications inside the arguments are nested within this one.
  for (const auto& a : e.args) probe_proc(a, ad, explore - 1, st);
  // Branch expressions live beside the scrutinee, at the enclosing depth.
  for (const Nat& i : branch_indices(e.branches, nullptr, st.b.branch_window)) {
    if (st.found) return;
    EvalCtx ctx;
    ctx.steps = st.b.steps;
    ctx.rec_left = st.b.recursion;
    probe_expr(e.branches->at(i)->force(ctx), d, explore - 1, st);
  }
}

}  // namespace

LwfResult lwf_probe(const ProcPtr& p, int depth_bound, const Budget& b) {
  ProbeState st;
  st.bound = depth_bound;
  st.b = b;
  st.nodes_left = 200000;
  // Explore deep enough that a chain exceeding the bound can be witnessed.
  int explore = std::max(b.depth, depth_bound + 2);
  probe_proc(p, 0, explore, st);
  LwfResult r;
  r.chain_found = st.found;
  r.max_depth = st.max_depth;
  return r;
}

bool lwf_by_construction(const TermPtr& m) {
  if (!is_closed(m)) return false;
  LangTag tmin{LangTag::T_min, std::nullopt};
  LangTag w{LangTag::W, std::nullopt};
  return !membership_violation(m, tmin).has_value() ||
         !membership_violation(m, w).has_value();
}

// ---------------------------------------------------------------------------
// Printing and JSON export

namespace {

void show_expr(std::ostringstream& out, const Expr& e, int depth,
               const Budget& b);

void show_proc_at(std::ostringstream& out, const ProcPtr& p, int depth,
                  const Budget& b) {
  out << "lambda";
  for (const auto& pr : p->params) out << " " << pr.first;
  out << ". ";
  EvalCtx ctx;
  ctx.steps = b.steps;
  ctx.rec_left = b.recursion;
  show_expr(out, p->body->force(ctx), depth, b);
}

void show_expr(std::ostringstream& out, const Expr& e, int depth,
               const Budget& b) {
  switch (e.kind) {
    case Expr::Bottom:
      out << "bot";
      return;
    case Expr::Unresolved:
      out << "?";
      return;
    case Expr::Value:
      out << nat_str(e.value);
      return;
    case Expr::Case: {
      if (depth <= 0) {
        out << "...";
        return;
      }
      out << "case " << e.head << "(";
      for (size_t i = 0; i < e.args.size(); ++i) {
        if (i) out << ", ";
        show_proc_at(out, e.args[i], depth - 1, b);
      }
      out << ") of (";
      bool first = true;
      for (const Nat& i : branch_indices(e.branches, nullptr, b.branch_window)) {
        EvalCtx ctx;
        ctx.steps = b.steps;
        ctx.rec_left = b.recursion;
        Expr be = e.branches->at(i)->force(ctx);
        if (!first) out << " | ";
        first = false;
        out << nat_str(i) << " => ";
        show_expr(out, be, depth - 1, b);
      }
      out << " | _ => ...)";
      return;
    }
  }
}

nlohmann::json expr_json(const Expr& e, int depth, const Budget& b);

nlohmann::json proc_json(const ProcPtr& p, int depth, const Budget& b) {
  nlohmann::json j;
  nlohmann::json params = nlohmann::json::array();
  for (const auto& pr : p->params) params.push_back(pr.first);
  j["params"] = params;
  EvalCtx ctx;
  ctx.steps = b.steps;
  ctx.rec_left = b.recursion;
  j["body"] = expr_json(p->body->force(ctx), depth, b);
  return j;
}

nlohmann::json expr_json(const Expr& e, int depth, const Budget& b) {
  nlohmann::json j;
  switch (e.kind) {
    case Expr::Bottom:
      j["kind"] = "bottom";
      return j;
    case Expr::Unresolved:
      j["kind"] = "unresolved";
      return j;
    case Expr::Value:
      j["kind"] = "value";
      j["value"] = nat_str(e.value);
      return j;
    case Expr::Case: {
      j["kind"] = "case";
      if (depth <= 0) {
        j["elided"] = true;
        return j;
      }
      nlohmann::json sc;
      sc["head"] = e.head;
      nlohmann::json args = nlohmann::json::array();
      for (const auto& a : e.args) args.push_back(proc_json(a, depth - 1, b));
      sc["args"] = args;
      j["scrutinee"] = sc;
      nlohmann::json br = nlohmann::json::object();
      for (const Nat& i : branch_indices(e.branches, nullptr, b.branch_window)) {
        EvalCtx ctx;
        ctx.steps = b.steps;
        ctx.rec_left = b.recursion;
        br[nat_str(i)] = expr_json(e.branches->at(i)->force(ctx), depth - 1, b);
      }
      j["branches"] = br;
      j["default"] = "elided";
      return j;
    }
  }
  return j;
}

}  // namespace

std::string show_proc(const ProcPtr& p, const Budget& b) {
  std::ostringstream out;
  show_proc_at(out, p, b.depth, b);
  return out.str();
}

std::string proc_to_json(const ProcPtr& p, const Budget& b) {
  return proc_json(p, b.depth, b).dump(2);
}

}  // namespace nsp
}  // namespace nsplab
