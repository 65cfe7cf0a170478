#include "nsplab/term.hpp"

#include <atomic>
#include <map>
#include <optional>
#include <sstream>

namespace nsplab {

namespace {

TermPtr make(Term t) { return std::make_shared<Term>(std::move(t)); }

std::atomic<unsigned long> fresh_counter{0};

}  // namespace

std::string fresh_name(const std::string& base) {
  return base + "%" + std::to_string(fresh_counter.fetch_add(1));
}

TypePtr const_type(const Term& c) {
  auto n = ty_nat();
  switch (c.ck) {
    case ConstKind::Suc:
    case ConstKind::Pre:
      return ty_arrow(n, n);
    case ConstKind::Ifzero:
      return ty_arrow(n, ty_arrow(c.cty, ty_arrow(c.cty, c.cty)));
    case ConstKind::Y:
      return ty_arrow(ty_arrow(c.cty, c.cty), c.cty);
    case ConstKind::While:
    case ConstKind::WhileStr:
      return ty_arrow(ty_arrow(c.cty, n),
                      ty_arrow(c.cty, ty_arrow(ty_arrow(c.cty, c.cty), c.cty)));
    case ConstKind::Rec:
    case ConstKind::RecStr:
      return ty_arrow(c.cty,
                      ty_arrow(ty_arrow(c.cty, ty_arrow(n, c.cty)),
                               ty_arrow(n, c.cty)));
    case ConstKind::Min:
      return ty_arrow(ty_arrow(n, n), ty_arrow(n, n));
    case ConstKind::Byval: {
      TypePtr inner = ty_arrow(n, c.bv_tau);
      for (auto it = c.bv_sigmas.rbegin(); it != c.bv_sigmas.rend(); ++it)
        inner = ty_arrow(*it, inner);
      return ty_arrow(inner, inner);
    }
  }
  throw TypeError("const_type: bad constant");
}

TermPtr mk_var(const std::string& name, TypePtr ty) {
  Term t;
  t.kind = Term::Var;
  t.name = name;
  t.var_type = ty;
  t.type = ty;
  return make(std::move(t));
}

TermPtr mk_lam(const std::string& name, TypePtr ty, TermPtr body) {
  Term t;
  t.kind = Term::Lam;
  t.name = name;
  t.var_type = ty;
  t.type = ty_arrow(ty, body->type);
  t.a = std::move(body);
  return make(std::move(t));
}

TermPtr mk_app(TermPtr fn, TermPtr arg) {
  if (fn->type->kind != Type::Arrow)
    throw TypeError("application of non-function: " + show_type(fn->type));
  if (!type_equal(fn->type->left, arg->type))
    throw TypeError("argument type mismatch: expected " +
                    show_type(fn->type->left) + ", got " +
                    show_type(arg->type));
  Term t;
  t.kind = Term::App;
  t.type = fn->type->right;
  t.a = std::move(fn);
  t.b = std::move(arg);
  return make(std::move(t));
}

TermPtr mk_apps(TermPtr fn, const std::vector<TermPtr>& args) {
  for (const auto& a : args) fn = mk_app(std::move(fn), a);
  return fn;
}

TermPtr mk_pair(TermPtr a, TermPtr b) {
  Term t;
  t.kind = Term::PairT;
  t.type = ty_product(a->type, b->type);
  t.a = std::move(a);
  t.b = std::move(b);
  return make(std::move(t));
}

TermPtr mk_fst(TermPtr p) {
  if (p->type->kind != Type::Product)
    throw TypeError("fst of non-product: " + show_type(p->type));
  Term t;
  t.kind = Term::Fst;
  t.type = p->type->left;
  t.a = std::move(p);
  return make(std::move(t));
}

TermPtr mk_snd(TermPtr p) {
  if (p->type->kind != Type::Product)
    throw TypeError("snd of non-product: " + show_type(p->type));
  Term t;
  t.kind = Term::Snd;
  t.type = p->type->right;
  t.a = std::move(p);
  return make(std::move(t));
}

TermPtr mk_num(Nat n) {
  Term t;
  t.kind = Term::Num;
  t.type = ty_nat();
  t.num = std::move(n);
  return make(std::move(t));
}

namespace {
TermPtr mk_const(ConstKind ck, TypePtr cty = nullptr,
                 std::vector<TypePtr> sigmas = {}, TypePtr tau = nullptr) {
  Term t;
  t.kind = Term::Const;
  t.ck = ck;
  t.cty = std::move(cty);
  t.bv_sigmas = std::move(sigmas);
  t.bv_tau = std::move(tau);
  t.type = const_type(t);
  return make(std::move(t));
}
}  // namespace

TermPtr mk_suc() { return mk_const(ConstKind::Suc); }
TermPtr mk_pre() { return mk_const(ConstKind::Pre); }
TermPtr mk_ifzero(TypePtr sigma) {
  return mk_const(ConstKind::Ifzero, sigma ? sigma : ty_nat());
}
TermPtr mk_Y(TypePtr sigma) { return mk_const(ConstKind::Y, std::move(sigma)); }
TermPtr mk_while(TypePtr sigma) { return mk_const(ConstKind::While, std::move(sigma)); }
TermPtr mk_rec(TypePtr sigma) { return mk_const(ConstKind::Rec, std::move(sigma)); }
TermPtr mk_min() { return mk_const(ConstKind::Min); }
TermPtr mk_byval(std::vector<TypePtr> sigmas, TypePtr tau) {
  return mk_const(ConstKind::Byval, nullptr, std::move(sigmas), std::move(tau));
}
TermPtr mk_rec_str(TypePtr sigma) {
  if (type_level(sigma) != 0)
    throw TypeError("rec-str requires a level-0 type parameter, got " +
                    show_type(sigma));
  return mk_const(ConstKind::RecStr, std::move(sigma));
}
TermPtr mk_while_str(TypePtr sigma) {
  if (type_level(sigma) != 0)
    throw TypeError("while-str requires a level-0 type parameter, got " +
                    show_type(sigma));
  return mk_const(ConstKind::WhileStr, std::move(sigma));
}

namespace {
void collect_free(const TermPtr& m, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (m->kind) {
    case Term::Var:
      if (!bound.count(m->name)) out.insert(m->name);
      return;
    case Term::Lam: {
      bool was = bound.count(m->name) > 0;
      bound.insert(m->name);
      collect_free(m->a, bound, out);
      if (!was) bound.erase(m->name);
      return;
    }
    case Term::App:
    case Term::PairT:
      collect_free(m->a, bound, out);
      collect_free(m->b, bound, out);
      return;
    case Term::Fst:
    case Term::Snd:
      collect_free(m->a, bound, out);
      return;
    default:
      return;
  }
}
}  // namespace

std::set<std::string> free_vars(const TermPtr& m) {
  std::set<std::string> bound, out;
  collect_free(m, bound, out);
  return out;
}

bool is_closed(const TermPtr& m) { return free_vars(m).empty(); }

namespace {
TermPtr subst(const TermPtr& m, const std::string& name, const TermPtr& r,
              const std::set<std::string>& fv_r) {
  switch (m->kind) {
    case Term::Var:
      return m->name == name ? r : m;
    case Term::Lam: {
      if (m->name == name) return m;
      if (fv_r.count(m->name)) {
        // Rename the binder to avoid capture.
        std::string nn = fresh_name(m->name.substr(0, m->name.find('%')));
        TermPtr nv = mk_var(nn, m->var_type);
        std::set<std::string> fv_nv{nn};
        TermPtr body = subst(m->a, m->name, nv, fv_nv);
        return mk_lam(nn, m->var_type, subst(body, name, r, fv_r));
      }
      TermPtr body = subst(m->a, name, r, fv_r);
      return body == m->a ? m : mk_lam(m->name, m->var_type, body);
    }
    case Term::App: {
      TermPtr a = subst(m->a, name, r, fv_r);
      TermPtr b = subst(m->b, name, r, fv_r);
      return (a == m->a && b == m->b) ? m : mk_app(a, b);
    }
    case Term::PairT: {
      TermPtr a = subst(m->a, name, r, fv_r);
      TermPtr b = subst(m->b, name, r, fv_r);
      return (a == m->a && b == m->b) ? m : mk_pair(a, b);
    }
    case Term::Fst: {
      TermPtr a = subst(m->a, name, r, fv_r);
      return a == m->a ? m : mk_fst(a);
    }
    case Term::Snd: {
      TermPtr a = subst(m->a, name, r, fv_r);
      return a == m->a ? m : mk_snd(a);
    }
    default:
      return m;
  }
}
}  // namespace

TermPtr substitute(const TermPtr& body, const std::string& name,
                   const TypePtr& ty, const TermPtr& replacement) {
  if (!type_equal(ty, replacement->type))
    throw TypeError("substitute: replacement type " +
                    show_type(replacement->type) + " does not match binder " +
                    show_type(ty));
  return subst(body, name, replacement, free_vars(replacement));
}

namespace {
bool type_params_equal(const Term& a, const Term& b) {
  if (a.ck != b.ck) return false;
  switch (a.ck) {
    case ConstKind::Suc:
    case ConstKind::Pre:
    case ConstKind::Min:
      return true;
    case ConstKind::Byval: {
      if (a.bv_sigmas.size() != b.bv_sigmas.size()) return false;
      for (size_t i = 0; i < a.bv_sigmas.size(); ++i)
        if (!type_equal(a.bv_sigmas[i], b.bv_sigmas[i])) return false;
      return type_equal(a.bv_tau, b.bv_tau);
    }
    default:
      return type_equal(a.cty, b.cty);
  }
}

bool aeq(const TermPtr& m, const TermPtr& n,
         std::map<std::string, std::string>& ml,
         std::map<std::string, std::string>& nl, int& depth) {
  if (m->kind != n->kind) return false;
  switch (m->kind) {
    case Term::Var: {
      auto im = ml.find(m->name);
      auto in = nl.find(n->name);
      if ((im == ml.end()) != (in == nl.end())) return false;
      if (im == ml.end()) return m->name == n->name;
      return im->second == in->second;
    }
    case Term::Lam: {
      if (!type_equal(m->var_type, n->var_type)) return false;
      std::string tag = "#" + std::to_string(depth++);
      auto om = ml.find(m->name) != ml.end()
                    ? std::optional<std::string>(ml[m->name])
                    : std::nullopt;
      auto on = nl.find(n->name) != nl.end()
                    ? std::optional<std::string>(nl[n->name])
                    : std::nullopt;
      ml[m->name] = tag;
      nl[n->name] = tag;
      bool ok = aeq(m->a, n->a, ml, nl, depth);
      if (om) ml[m->name] = *om; else ml.erase(m->name);
      if (on) nl[n->name] = *on; else nl.erase(n->name);
      return ok;
    }
    case Term::App:
    case Term::PairT:
      return aeq(m->a, n->a, ml, nl, depth) && aeq(m->b, n->b, ml, nl, depth);
    case Term::Fst:
    case Term::Snd:
      return aeq(m->a, n->a, ml, nl, depth);
    case Term::Num:
      return m->num == n->num;
    case Term::Const:
      return type_params_equal(*m, *n);
  }
  return false;
}
}  // namespace

bool alpha_equal(const TermPtr& m, const TermPtr& n) {
  std::map<std::string, std::string> ml, nl;
  int depth = 0;
  return aeq(m, n, ml, nl, depth);
}

namespace {
void ckey(const TermPtr& m, std::map<std::string, int>& env, int depth,
          std::ostringstream& out) {
  switch (m->kind) {
    case Term::Var: {
      auto it = env.find(m->name);
      if (it != env.end())
        out << "b" << (depth - it->second);  // de Bruijn level distance
      else
        out << "f" << m->name;
      out << ";";
      return;
    }
    case Term::Lam: {
      out << "L" << show_type(m->var_type) << ".";
      auto old = env.find(m->name) != env.end()
                     ? std::optional<int>(env[m->name])
                     : std::nullopt;
      env[m->name] = depth + 1;
      ckey(m->a, env, depth + 1, out);
      if (old) env[m->name] = *old; else env.erase(m->name);
      return;
    }
    case Term::App:
      out << "A(";
      ckey(m->a, env, depth, out);
      ckey(m->b, env, depth, out);
      out << ")";
      return;
    case Term::PairT:
      out << "P(";
      ckey(m->a, env, depth, out);
      ckey(m->b, env, depth, out);
      out << ")";
      return;
    case Term::Fst:
      out << "1(";
      ckey(m->a, env, depth, out);
      out << ")";
      return;
    case Term::Snd:
      out << "2(";
      ckey(m->a, env, depth, out);
      out << ")";
      return;
    case Term::Num:
      out << "N" << m->num.get_str() << ";";
      return;
    case Term::Const:
      out << "C" << show_term(m) << ";";
      return;
  }
}
}  // namespace

std::string canonical_key(const TermPtr& m) {
  std::ostringstream out;
  std::map<std::string, int> env;
  ckey(m, env, 0, out);
  return out.str();
}

bool term_cross_free(const TermPtr& m) {
  if (!type_cross_free(m->type)) return false;
  switch (m->kind) {
    case Term::Lam:
      return type_cross_free(m->var_type) && term_cross_free(m->a);
    case Term::App:
    case Term::PairT:
      return term_cross_free(m->a) && term_cross_free(m->b);
    case Term::Fst:
    case Term::Snd:
      return term_cross_free(m->a);
    case Term::Const: {
      switch (m->ck) {
        case ConstKind::Ifzero:
        case ConstKind::Y:
        case ConstKind::While:
        case ConstKind::Rec:
        case ConstKind::RecStr:
        case ConstKind::WhileStr:
          return type_cross_free(m->cty);
        case ConstKind::Byval: {
          for (const auto& s : m->bv_sigmas)
            if (!type_cross_free(s)) return false;
          return type_cross_free(m->bv_tau);
        }
        default:
          return true;
      }
    }
    default:
      return true;
  }
}

std::string show_term(const TermPtr& m) {
  switch (m->kind) {
    case Term::Var:
      return m->name;
    case Term::Lam:
      return "(lam (" + m->name + " " + show_type(m->var_type) + ") " +
             show_term(m->a) + ")";
    case Term::App:
      return "(app " + show_term(m->a) + " " + show_term(m->b) + ")";
    case Term::PairT:
      return "(pair " + show_term(m->a) + " " + show_term(m->b) + ")";
    case Term::Fst:
      return "(fst " + show_term(m->a) + ")";
    case Term::Snd:
      return "(snd " + show_term(m->a) + ")";
    case Term::Num:
      return m->num.get_str();
    case Term::Const:
      switch (m->ck) {
        case ConstKind::Suc:
          return "suc";
        case ConstKind::Pre:
          return "pre";
        case ConstKind::Ifzero:
          return m->cty->kind == Type::Nat ? "ifzero"
                                           : "(ifzero " + show_type(m->cty) + ")";
        case ConstKind::Y:
          return "(Y " + show_type(m->cty) + ")";
        case ConstKind::While:
          return "(while " + show_type(m->cty) + ")";
        case ConstKind::Rec:
          return "(rec " + show_type(m->cty) + ")";
        case ConstKind::Min:
          return "min";
        case ConstKind::Byval: {
          std::string s = "(byval (";
          for (size_t i = 0; i < m->bv_sigmas.size(); ++i) {
            if (i) s += " ";
            s += show_type(m->bv_sigmas[i]);
          }
          s += ") " + show_type(m->bv_tau) + ")";
          return s;
        }
        case ConstKind::RecStr:
          return "(rec-str " + show_type(m->cty) + ")";
        case ConstKind::WhileStr:
          return "(while-str " + show_type(m->cty) + ")";
      }
  }
  return "?";
}

namespace {
// Full beta (and pair-projection) normalization; constants are opaque heads,
// so this is normalization of a simply typed term and terminates.
TermPtr beta_nf(const TermPtr& m) {
  switch (m->kind) {
    case Term::Var:
    case Term::Num:
    case Term::Const:
      return m;
    case Term::Lam: {
      TermPtr body = beta_nf(m->a);
      return body == m->a ? m : mk_lam(m->name, m->var_type, body);
    }
    case Term::App: {
      TermPtr f = beta_nf(m->a);
      TermPtr x = beta_nf(m->b);
      if (f->kind == Term::Lam)
        return beta_nf(substitute(f->a, f->name, f->var_type, x));
      return (f == m->a && x == m->b) ? m : mk_app(f, x);
    }
    case Term::PairT: {
      TermPtr a = beta_nf(m->a);
      TermPtr b = beta_nf(m->b);
      return (a == m->a && b == m->b) ? m : mk_pair(a, b);
    }
    case Term::Fst: {
      TermPtr p = beta_nf(m->a);
      if (p->kind == Term::PairT) return p->a;
      return p == m->a ? m : mk_fst(p);
    }
    case Term::Snd: {
      TermPtr p = beta_nf(m->a);
      if (p->kind == Term::PairT) return p->b;
      return p == m->a ? m : mk_snd(p);
    }
  }
  return m;
}

// Eta-long form of a beta-normal, cross-free term.
TermPtr eta_long(const TermPtr& m) {
  if (m->type->kind == Type::Arrow) {
    if (m->kind == Term::Lam)
      return mk_lam(m->name, m->var_type, eta_long(m->a));
    std::string z = fresh_name("e");
    TermPtr body = mk_app(m, mk_var(z, m->type->left));
    if (m->kind == Term::Lam) body = beta_nf(body);
    return mk_lam(z, m->type->left, eta_long(beta_nf(body)));
  }
  // Ground type: spine h A1 ... An with eta-long arguments.
  std::vector<TermPtr> spine;
  TermPtr h = m;
  while (h->kind == Term::App) {
    spine.push_back(h->b);
    h = h->a;
  }
  TermPtr out = h;
  for (auto it = spine.rbegin(); it != spine.rend(); ++it)
    out = mk_app(out, eta_long(*it));
  return out;
}
}  // namespace

TermPtr long_beta_eta_normal_form(const TermPtr& m) {
  if (!term_cross_free(m))
    throw TypeError("long_beta_eta_normal_form requires a cross-free term");
  return eta_long(beta_nf(m));
}

}  // namespace nsplab
