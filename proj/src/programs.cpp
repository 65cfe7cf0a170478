#include "nsplab/programs.hpp"

namespace nsplab {

TermPtr byval_bracket(const TypePtr& sigma, const TypePtr& rho) {
  if (type_level(sigma) != 0)
    throw TypeError("byval_[sigma] requires level-0 sigma, got " +
                    show_type(sigma));
  if (sigma->kind == Type::Nat) {
    if (rho->kind == Type::Nat) return mk_byval({}, ty_nat());
    std::string f = fresh_name("f"), n = fresh_name("n");
    TermPtr fv = mk_var(f, ty_arrow(ty_nat(), rho));
    TermPtr nv = mk_var(n, ty_nat());
    TermPtr body = mk_apps(mk_ifzero(rho), {nv, mk_app(fv, nv), mk_app(fv, nv)});
    return mk_lam(f, fv->type, mk_lam(n, ty_nat(), body));
  }
  // sigma = s * t
  TypePtr s = sigma->left, t = sigma->right;
  std::string f = fresh_name("f"), x = fresh_name("x"), y = fresh_name("y"),
              z = fresh_name("z");
  TermPtr fv = mk_var(f, ty_arrow(sigma, rho));
  TermPtr xv = mk_var(x, sigma);
  TermPtr yv = mk_var(y, s);
  TermPtr zv = mk_var(z, t);
  TermPtr inner = mk_lam(z, t, mk_app(fv, mk_pair(yv, zv)));
  TermPtr mid = mk_lam(
      y, s, mk_apps(byval_bracket(t, rho), {inner, mk_snd(xv)}));
  TermPtr body = mk_apps(byval_bracket(s, rho), {mid, mk_fst(xv)});
  return mk_lam(f, fv->type, mk_lam(x, sigma, body));
}

TermPtr byval_bracket(const TypePtr& sigma) { return byval_bracket(sigma, sigma); }

}  // namespace nsplab
