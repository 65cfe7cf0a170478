#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nsplab/nat.hpp"
#include "nsplab/type.hpp"

namespace nsplab {

// Constant families. Type-parameterized constants carry their parameters:
//   Ifzero: branch type sigma          nat -> sigma -> sigma -> sigma
//   Y, While, Rec, RecStr, WhileStr: sigma
//   Byval: parameter vector sigmas and result tau
enum class ConstKind {
  Suc,
  Pre,
  Ifzero,
  Y,
  While,
  Rec,
  Min,
  Byval,
  RecStr,
  WhileStr,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum Kind { Var, Lam, App, PairT, Fst, Snd, Num, Const };
  Kind kind;
  TypePtr type;  // type of the whole term, computed on construction

  // Var / Lam binder
  std::string name;
  TypePtr var_type;

  // Lam body = a; App fn = a, arg = b; Pair = (a,b); Fst/Snd = a
  TermPtr a, b;

  // Num
  Nat num;

  // Const
  ConstKind ck = ConstKind::Suc;
  TypePtr cty;                    // sigma parameter (Ifzero/Y/While/Rec/RecStr/WhileStr)
  std::vector<TypePtr> bv_sigmas; // byval parameter vector
  TypePtr bv_tau;                 // byval result type
};

// Smart constructors; each checks well-typedness and throws TypeError.
TermPtr mk_var(const std::string& name, TypePtr ty);
TermPtr mk_lam(const std::string& name, TypePtr ty, TermPtr body);
TermPtr mk_app(TermPtr fn, TermPtr arg);
TermPtr mk_apps(TermPtr fn, const std::vector<TermPtr>& args);
TermPtr mk_pair(TermPtr a, TermPtr b);
TermPtr mk_fst(TermPtr p);
TermPtr mk_snd(TermPtr p);
TermPtr mk_num(Nat n);
TermPtr mk_suc();
TermPtr mk_pre();
TermPtr mk_ifzero(TypePtr sigma = nullptr);  // default: nat branches
TermPtr mk_Y(TypePtr sigma);
TermPtr mk_while(TypePtr sigma);
TermPtr mk_rec(TypePtr sigma);
TermPtr mk_min();
TermPtr mk_byval(std::vector<TypePtr> sigmas, TypePtr tau);
TermPtr mk_rec_str(TypePtr sigma);
TermPtr mk_while_str(TypePtr sigma);

// Type of a constant as used in applications.
TypePtr const_type(const Term& c);

std::set<std::string> free_vars(const TermPtr& m);
bool is_closed(const TermPtr& m);

// Capture-avoiding substitution of `replacement` for the variable
// `name` (of type `ty`). Throws TypeError on type mismatch.
TermPtr substitute(const TermPtr& body, const std::string& name,
                   const TypePtr& ty, const TermPtr& replacement);

bool alpha_equal(const TermPtr& m, const TermPtr& n);

// Alpha-invariant structural key (de Bruijn print); equal keys iff
// alpha-equal. Used for table lookups.
std::string canonical_key(const TermPtr& m);

// Term and all subterms have cross-free types.
bool term_cross_free(const TermPtr& m);

// Concrete-syntax printer (S-expressions, re-parseable).
std::string show_term(const TermPtr& m);

// Beta-normal, fully eta-expanded form (constants treated as opaque heads,
// so this terminates for all well-typed terms). Requires a cross-free term.
TermPtr long_beta_eta_normal_form(const TermPtr& m);

// Globally fresh variable name (never produced by the parser).
std::string fresh_name(const std::string& base = "x");

}  // namespace nsplab
