#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nsplab/nat.hpp"
#include "nsplab/term.hpp"

namespace nsplab {
namespace nsp {

// Nested sequential procedures: possibly infinite decision trees
//   p ::= lambda x0..xr-1. e
//   e ::= bot | n | case x q0..qs-1 of (i => e_i | i in N)
// produced on demand. Infinite branching is intensional: an explicit finite
// table plus a total host-level default rule, with forced branches memoized.
// "Unresolved" marks a node whose head reduction exhausted its step budget;
// it is distinct from proven bot (case-of-bot, literal bot) and may be
// retried with a larger budget.

struct Expr;
struct Procedure;
struct LazyExpr;
struct Branches;
struct SemVal;

using ProcPtr = std::shared_ptr<const Procedure>;
using LazyPtr = std::shared_ptr<LazyExpr>;
using BranchesPtr = std::shared_ptr<Branches>;

struct Budget {
  long long steps = 1000000;   // head-reduction steps per node force
  int depth = 32;              // exploration depth for equality/print/probe
  long long branch_window = 64;  // branch indices forced per case node
  // Nested forces per node; bounds host stack growth. Divergent head
  // reductions (Y applied to the identity) hit this and report Unresolved.
  long long recursion = 3000;
};

// A call on a free head variable, intercepted during oracle-instrumented
// evaluation. Returning a value selects that branch of the case; returning
// nullopt lets the case node surface syntactically.
using Oracle = std::function<std::optional<Nat>(const std::string& head,
                                                const std::vector<SemVal>& args)>;

struct EvalCtx {
  long long steps = 0;
  const Oracle* oracle = nullptr;
  long long rec_left = 3000;
};

struct Expr {
  enum Kind { Bottom, Value, Unresolved, Case };
  Kind kind = Bottom;
  Nat value;              // Value
  std::string head;       // Case: free head variable
  TypePtr head_type;      // type of the head variable
  std::vector<ProcPtr> args;
  BranchesPtr branches;
};

Expr ex_bottom();
Expr ex_value(const Nat& n);
Expr ex_unresolved();
Expr ex_case(std::string head, TypePtr head_type, std::vector<ProcPtr> args,
             BranchesPtr branches);

struct LazyExpr {
  explicit LazyExpr(std::function<Expr(EvalCtx&)> compute);
  // Forces the node, consuming steps from ctx. Resolved results (anything
  // but Unresolved) are memoized; memoization is disabled while an oracle
  // is installed, since the oracle changes the meaning of free heads.
  Expr force(EvalCtx& ctx);

 private:
  std::function<Expr(EvalCtx&)> compute_;
  std::optional<Expr> memo_;
  std::mutex mu_;
};

LazyPtr lz_value(const Nat& n);
LazyPtr lz_bottom();
LazyPtr lz_expr(Expr e);
LazyPtr lz_case(std::string head, TypePtr head_type, std::vector<ProcPtr> args,
                BranchesPtr branches);
LazyPtr lz_of(std::function<Expr(EvalCtx&)> compute);

struct Branches {
  Branches(std::map<Nat, LazyPtr> table, std::function<LazyPtr(const Nat&)> dflt);
  // Total: explicit table first, then the (memoized) default rule.
  LazyPtr at(const Nat& i);
  const std::map<Nat, LazyPtr>& explicit_table() const { return table_; }

 private:
  std::map<Nat, LazyPtr> table_;
  std::function<LazyPtr(const Nat&)> default_;
  std::map<Nat, LazyPtr> memo_;
  std::mutex mu_;
};

// Table-backed branches; indices outside the table default to dflt
// (bot when omitted).
BranchesPtr br_table(std::map<Nat, LazyPtr> table,
                     std::function<LazyPtr(const Nat&)> dflt = nullptr);
BranchesPtr br_fn(std::function<LazyPtr(const Nat&)> f);
BranchesPtr br_identity();  // i => i

struct Procedure {
  std::vector<std::pair<std::string, TypePtr>> params;
  TypePtr type;  // full procedure type (params -> nat)
  LazyPtr body;
  // Semantic value this procedure reads back; lets application skip
  // re-interpreting the syntax.
  std::shared_ptr<const SemVal> origin;
};

ProcPtr mk_proc(std::vector<std::pair<std::string, TypePtr>> params, LazyPtr body);

// Semantic values (closures): a ground value is a lazy expression, a value
// of arrow type is a host function.
struct SemVal {
  TypePtr type;
  LazyPtr ground;                               // when type is nat
  std::function<SemVal(const SemVal&)> fn;      // when type is an arrow
};

SemVal sem_num(const Nat& n);
SemVal sem_bottom_nat();
SemVal sem_ground(LazyPtr e);
SemVal sem_fun(TypePtr type, std::function<SemVal(const SemVal&)> fn);
SemVal apply_sem(const SemVal& f, const SemVal& a);
SemVal apply_sem(SemVal f, const std::vector<SemVal>& args);

// Hereditary eta-expansion of a free variable, as a semantic value and as a
// procedure: x^(nat eta) = lambda. case x() of i => i.
SemVal reflect(const std::string& name, const TypePtr& type);
ProcPtr eta_expand(const std::string& name, const TypePtr& type);

// Readback: explore a semantic value as a normal-form procedure
// (lazy body; fresh parameter names).
ProcPtr readback(const SemVal& v);

// Interpret a syntactic procedure as a semantic value; free variables not
// bound by env stay free (reflected on use).
using Env = std::map<std::string, SemVal>;
SemVal tosem(const ProcPtr& p, const Env& env = {});

// Application p . q = normal form of the body with the first parameter
// substituted; associates left over argument vectors.
ProcPtr apply(const ProcPtr& p, const ProcPtr& q);
ProcPtr apply(ProcPtr p, const std::vector<ProcPtr>& args);

// Forcing helpers.
Expr force(const LazyPtr& e, const Budget& b);
Expr force_body(const ProcPtr& p, const Budget& b);  // p must have no params
std::optional<Nat> ground_value(const ProcPtr& p, const Budget& b);
Expr force_with_oracle(const SemVal& ground, const Budget& b, const Oracle& oracle);

// Denotation of PCF+byval terms (cross-free overall type). The acceleration
// table maps canonical keys of closed subterms to native semantic values
// with identical extensional behaviour. Product-typed subterms are allowed
// when an acceleration entry covers them; reaching one otherwise throws.
using AccelTable = std::map<std::string, SemVal>;
SemVal denote_sem(const TermPtr& m, const AccelTable& accel = {});
ProcPtr denote(const TermPtr& m, const AccelTable& accel = {});

// Three-valued bounded judgements.
enum class Tri { True, False, Unknown };
Tri tri_and(Tri a, Tri b);

// Bounded window equality / syntactic order p [= q (q refines bot nodes
// of p). False requires a concrete disagreement at a node of p that is
// neither bot nor unresolved.
Tri proc_equal(const ProcPtr& p, const ProcPtr& q, const Budget& b);
Tri syntactic_leq(const ProcPtr& p, const ProcPtr& q, const Budget& b);

// Bounded extensional comparison over an explicit argument grid: wherever
// p . qs yields a numeral, p' . qs yields the same numeral.
Tri ext_leq_on_grid(const ProcPtr& p, const ProcPtr& q,
                    const std::vector<std::vector<ProcPtr>>& grid,
                    const Budget& b);

// Left-well-foundedness probe: explores the tree of nested application
// subterms (args-first) and reports the deepest nesting chain found within
// the budget window.
struct LwfResult {
  bool chain_found = false;  // a chain longer than the depth bound exists
  int max_depth = 0;         // deepest nesting observed (clipped at bound+1)
};
LwfResult lwf_probe(const ProcPtr& p, int depth_bound, const Budget& b);

// Syntactic certificate: terms of T+min or W denote LWF procedures.
bool lwf_by_construction(const TermPtr& m);

// Case-tree printer and JSON export of the explored region.
std::string show_proc(const ProcPtr& p, const Budget& b);
std::string proc_to_json(const ProcPtr& p, const Budget& b);

// Sequence ground semantic values: forces each argument in order, then runs
// the continuation on the numerals. Case nodes on free heads pass through
// (the continuation is pushed into their branches).
LazyPtr lz_seq(std::vector<SemVal> args,
               std::function<Expr(const std::vector<Nat>&, EvalCtx&)> k);

// Native first-order semantic value: type must be nat -> ... -> nat.
// Arguments are evaluated left to right (case nodes on free heads pass
// through), then the host function produces the result. Host exceptions
// propagate out of force.
SemVal sem_native(const TypePtr& type,
                  std::function<Nat(const std::vector<Nat>&)> f);

// Native semantic values for the PCF+byval constants (exposed for tests).
SemVal sem_suc();
SemVal sem_pre();
SemVal sem_ifzero(const TypePtr& sigma);
SemVal sem_byval(const std::vector<TypePtr>& sigmas, const TypePtr& tau);
SemVal sem_fix(const SemVal& f, const TypePtr& sigma);

}  // namespace nsp
}  // namespace nsplab
