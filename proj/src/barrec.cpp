#include "nsplab/barrec.hpp"

#include "nsplab/lang.hpp"
#include "nsplab/translations.hpp"
#include "nsplab/type.hpp"

namespace nsplab {
namespace barrec {

namespace {

TypePtr ty_one() { return ty_arrow(ty_nat(), ty_nat()); }
TypePtr ty_two() { return ty_arrow(ty_one(), ty_nat()); }

// Forces a ground semantic value all the way to a numeral.
Nat require_value(const nsp::SemVal& v, const nsp::Budget& b,
                  const std::string& what) {
  nsp::Expr e = nsp::force(v.ground, b);
  if (e.kind == nsp::Expr::Value) return e.value;
  if (e.kind == nsp::Expr::Unresolved)
    throw UndefinedBarCondition(what + ": unresolved within budget");
  throw UndefinedBarCondition(what + ": no numeral produced");
}

// The eventually constant function [xs j^w] as a native procedure.
nsp::SemVal basic_native(const Nat& xs, const Nat& j) {
  return nsp::sem_native(ty_one(), [xs, j](const std::vector<Nat>& ns) {
    return basic_at(xs, j, ns[0]);
  });
}

Nat seq_drop_last(const Nat& c) {
  Nat a, b;
  cantor_unpair(c - 1, a, b);
  return a;
}

}  // namespace

bool bar_condition(const nsp::SemVal& F, const Nat& xs, Flavor flavor,
                   const nsp::Budget& b) {
  Nat a = require_value(nsp::apply_sem(F, basic_native(xs, 0)), b,
                        "bar_condition: F on the 0-extension");
  if (flavor == Flavor::Spector) return a < seq_len(xs);
  Nat c = require_value(nsp::apply_sem(F, basic_native(xs, 1)), b,
                        "bar_condition: F on the 1-extension");
  return a == c;
}

BarTree::BarTree(nsp::SemVal F, Flavor flavor, nsp::Budget b)
    : F_(std::move(F)), flavor_(flavor), budget_(b) {}

bool BarTree::condition(const Nat& xs) {
  auto it = cond_memo_.find(xs);
  if (it != cond_memo_.end()) return it->second;
  bool r = bar_condition(F_, xs, flavor_, budget_);
  cond_memo_[xs] = r;
  return r;
}

bool BarTree::member(const Nat& xs) {
  for (Nat c = xs; c != 0;) {
    c = seq_drop_last(c);
    if (condition(c)) return false;
  }
  return true;
}

bool BarTree::leaf(const Nat& xs) { return member(xs) && condition(xs); }

bool BarTree::internal(const Nat& xs) { return member(xs) && !condition(xs); }

ExploreResult explore_tree(BarTree& t, const ExploreCaps& caps) {
  ExploreResult res;
  std::vector<Nat> path;
  // Children of an internal node are members automatically, so the probe
  // only ever evaluates bar conditions along tree paths.
  std::function<bool(const Nat&, int)> go = [&](const Nat& xs,
                                                int depth) -> bool {
    bool cond;
    try {
      cond = t.condition(xs);
    } catch (const UndefinedBarCondition&) {
      res.verdict = TreeVerdict::Exceeded;
      res.offending_path = path;
      return false;
    }
    if (cond) {
      res.leaves.push_back(xs);
      return true;
    }
    res.internal_nodes.push_back(xs);
    if (depth >= caps.depth) {
      res.verdict = TreeVerdict::InfinitePathWitness;
      res.offending_path = path;
      return false;
    }
    for (long long z = 0; z < caps.window; ++z) {
      Nat zn(static_cast<long>(z));
      path.push_back(zn);
      if (!go(seq_add(xs, zn), depth + 1)) return false;
      path.pop_back();
    }
    return true;
  };
  go(seq_empty(), 0);
  return res;
}

// ---------------------------------------------------------------------------
// The canonical bar recursor term

namespace {

LangTag t0str_tag() {
  LangTag t;
  t.base = LangTag::T0_str;
  return t;
}

}  // namespace

TermPtr canonical_br(Flavor flavor) {
  LangTag t0 = t0str_tag();
  TermPtr lenP = to_pcf(len_term(), t0);
  TermPtr addP = to_pcf(add_term(), t0);
  TermPtr basicP = to_pcf(basic_term(), t0);
  TermPtr ltP = to_pcf(lt_term(), t0);
  TermPtr eqP = to_pcf(eq_term(), t0);

  TypePtr one = ty_one();
  TypePtr two = ty_two();
  TypePtr gty = ty_arrow(ty_nat(), ty_arrow(one, ty_nat()));

  TermPtr F = mk_var("F", two);
  TermPtr L = mk_var("L", one);
  TermPtr G = mk_var("G", gty);
  TermPtr B = mk_var("B", one);
  TermPtr x = mk_var("x", ty_nat());
  TermPtr z = mk_var("z", ty_nat());

  TermPtr f0 = mk_app(F, mk_apps(basicP, {x, mk_num(0)}));
  TermPtr cond;
  if (flavor == Flavor::Spector) {
    cond = mk_apps(ltP, {f0, mk_app(lenP, x)});
  } else {
    cond = mk_apps(eqP, {f0, mk_app(F, mk_apps(basicP, {x, mk_num(1)}))});
  }

  TermPtr recurse = mk_lam(
      "z", ty_nat(), mk_app(B, mk_apps(addP, {x, z})));
  TermPtr body = mk_apps(mk_ifzero(),
                         {cond, mk_app(L, x), mk_apps(G, {x, recurse})});
  TermPtr step = mk_lam("B", one, mk_lam("x", ty_nat(), body));
  TermPtr loop = mk_app(mk_Y(one), step);
  return mk_lam("F", two,
                mk_lam("L", one, mk_lam("G", gty, loop)));
}

TermPtr canonical_br_simplified(Flavor flavor) {
  TypePtr one = ty_one();
  TypePtr two = ty_two();
  TermPtr leafP = to_pcf(leaf_term(), t0str_tag());
  TermPtr G = mk_var("G", two);
  TermPtr h = mk_var("h", one);
  // The general recursor ignores the node argument of G here.
  TermPtr gwrap = mk_lam("x", ty_nat(), mk_lam("h", one, mk_app(G, h)));
  TermPtr body = mk_apps(canonical_br(flavor),
                         {mk_var("F", two), leafP, gwrap});
  return mk_lam("F", two, mk_lam("G", two, body));
}

// ---------------------------------------------------------------------------
// Reference recursors

Nat reference_phi(BarTree& t, const nsp::SemVal& G, const Nat& xs,
                  int depth_cap) {
  if (!t.member(xs))
    throw BarrecError("reference_phi: node is not in the tree");
  if (t.condition(xs)) return 2 * xs + 1;
  if (depth_cap <= 0)
    throw CapExceeded("reference_phi: recursion depth cap hit");
  BarTree* tp = &t;
  nsp::SemVal rec = nsp::sem_native(
      ty_one(), [tp, G, xs, depth_cap](const std::vector<Nat>& ns) {
        return reference_phi(*tp, G, seq_add(xs, ns[0]), depth_cap - 1);
      });
  return require_value(nsp::apply_sem(G, rec), t.budget(),
                       "reference_phi: G at an internal node");
}

Nat reference_br(BarTree& t, const nsp::SemVal& L, const nsp::SemVal& G,
                 const Nat& xs, int depth_cap) {
  if (!t.member(xs))
    throw BarrecError("reference_br: node is not in the tree");
  if (t.condition(xs))
    return require_value(nsp::apply_sem(L, nsp::sem_num(xs)), t.budget(),
                         "reference_br: L at a leaf");
  if (depth_cap <= 0)
    throw CapExceeded("reference_br: recursion depth cap hit");
  BarTree* tp = &t;
  nsp::SemVal L2 = L, G2 = G;
  nsp::SemVal rec = nsp::sem_native(
      ty_one(), [tp, L2, G2, xs, depth_cap](const std::vector<Nat>& ns) {
        return reference_br(*tp, L2, G2, seq_add(xs, ns[0]), depth_cap - 1);
      });
  return require_value(
      nsp::apply_sem(nsp::apply_sem(G, nsp::sem_num(xs)), rec), t.budget(),
      "reference_br: G at an internal node");
}

// ---------------------------------------------------------------------------
// Spector-to-Kohlenbach bridge

namespace {

// U(F) = \g. (min r. F[g0..g(r-1) 0^w] = F[.. 1^w]) - 1.
nsp::SemVal bridge_modulus(const nsp::SemVal& F, const nsp::Budget& b,
                           long long search_cap) {
  return nsp::sem_fun(ty_two(), [F, b, search_cap](const nsp::SemVal& g) {
    return nsp::sem_ground(nsp::lz_of(
        [F, g, b, search_cap](nsp::EvalCtx&) -> nsp::Expr {
          std::vector<Nat> prefix;
          for (long long r = 0; r <= search_cap; ++r) {
            auto probe = [&prefix](const Nat& fill) {
              std::vector<Nat> pref = prefix;
              return nsp::sem_native(
                  ty_one(), [pref, fill](const std::vector<Nat>& ns) {
                    const Nat& i = ns[0];
                    if (i < Nat(static_cast<long>(pref.size())))
                      return pref[i.get_ui()];
                    return fill;
                  });
            };
            Nat a = require_value(nsp::apply_sem(F, probe(Nat(0))), b,
                                  "bridge modulus: F on the 0-fill");
            Nat c = require_value(nsp::apply_sem(F, probe(Nat(1))), b,
                                  "bridge modulus: F on the 1-fill");
            if (a == c) {
              if (r == 0)
                throw BarrecError(
                    "bridge modulus: zero modulus (tree is a single leaf)");
              return nsp::ex_value(Nat(static_cast<long>(r - 1)));
            }
            prefix.push_back(require_value(
                nsp::apply_sem(g, nsp::sem_num(Nat(static_cast<long>(r)))), b,
                "bridge modulus: probing the argument function"));
          }
          throw CapExceeded("bridge modulus: search cap hit");
        }));
  });
}

}  // namespace

HostRecursor spector_to_kohlenbach_bridge(HostRecursor phi_s,
                                          const nsp::Budget& b,
                                          long long search_cap) {
  return [phi_s, b, search_cap](const nsp::SemVal& F, const nsp::SemVal& G,
                                const Nat& xs) -> Nat {
    Nat a = require_value(nsp::apply_sem(F, basic_native(Nat(0), 0)), b,
                          "bridge: F on 0^w");
    Nat c = require_value(nsp::apply_sem(F, basic_native(Nat(0), 1)), b,
                          "bridge: F on 1^w");
    if (a == c) return 2 * xs + 1;
    return phi_s(bridge_modulus(F, b, search_cap), G, xs);
  };
}

// ---------------------------------------------------------------------------
// Conformance

ConformanceReport conformance_check(
    const nsp::SemVal& psi,
    const std::vector<std::pair<nsp::SemVal, nsp::SemVal>>& battery,
    Flavor flavor, const ExploreCaps& caps, const nsp::Budget& b) {
  ConformanceReport report;
  for (std::size_t idx = 0; idx < battery.size(); ++idx) {
    const nsp::SemVal& F = battery[idx].first;
    const nsp::SemVal& G = battery[idx].second;
    BarTree tree(F, flavor, b);
    ExploreResult er = explore_tree(tree, caps);
    if (er.verdict != TreeVerdict::WellFoundedUpToCaps) {
      ConformanceViolation v;
      v.pair_index = idx;
      v.node = seq_encode(er.offending_path);
      v.kind = "tree";
      report.violations.push_back(v);
      continue;
    }
    nsp::SemVal psiFG = nsp::apply_sem(nsp::apply_sem(psi, F), G);
    auto value_at = [&](const Nat& xs) {
      return require_value(nsp::apply_sem(psiFG, nsp::sem_num(xs)), b,
                           "conformance: candidate at a node");
    };
    for (const Nat& xs : er.leaves) {
      ++report.nodes_checked;
      ConformanceViolation v;
      v.pair_index = idx;
      v.node = xs;
      try {
        Nat actual = value_at(xs);
        Nat expected = 2 * xs + 1;
        if (actual != expected) {
          v.kind = "leaf-value";
          v.expected = expected;
          v.actual = actual;
          report.violations.push_back(v);
        }
      } catch (const BarrecError&) {
        v.kind = "undefined";
        report.violations.push_back(v);
      }
    }
    for (const Nat& xs : er.internal_nodes) {
      ++report.nodes_checked;
      ConformanceViolation v;
      v.pair_index = idx;
      v.node = xs;
      try {
        Nat actual = value_at(xs);
        nsp::SemVal rec = nsp::sem_native(
            ty_one(), [&value_at, xs](const std::vector<Nat>& ns) {
              return value_at(seq_add(xs, ns[0]));
            });
        Nat expected = require_value(nsp::apply_sem(G, rec), b,
                                     "conformance: G at an internal node");
        if (actual != expected) {
          v.kind = "internal-value";
          v.expected = expected;
          v.actual = actual;
          report.violations.push_back(v);
        }
      } catch (const BarrecError&) {
        v.kind = "undefined";
        report.violations.push_back(v);
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Battery

nsp::SemVal F_const(const Nat& n) {
  return nsp::sem_fun(ty_two(),
                      [n](const nsp::SemVal&) { return nsp::sem_num(n); });
}

nsp::SemVal F_plus0() {
  return nsp::sem_fun(ty_two(), [](const nsp::SemVal& f) {
    return nsp::sem_ground(nsp::lz_seq(
        {nsp::apply_sem(f, nsp::sem_num(0))},
        [](const std::vector<Nat>& ns, nsp::EvalCtx&) {
          return nsp::ex_value(seq_add(seq_empty(), ns[0]));
        }));
  });
}

nsp::SemVal F_plus(const Nat& k0) {
  return nsp::sem_fun(ty_two(), [k0](const nsp::SemVal& f) {
    return nsp::sem_ground(nsp::lz_seq(
        {nsp::apply_sem(f, nsp::sem_num(0))},
        [k0, f](const std::vector<Nat>& ns, nsp::EvalCtx& ctx) {
          Nat n0 = ns[0];
          if (n0 < k0)
            return nsp::ex_value(seq_add(seq_empty(), n0));
          return nsp::lz_seq({nsp::apply_sem(f, nsp::sem_num(1))},
                             [n0](const std::vector<Nat>& ms, nsp::EvalCtx&) {
                               return nsp::ex_value(
                                   seq_add(seq_add(seq_empty(), n0), ms[0]));
                             })
              ->force(ctx);
        }));
  });
}

nsp::SemVal F_mix() {
  return nsp::sem_fun(ty_two(), [](const nsp::SemVal& f) {
    return nsp::sem_ground(nsp::lz_seq(
        {nsp::apply_sem(f, nsp::sem_num(0))},
        [f](const std::vector<Nat>& ns, nsp::EvalCtx& ctx) {
          return nsp::lz_seq({nsp::apply_sem(f, nsp::sem_num(ns[0]))},
                             [](const std::vector<Nat>& ms, nsp::EvalCtx&) {
                               return nsp::ex_value(
                                   seq_add(seq_empty(), ms[0]));
                             })
              ->force(ctx);
        }));
  });
}

nsp::SemVal G_double() {
  return nsp::sem_fun(ty_two(), [](const nsp::SemVal& g) {
    return nsp::sem_ground(nsp::lz_seq(
        {nsp::apply_sem(g, nsp::sem_num(0))},
        [](const std::vector<Nat>& ns, nsp::EvalCtx&) {
          return nsp::ex_value(2 * ns[0]);
        }));
  });
}

nsp::SemVal G_affine() {
  return nsp::sem_fun(ty_two(), [](const nsp::SemVal& g) {
    return nsp::sem_ground(nsp::lz_seq(
        {nsp::apply_sem(g, nsp::sem_num(1)),
         nsp::apply_sem(g, nsp::sem_num(0))},
        [](const std::vector<Nat>& ns, nsp::EvalCtx&) {
          return nsp::ex_value(ns[0] + 2 * ns[1]);
        }));
  });
}

std::vector<std::pair<nsp::SemVal, nsp::SemVal>> standard_battery() {
  return {
      {F_const(0), G_double()},
      {F_plus0(), G_double()},
      {F_plus0(), G_affine()},
      {F_plus(2), G_double()},
      {F_mix(), G_affine()},
  };
}

// ---------------------------------------------------------------------------
// Acceleration

nsp::AccelTable standard_accel() {
  nsp::AccelTable acc;
  TypePtr n1 = ty_arrow(ty_nat(), ty_nat());
  TypePtr n2 = ty_arrow(ty_nat(), n1);
  TypePtr n3 = ty_arrow(ty_nat(), n2);
  LangTag t_tag;
  t_tag.base = LangTag::T;
  // Each program is registered in both recursion flavours together with its
  // translation image.
  auto reg = [&acc, &t_tag](const TermPtr& ts, const TermPtr& tr,
                            const nsp::SemVal& v) {
    acc[canonical_key(ts)] = v;
    acc[canonical_key(to_pcf(ts, t0str_tag()))] = v;
    acc[canonical_key(tr)] = v;
    acc[canonical_key(to_pcf(tr, t_tag))] = v;
  };
  // Explicit Nat returns: gmp expression templates must not escape the
  // lambda, their inner temporaries die with the return statement.
  reg(plus_str(), plus_rec(),
      nsp::sem_native(n2, [](const std::vector<Nat>& a) -> Nat {
        return a[0] + a[1];
      }));
  reg(monus_str(), monus_rec(),
      nsp::sem_native(n2, [](const std::vector<Nat>& a) -> Nat {
        if (a[0] > a[1]) return a[0] - a[1];
        return Nat(0);
      }));
  reg(lt_term(), lt_rec(),
      nsp::sem_native(n2, [](const std::vector<Nat>& a) -> Nat {
        if (a[0] < a[1]) return Nat(0);
        return a[0] + 1 - a[1];
      }));
  reg(eq_term(), eq_rec(),
      nsp::sem_native(n2, [](const std::vector<Nat>& a) -> Nat {
        if (a[0] > a[1]) return a[0] - a[1];
        return a[1] - a[0];
      }));
  reg(len_term(), len_rec(),
      nsp::sem_native(n1, [](const std::vector<Nat>& a) -> Nat {
        return seq_len(a[0]);
      }));
  reg(add_term(), add_rec(),
      nsp::sem_native(n2, [](const std::vector<Nat>& a) -> Nat {
        return seq_add(a[0], a[1]);
      }));
  reg(basic_term(), basic_rec(),
      nsp::sem_native(n3, [](const std::vector<Nat>& a) -> Nat {
        return basic_at(a[0], a[1], a[2]);
      }));
  reg(leaf_term(), leaf_rec(),
      nsp::sem_native(n1, [](const std::vector<Nat>& a) -> Nat {
        return 2 * a[0] + 1;
      }));
  return acc;
}

}  // namespace barrec
}  // namespace nsplab
