#include "nsplab/reduction.hpp"

#include <stdexcept>

#include "nsplab/programs.hpp"

namespace nsplab {

namespace {

struct Red {
  TermPtr t;
  std::string rule;
  std::string path;
};

void flatten(const TermPtr& m, TermPtr& head, std::vector<TermPtr>& args) {
  if (m->kind == Term::App) {
    flatten(m->a, head, args);
    args.push_back(m->b);
  } else {
    head = m;
  }
}

std::string fn_prefix(size_t n) {
  std::string s;
  for (size_t i = 0; i < n; ++i) s += "fn.";
  return s;
}

// Outcome of inspecting an application spine h A1 ... An.
struct TopAction {
  enum Kind { None, Fire, Force } kind = None;
  TermPtr fired;       // Fire: result of the rule on the first `consumed` args
  size_t consumed = 0; // Fire
  std::string rule;    // Fire
  size_t force_pos = 0; // Force: 1-based index of the arg to evaluate
};

TopAction fire(TermPtr t, size_t consumed, std::string rule) {
  TopAction a;
  a.kind = TopAction::Fire;
  a.fired = std::move(t);
  a.consumed = consumed;
  a.rule = std::move(rule);
  return a;
}

TopAction force(size_t pos) {
  TopAction a;
  a.kind = TopAction::Force;
  a.force_pos = pos;
  return a;
}

TopAction top_action(const TermPtr& h, const std::vector<TermPtr>& A) {
  size_t n = A.size();
  if (h->kind == Term::Lam && n >= 1)
    return fire(substitute(h->a, h->name, h->var_type, A[0]), 1, "beta");
  if (h->kind != Term::Const) return {};
  switch (h->ck) {
    case ConstKind::Suc:
      if (n < 1) return {};
      if (A[0]->kind == Term::Num) return fire(mk_num(A[0]->num + 1), 1, "suc");
      return force(1);
    case ConstKind::Pre:
      if (n < 1) return {};
      if (A[0]->kind == Term::Num) {
        if (A[0]->num == 0) return fire(mk_num(0), 1, "pre-zero");
        return fire(mk_num(A[0]->num - 1), 1, "pre-suc");
      }
      return force(1);
    case ConstKind::Ifzero: {
      if (n < 1) return {};
      if (A[0]->kind != Term::Num) return force(1);
      const TypePtr& s = h->cty;
      std::string x = fresh_name("x"), y = fresh_name("y");
      if (A[0]->num == 0)
        return fire(mk_lam(x, s, mk_lam(y, s, mk_var(x, s))), 1, "ifzero-zero");
      return fire(mk_lam(x, s, mk_lam(y, s, mk_var(y, s))), 1, "ifzero-suc");
    }
    case ConstKind::Y:
      if (n < 1) return {};
      return fire(mk_app(A[0], mk_app(h, A[0])), 1, "Y");
    case ConstKind::While: {
      if (n < 3) return {};
      const TermPtr &C = A[0], &X = A[1], &F = A[2];
      TermPtr t = mk_apps(mk_ifzero(h->cty),
                          {mk_app(C, X), mk_apps(h, {C, mk_app(F, X), F}), X});
      return fire(std::move(t), 3, "while");
    }
    case ConstKind::WhileStr: {
      if (n < 3) return {};
      const TermPtr &C = A[0], &X = A[1], &F = A[2];
      std::string x = fresh_name("x");
      TermPtr xv = mk_var(x, h->cty);
      TermPtr body = mk_apps(
          mk_ifzero(h->cty),
          {mk_app(C, xv), mk_apps(h, {C, mk_app(F, xv), F}), xv});
      TermPtr t = mk_apps(byval_bracket(h->cty),
                          {mk_lam(x, h->cty, body), X});
      return fire(std::move(t), 3, "while-str");
    }
    case ConstKind::Rec: {
      if (n < 3) return {};
      if (A[2]->kind != Term::Num) return force(3);
      const TermPtr &X = A[0], &F = A[1];
      if (A[2]->num == 0) return fire(X, 3, "rec-zero");
      TermPtr pn = mk_num(A[2]->num - 1);
      return fire(mk_apps(F, {mk_apps(h, {X, F, pn}), pn}), 3, "rec-suc");
    }
    case ConstKind::RecStr: {
      if (n < 3) return {};
      if (A[2]->kind != Term::Num) return force(3);
      const TermPtr &X = A[0], &F = A[1];
      if (A[2]->num == 0) return fire(X, 3, "rec-str-zero");
      TermPtr pn = mk_num(A[2]->num - 1);
      std::string m = fresh_name("m");
      TermPtr mv = mk_var(m, h->cty);
      TermPtr lam = mk_lam(m, h->cty, mk_apps(F, {mv, pn}));
      TermPtr t = mk_apps(byval_bracket(h->cty),
                          {lam, mk_apps(h, {X, F, pn})});
      return fire(std::move(t), 3, "rec-str-suc");
    }
    case ConstKind::Min: {
      if (n < 2) return {};
      if (A[1]->kind != Term::Num) return force(2);
      const TermPtr &F = A[0], &N = A[1];
      TermPtr t = mk_apps(mk_ifzero(), {mk_app(F, N), N,
                                        mk_apps(h, {F, mk_app(mk_suc(), N)})});
      return fire(std::move(t), 2, "min");
    }
    case ConstKind::Byval: {
      size_t k = h->bv_sigmas.size();
      if (n < k + 2) return {};
      if (A[k + 1]->kind != Term::Num) return force(k + 2);
      std::vector<TermPtr> rest(A.begin() + 1, A.begin() + k + 2);
      return fire(mk_apps(A[0], rest), k + 2, "byval");
    }
  }
  return {};
}

std::optional<Red> find(const TermPtr& m) {
  switch (m->kind) {
    case Term::App: {
      TermPtr h;
      std::vector<TermPtr> A;
      flatten(m, h, A);
      TopAction act = top_action(h, A);
      if (act.kind == TopAction::Fire) {
        std::vector<TermPtr> rest(A.begin() + act.consumed, A.end());
        Red r;
        r.t = mk_apps(act.fired, rest);
        r.rule = act.rule;
        r.path = fn_prefix(A.size() - act.consumed);
        return r;
      }
      if (act.kind == TopAction::Force) {
        auto sub = find(A[act.force_pos - 1]);
        if (!sub) return std::nullopt;
        std::vector<TermPtr> A2 = A;
        A2[act.force_pos - 1] = sub->t;
        Red r;
        r.t = mk_apps(h, A2);
        r.rule = sub->rule;
        r.path = fn_prefix(A.size() - act.force_pos) + "arg." + sub->path;
        return r;
      }
      // No rule at the spine head; a step may still occur inside the head
      // itself (evaluation context [-] N), e.g. when it is fst/snd.
      auto sub = find(h);
      if (!sub) return std::nullopt;
      Red r;
      r.t = mk_apps(sub->t, A);
      r.rule = sub->rule;
      r.path = fn_prefix(A.size()) + sub->path;
      return r;
    }
    case Term::Fst: {
      if (m->a->kind == Term::PairT) return Red{m->a->a, "fst-pair", ""};
      auto sub = find(m->a);
      if (!sub) return std::nullopt;
      return Red{mk_fst(sub->t), sub->rule, "arg." + sub->path};
    }
    case Term::Snd: {
      if (m->a->kind == Term::PairT) return Red{m->a->b, "snd-pair", ""};
      auto sub = find(m->a);
      if (!sub) return std::nullopt;
      return Red{mk_snd(sub->t), sub->rule, "arg." + sub->path};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<StepRecord> step(const TermPtr& m, const LangTag& lang) {
  if (auto v = membership_violation(m, lang))
    throw TypeError("step: term not in " + show_lang_tag(lang) + ": " + *v);
  auto r = find(m);
  if (!r) return std::nullopt;
  return StepRecord{r->t, r->rule, r->path};
}

StepTrace evaluate(const TermPtr& m, const LangTag& lang, long long fuel,
                   bool record_steps) {
  if (fuel <= 0) throw std::invalid_argument("evaluate: fuel must be > 0");
  if (auto v = membership_violation(m, lang))
    throw TypeError("evaluate: term not in " + show_lang_tag(lang) + ": " + *v);
  StepTrace tr;
  TermPtr cur = m;
  for (long long i = 0; i < fuel; ++i) {
    if (cur->kind == Term::Num) {
      tr.outcome = StepTrace::Value;
      tr.value = cur->num;
      tr.final_term = cur;
      return tr;
    }
    auto r = find(cur);
    if (!r) {
      tr.outcome = StepTrace::Stuck;
      tr.stuck_reason = cur->type->kind == Type::Nat
                            ? "normal form is not a numeral (open term?)"
                            : "normal form of non-ground type";
      tr.final_term = cur;
      return tr;
    }
    cur = r->t;
    ++tr.steps_taken;
    if (record_steps) tr.steps.push_back(StepRecord{cur, r->rule, r->path});
  }
  if (cur->kind == Term::Num) {
    tr.outcome = StepTrace::Value;
    tr.value = cur->num;
  } else {
    tr.outcome = StepTrace::FuelExhausted;
  }
  tr.final_term = cur;
  return tr;
}

std::optional<DistinctnessWitness> observationally_distinct_witness(
    const TermPtr& m, const TermPtr& mp, const LangTag& lang,
    const std::vector<std::vector<TermPtr>>& corpus, long long fuel) {
  if (!type_equal(m->type, mp->type))
    throw TypeError("observationally_distinct_witness: type mismatch");
  for (const auto& args : corpus) {
    TermPtr lm = mk_apps(m, args);
    TermPtr rm = mk_apps(mp, args);
    if (lm->type->kind != Type::Nat)
      throw TypeError("argument tuple does not reach ground type");
    StepTrace lt = evaluate(lm, lang, fuel);
    StepTrace rt = evaluate(rm, lang, fuel);
    bool differ;
    if (lt.outcome == StepTrace::Value && rt.outcome == StepTrace::Value)
      differ = lt.value != rt.value;
    else
      differ = lt.outcome != rt.outcome;
    if (differ) return DistinctnessWitness{args, lt, rt};
  }
  return std::nullopt;
}

}  // namespace nsplab
