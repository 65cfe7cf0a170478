// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion carries a wall-clock budget.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "nsplab/barrec.hpp"
#include "nsplab/corpus.hpp"
#include "nsplab/nsp.hpp"
#include "nsplab/reduction.hpp"
#include "nsplab/separation.hpp"
#include "nsplab/seqcode.hpp"
#include "nsplab/translations.hpp"
#include "nsplab/type.hpp"

using namespace nsplab;
namespace bar = nsplab::barrec;
namespace sep = nsplab::separation;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int idx, const char* name, bool ok, double secs, double budget) {
  bool in_time = secs < budget;
  std::printf("criterion %d (%s): %s (%.1f s, budget %.0f s)\n", idx, name,
              ok && in_time ? "pass" : "fail", secs, budget);
  if (!ok || !in_time) ++failures;
  std::fflush(stdout);
}

LangTag L(const char* s) { return *parse_lang_tag(s); }

// 1. evaluate and denote agree on ground PCF+byval programs: Value n on both
// sides, or FuelExhausted against an unresolved/bottom denotation.
bool adequacy() {
  std::vector<TermPtr> corpus = corpus::generate(L("pcf+byval"), 20260823, 50);
  for (const TermPtr& m : corpus) {
    StepTrace tr = evaluate(m, L("pcf+byval"), 1000000);
    nsp::Expr e = nsp::force(nsp::denote_sem(m).ground, {});
    bool agree =
        tr.outcome == StepTrace::Value
            ? (e.kind == nsp::Expr::Value && e.value == tr.value)
            : (e.kind == nsp::Expr::Unresolved || e.kind == nsp::Expr::Bottom);
    if (!agree) return false;
  }
  return true;
}

// Single-step simulation along the whole source trace: every M ~> M' is
// matched by Mo ~>+ M'o, and the image never gets stuck early.
bool lockstep(const TermPtr& m0, const LangTag& src, int max_steps,
              int sim_window) {
  LangTag pcf = L("pcf+byval");
  TermPtr m = m0;
  TermPtr mo = to_pcf(m0, src);
  for (int i = 0; i < max_steps; ++i) {
    auto r = step(m, src);
    if (!r) return true;  // normal form reached
    TermPtr mpo = to_pcf(r->term, src);
    TermPtr cur = mo;
    bool found = false;
    for (int j = 0; j < sim_window; ++j) {
      auto s = step(cur, pcf);
      if (!s) return false;
      cur = s->term;
      if (alpha_equal(cur, mpo)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
    m = r->term;
    mo = mpo;
  }
  return true;  // trace cut off at max_steps with simulation intact
}

// 2. lock-step on 50 W + 50 T+min corpus terms (>= 100 total).
bool translation_lockstep() {
  for (const TermPtr& m : corpus::generate(L("w"), 7, 50))
    if (!lockstep(m, L("w"), 150, 800)) return false;
  for (const TermPtr& m : corpus::generate(L("t+min"), 8, 50))
    if (!lockstep(m, L("t+min"), 150, 800)) return false;
  return true;
}

// Ground outcomes agree: a Value must be reproduced exactly (generous image
// fuel covers the translations' slowdown), a diverger must still be spinning
// at the image fuel.
bool same_ground(const TermPtr& m, const LangTag& src, const TermPtr& image,
                 const LangTag& dst, long long image_fuel) {
  StepTrace a = evaluate(m, src, 20000);
  if (a.outcome == StepTrace::Value) {
    StepTrace b = evaluate(image, dst, image_fuel);
    return b.outcome == StepTrace::Value && b.value == a.value;
  }
  return evaluate(image, dst, 100000).outcome == StepTrace::FuelExhausted;
}

// 3. ground faithfulness of -dagger, -ddagger and product elimination. The
// dagger leg runs on a shallower corpus: the W images of nested recursors
// cost orders of magnitude more steps than their sources.
bool ground_faithfulness() {
  for (const TermPtr& m : corpus::generate(L("t+min"), 9, 50, 2))
    if (!same_ground(m, L("t+min"), t_min_to_w(m), L("w"), 8000000))
      return false;
  for (const TermPtr& m : corpus::generate(L("w"), 7, 50)) {
    if (!same_ground(m, L("w"), w_to_t_min(m), L("t+min"), 50000000))
      return false;
    if (!same_ground(m, L("w"), eliminate_products(m), L("w"), 30000000))
      return false;
  }
  for (const TermPtr& m : corpus::generate(L("t+min"), 8, 50))
    if (!same_ground(m, L("t+min"), eliminate_products(m), L("t+min"),
                     30000000))
      return false;
  return true;
}

std::vector<std::pair<nsp::SemVal, nsp::SemVal>> full_battery() {
  std::vector<nsp::SemVal> fs = {bar::F_const(0), bar::F_plus0(),
                                 bar::F_plus(2), bar::F_mix()};
  std::vector<nsp::SemVal> gs = {bar::G_double(), bar::G_affine()};
  std::vector<std::pair<nsp::SemVal, nsp::SemVal>> out;
  for (const auto& f : fs)
    for (const auto& g : gs) out.emplace_back(f, g);
  return out;
}

// 4. both canonical recursors satisfy the defining equations on the battery,
// and the Spector-to-Kohlenbach bridge reproduces the Kohlenbach reference.
bool recursor_conformance() {
  nsp::AccelTable acc = bar::standard_accel();
  auto battery = full_battery();
  nsp::SemVal psik =
      nsp::denote_sem(bar::canonical_br_simplified(bar::Flavor::Kohlenbach),
                      acc);
  bar::ConformanceReport rk =
      bar::conformance_check(psik, battery, bar::Flavor::Kohlenbach, {5, 4});
  if (!rk.pass || !rk.violations.empty()) return false;
  nsp::SemVal psis =
      nsp::denote_sem(bar::canonical_br_simplified(bar::Flavor::Spector), acc);
  bar::ConformanceReport rs =
      bar::conformance_check(psis, battery, bar::Flavor::Spector, {8, 2});
  if (!rs.pass || !rs.violations.empty()) return false;

  bar::HostRecursor phi_s = [](const nsp::SemVal& F, const nsp::SemVal& G,
                               const Nat& xs) {
    bar::BarTree t(F, bar::Flavor::Spector, {});
    return bar::reference_phi(t, G, xs);
  };
  bar::HostRecursor phi_k = bar::spector_to_kohlenbach_bridge(phi_s);
  for (const auto& [F, G] : battery) {
    bar::BarTree t(F, bar::Flavor::Kohlenbach, {});
    if (phi_k(F, G, seq_empty()) != bar::reference_phi(t, G, seq_empty()))
      return false;
  }
  return true;
}

// 5. the worked constants: Phi(F+0, G0, <>) = 6, and the Kohlenbach tree of
// F+0 has an internal root with every one-element node (x0 < 64) a leaf.
bool worked_constants() {
  bar::BarTree tree(bar::F_plus0(), bar::Flavor::Kohlenbach);
  if (bar::reference_phi(tree, bar::G_double(), seq_empty()) != 6)
    return false;
  if (!tree.internal(seq_empty())) return false;
  for (int x = 0; x < 64; ++x)
    if (!tree.leaf(seq_add(0, x))) return false;
  return true;
}

// 6. the separation pipeline passes on the truncated candidates.
bool separation_run(int D, double* secs) {
  auto t0 = Clock::now();
  sep::SeparationReport r = sep::run_separation_term(
      sep::make_truncated_candidate(D), bar::standard_accel());
  *secs = secs_since(t0);
  return r.pass && r.c != r.K;
}

// 7. three seeded members of the secured neighbourhood intersection, all
// distinct from G0 and G1, reproduce the top-level path and the value c.
bool securing_members(int D) {
  nsp::AccelTable acc = bar::standard_accel();
  nsp::SemVal psi = nsp::denote_sem(sep::make_truncated_candidate(D), acc);
  sep::AnalysisState st = sep::analyze(psi);
  sep::CriticalPath path = sep::choose_critical_path(st);
  nsp::SemVal G1 = sep::build_G1(path);
  sep::TraceResult base =
      sep::trace_toplevel(psi, st.F_infinity, sep::G0(), {});

  // A probe far from every recorded neighbourhood: the members must differ
  // from both G0 and G1 there.
  TypePtr one = ty_arrow(ty_nat(), ty_nat());
  nsp::SemVal far = nsp::sem_native(one, [](const std::vector<Nat>& a) -> Nat {
    return a[0] + 987654321;
  });
  auto val_at = [&](const nsp::SemVal& G) {
    nsp::Expr e = nsp::force(nsp::apply_sem(G, far).ground, {});
    if (e.kind != nsp::Expr::Value) return Nat(-1);
    return e.value;
  };
  Nat g0_far = val_at(sep::G0());
  Nat g1_far = val_at(G1);

  for (unsigned seed : {101u, 202u, 303u}) {
    nsp::SemVal G = sep::random_secured_member(st, seed);
    Nat gf = val_at(G);
    if (gf == g0_far || gf == g1_far) return false;  // not distinct
    if (!sep::securing_check(st, psi, G)) return false;
    sep::TraceResult tr = sep::trace_toplevel(psi, st.F_infinity, G, {});
    if (tr.calls != base.calls || tr.result != base.result) return false;
  }
  return true;
}

// 8. the genuine recursor is rejected: no certificate at the term level, a
// nested-application chain at the procedure level, and the analysis throws
// instead of fabricating a report.
bool genuine_rejected() {
  TermPtr genuine = bar::canonical_br_simplified(bar::Flavor::Kohlenbach);
  if (!sep::gate_candidate(genuine)) return false;  // must be rejected
  nsp::AccelTable acc = bar::standard_accel();
  nsp::ProcPtr p = nsp::denote(genuine, acc);
  nsp::Budget narrow;
  narrow.branch_window = 2;
  narrow.depth = 12;
  if (!sep::gate_candidate(p, 3, narrow)) return false;
  try {
    sep::run_separation(nsp::denote_sem(genuine, acc), {}, 3, 4096);
    return false;  // a report here would be unsound
  } catch (const sep::AnalysisInapplicable&) {
  }
  try {
    sep::run_separation_term(genuine, acc);
    return false;
  } catch (const sep::SeparationError&) {
  }
  return true;
}

}  // namespace

int main() {
  auto timed = [](auto&& fn) {
    auto t0 = Clock::now();
    bool ok = fn();
    return std::pair<bool, double>(ok, secs_since(t0));
  };

  {
    auto [ok, s] = timed(adequacy);
    report(1, "adequacy of evaluate vs denote on 50 PCF+byval programs", ok, s,
           60);
  }
  {
    auto [ok, s] = timed(translation_lockstep);
    report(2, "lock-step simulation on 100 W and T+min terms", ok, s, 60);
  }
  {
    auto [ok, s] = timed(ground_faithfulness);
    report(3, "ground faithfulness of the three translations", ok, s, 120);
  }
  {
    auto [ok, s] = timed(recursor_conformance);
    report(4, "bar-recursor conformance and the flavor bridge", ok, s, 60);
  }
  {
    auto [ok, s] = timed(worked_constants);
    report(5, "reference value 6 and the shape of the F+0 tree", ok, s, 60);
  }
  {
    auto t0 = Clock::now();
    bool ok = true;
    for (int D = 1; D <= 3; ++D) {
      double s = 0;
      ok = separation_run(D, &s) && s < 60 && ok;  // < 60 s per candidate
    }
    report(6, "end-to-end separation of the depth-1/2/3 candidates", ok,
           secs_since(t0), 180);
  }
  {
    auto [ok, s] = timed([] {
      for (int D = 1; D <= 3; ++D)
        if (!securing_members(D)) return false;
      return true;
    });
    report(7, "three randomized secured members per candidate", ok, s, 60);
  }
  {
    auto [ok, s] = timed(genuine_rejected);
    report(8, "the genuine recursor is rejected, never reported", ok, s, 60);
  }

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
