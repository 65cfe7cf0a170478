#include "nsplab/separation.hpp"

#include <algorithm>

#include "nsplab/barrec.hpp"
#include "nsplab/lang.hpp"
#include "nsplab/seqcode.hpp"
#include "nsplab/type.hpp"

namespace nsplab {
namespace separation {

namespace {

TypePtr ty_one() { return ty_arrow(ty_nat(), ty_nat()); }
TypePtr ty_two() { return ty_arrow(ty_one(), ty_nat()); }

Nat require_value(const nsp::SemVal& v, const nsp::Budget& b,
                  const std::string& what) {
  nsp::Expr e = nsp::force(v.ground, b);
  if (e.kind == nsp::Expr::Value) return e.value;
  if (e.kind == nsp::Expr::Unresolved)
    throw AnalysisInapplicable(what + ": unresolved within budget");
  throw AnalysisInapplicable(what + ": no numeral produced");
}

}  // namespace

// ---------------------------------------------------------------------------
// Tracing

TraceResult trace_open(const nsp::SemVal& open_ground,
                       const nsp::SemVal& F_inst, const nsp::SemVal& G_inst,
                       const nsp::Budget& b, std::size_t call_cap) {
  TraceResult out;
  nsp::LazyPtr cur = open_ground.ground;
  for (std::size_t n = 0;; ++n) {
    if (n > call_cap)
      throw AnalysisInapplicable("trace: oracle call cap exceeded");
    nsp::Expr e = nsp::force(cur, b);
    switch (e.kind) {
      case nsp::Expr::Value:
        out.result = e.value;
        return out;
      case nsp::Expr::Bottom:
        throw AnalysisInapplicable("trace: computation hit bottom");
      case nsp::Expr::Unresolved:
        throw AnalysisInapplicable("trace: step budget exhausted");
      case nsp::Expr::Case:
        break;
    }
    if ((e.head != "F" && e.head != "G") || e.args.size() != 1)
      throw AnalysisInapplicable("trace: unexpected free head '" + e.head +
                                 "'");
    nsp::SemVal inst =
        nsp::tosem(e.args[0], {{"F", F_inst}, {"G", G_inst}});
    const nsp::SemVal& H = (e.head == "F") ? F_inst : G_inst;
    Nat outcome = require_value(nsp::apply_sem(H, inst), b,
                                "trace: oracle call on " + e.head);
    out.calls.emplace_back(e.head[0], outcome);
    out.arguments.push_back(e.args[0]);
    cur = e.branches->at(outcome);
  }
}

TraceResult trace_toplevel(const nsp::SemVal& psi, const nsp::SemVal& F_inst,
                           const nsp::SemVal& G_inst, const nsp::Budget& b) {
  nsp::SemVal open = nsp::apply_sem(
      psi, {nsp::reflect("F", ty_two()), nsp::reflect("G", ty_two()),
            nsp::sem_num(seq_empty())});
  return trace_open(open, F_inst, G_inst, b);
}

// ---------------------------------------------------------------------------
// The staged functionals

namespace {

// Reads f 0, f 1, ... accumulating the sequence read so far. Coordinate j
// below the threshold list stops with the sequence when the reading is
// under ks[j] and recurses otherwise; the final coordinate is either open
// (F_stage) or bounded by the last threshold (F_trunc).
nsp::LazyPtr stage_probe(const nsp::SemVal& f, const std::vector<Nat>& ks,
                         bool open_top, std::size_t j, const Nat& acc) {
  return nsp::lz_seq(
      {nsp::apply_sem(f, nsp::sem_num(Nat(static_cast<long>(j))))},
      [f, ks, open_top, j, acc](const std::vector<Nat>& ns,
                                nsp::EvalCtx& ctx) -> nsp::Expr {
        Nat ext = seq_add(acc, ns[0]);
        if (open_top && j == ks.size()) return nsp::ex_value(ext);
        if (ns[0] < ks[j]) return nsp::ex_value(ext);
        if (!open_top && j + 1 == ks.size()) return nsp::ex_bottom();
        return stage_probe(f, ks, open_top, j + 1, ext)->force(ctx);
      });
}

nsp::SemVal stage_fun(const std::vector<Nat>& ks, bool open_top) {
  return nsp::sem_fun(ty_two(), [ks, open_top](const nsp::SemVal& f) {
    return nsp::sem_ground(stage_probe(f, ks, open_top, 0, seq_empty()));
  });
}

}  // namespace

nsp::SemVal F_stage(const std::vector<Nat>& ks) { return stage_fun(ks, true); }

nsp::SemVal F_trunc(const std::vector<Nat>& ks) {
  if (ks.empty()) throw SeparationError("F_trunc: no thresholds");
  return stage_fun(ks, false);
}

TermPtr f_stage_term(const std::vector<Nat>& ks) {
  TypePtr one = ty_one();
  TermPtr f = mk_var("f", one);
  // probe j acc = let i = f j in
  //               (j <= d:  if i < k_j then add acc i else probe (j+1) ...)
  //               (j = d+1: add acc i)
  std::function<TermPtr(std::size_t, TermPtr)> probe =
      [&](std::size_t j, TermPtr acc) -> TermPtr {
    return strict_let(
        mk_app(f, mk_num(Nat(static_cast<long>(j)))),
        [&, acc](TermPtr i) -> TermPtr {
          return strict_let(
              mk_apps(add_term(), {acc, i}), [&, i](TermPtr ext) -> TermPtr {
                if (j == ks.size()) return ext;
                return mk_apps(mk_ifzero(),
                               {mk_apps(lt_term(), {i, mk_num(ks[j])}), ext,
                                probe(j + 1, ext)});
              });
        });
  };
  return mk_lam("f", one, probe(0, mk_num(seq_empty())));
}

nsp::SemVal G0() { return barrec::G_double(); }

// ---------------------------------------------------------------------------
// Analysis

std::vector<Nat> AnalysisState::ks() const {
  std::vector<Nat> out;
  for (const auto& l : levels) out.push_back(l.k);
  return out;
}

std::vector<Nat> AnalysisState::ms() const {
  std::vector<Nat> out;
  for (const auto& l : levels) out.push_back(l.m);
  return out;
}

AnalysisState analyze(const nsp::SemVal& psi, const nsp::Budget& b,
                      int depth_cap, std::size_t entry_cap, long long k_cap) {
  nsp::SemVal G0v = G0();
  nsp::SemVal top_open = nsp::apply_sem(
      psi, {nsp::reflect("F", ty_two()), nsp::reflect("G", ty_two()),
            nsp::sem_num(seq_empty())});

  AnalysisState st;
  // Every recorded computation, kept for replays: the open tree is fixed
  // (and memoized), only the followed branch depends on the instantiation.
  std::vector<nsp::SemVal> opens;
  std::vector<TraceResult> recorded;
  std::size_t entries = 0;

  // Traces an open computation under (F_inst, G0), files its oracle calls
  // as entries of child_level, and records it for replays.
  auto record = [&](const nsp::SemVal& open, const nsp::SemVal& F_inst,
                    int child_level, int pl, char pk,
                    std::size_t pi) -> const TraceResult& {
    TraceResult t = trace_open(open, F_inst, G0v, b);
    for (std::size_t j = 0; j < t.calls.size(); ++j) {
      OracleTraceEntry e;
      e.oracle = t.calls[j].first;
      e.argument = t.arguments[j];
      e.outcome = t.calls[j].second;
      e.level = child_level;
      e.parent_level = pl;
      e.parent_oracle = pk;
      e.parent_index = pi;
      auto& lvl = st.levels[static_cast<std::size_t>(child_level)];
      (e.oracle == 'F' ? lvl.f : lvl.g).push_back(std::move(e));
      if (++entries > entry_cap)
        throw AnalysisInapplicable("analyze: entry cap exceeded");
    }
    opens.push_back(open);
    recorded.push_back(std::move(t));
    return recorded.back();
  };

  // Every recorded computation replays identically under F_inst.
  auto replays_ok = [&](const nsp::SemVal& F_inst) -> bool {
    for (std::size_t i = 0; i < opens.size(); ++i) {
      try {
        TraceResult t = trace_open(opens[i], F_inst, G0v, b);
        if (t.calls != recorded[i].calls || t.result != recorded[i].result)
          return false;
      } catch (const SeparationError&) {
        return false;
      }
    }
    return true;
  };

  st.levels.emplace_back();
  const TraceResult& top = record(top_open, F_stage({}), 0, -1, 'F', 0);
  st.c = top.result;
  st.top_path = top.calls;

  std::vector<Nat> ks;
  int w = 0;
  for (;;) {
    // k^w: smallest threshold in the doubling schedule whose truncation
    // preserves every recorded computation.
    std::optional<Nat> kw;
    for (long long k = 1; k <= k_cap; k *= 2) {
      std::vector<Nat> kk = ks;
      kk.emplace_back(static_cast<long>(k));
      if (replays_ok(F_trunc(kk))) {
        kw = Nat(static_cast<long>(k));
        break;
      }
    }
    if (!kw)
      throw AnalysisInapplicable("analyze: no truncation threshold below " +
                                 std::to_string(k_cap) + " at level " +
                                 std::to_string(w));
    ks.push_back(*kw);
    auto& lvl = st.levels[static_cast<std::size_t>(w)];
    lvl.k = *kw;
    // m^w > k^w + (number of G entries at levels <= w) + (w+1), and the
    // moduli never decrease.
    Nat nsum = 0;
    for (int u = 0; u <= w; ++u)
      nsum += Nat(static_cast<long>(
          st.levels[static_cast<std::size_t>(u)].g.size()));
    lvl.m = lvl.k + nsum + w + 2;
    if (w > 0)
      lvl.m = std::max(lvl.m, st.levels[static_cast<std::size_t>(w - 1)].m);

    // Probe every level-w argument under the next stage; its oracle calls
    // are the level-(w+1) entries.
    nsp::SemVal Fplus = F_stage(ks);
    st.levels.emplace_back();
    bool children = false;
    auto probe_entry = [&](OracleTraceEntry& e, char kind, std::size_t idx,
                           const Nat& zmax) {
      nsp::SemVal h = nsp::tosem(e.argument, {});
      for (Nat z = 0; z < zmax; ++z) {
        nsp::SemVal open = nsp::apply_sem(h, nsp::sem_num(z));
        const TraceResult& t = record(open, Fplus, w + 1, w, kind, idx);
        e.values.push_back(t.result);
        if (!t.calls.empty()) children = true;
      }
    };
    auto& cur = st.levels[static_cast<std::size_t>(w)];
    for (std::size_t i = 0; i < cur.f.size(); ++i)
      probe_entry(cur.f[i], 'F', i, Nat(w + 1));
    for (std::size_t i = 0; i < cur.g.size(); ++i)
      probe_entry(cur.g[i], 'G', i, cur.m);

    if (!children) {
      st.d = w;
      st.levels.pop_back();
      break;
    }
    ++w;
    if (w >= depth_cap)
      throw AnalysisInapplicable(
          "analyze: oracle calls persist at depth cap " +
          std::to_string(depth_cap) + "; candidate looks like a genuine"
          " recursor, the analysis does not apply");
  }

  st.F_infinity = F_stage(ks);
  st.F_infinity_term = f_stage_term(ks);
  return st;
}

// ---------------------------------------------------------------------------
// The critical path and G1

CriticalPath choose_critical_path(const AnalysisState& st,
                                  const nsp::Budget& b) {
  barrec::BarTree tree(st.F_infinity, barrec::Flavor::Kohlenbach, b);
  nsp::SemVal G0v = G0();
  auto phi0 = [&](const Nat& xs) {
    return barrec::reference_phi(tree, G0v, xs);
  };

  CriticalPath p;
  p.y.push_back(phi0(seq_add(seq_empty(), 0)));  // y_0 = phi0 <0>
  std::vector<Nat> forbidden;                    // the r^u_i0, u <= w
  Nat prefix = seq_empty();                      // <x_0..x_{w-1}>
  for (int w = 0; w <= st.d; ++w) {
    const auto& lvl = st.levels[static_cast<std::size_t>(w)];
    for (const auto& e : lvl.g) forbidden.push_back(e.values[0]);
    // Counting bound: the number of excluded candidates is strictly below
    // the window size m^w - k^w, guaranteed by the choice of the moduli.
    if (Nat(static_cast<long>(forbidden.size())) + (w + 1) >= lvl.m - lvl.k)
      throw SeparationError("choose_critical_path: counting bound violated");
    bool found = false;
    for (Nat x = lvl.k; x < lvl.m; ++x) {
      Nat cand = phi0(seq_add(seq_add(prefix, x), 0));
      if (std::find(forbidden.begin(), forbidden.end(), cand) !=
          forbidden.end())
        continue;
      Nat th = odd_part(cand);
      bool clash = false;
      for (const Nat& yv : p.y) clash = clash || odd_part(yv) == th;
      if (clash) continue;
      p.x.push_back(x);
      p.y.push_back(cand);
      prefix = seq_add(prefix, x);
      found = true;
      break;
    }
    if (!found)
      throw SeparationError(
          "choose_critical_path: no feasible coordinate at level " +
          std::to_string(w));
  }

  Nat mx = st.c;
  auto bump = [&mx](const Nat& n) { mx = std::max(mx, n); };
  for (const auto& lvl : st.levels) {
    bump(lvl.k);
    bump(lvl.m);
    for (const auto& es : {lvl.f, lvl.g})
      for (const auto& e : es) {
        bump(e.outcome);
        for (const Nat& q : e.values) bump(q);
      }
  }
  for (const Nat& x : p.x) bump(x);
  for (const Nat& y : p.y) bump(y);
  p.K = mx + 1;
  return p;
}

nsp::SemVal build_G1(const CriticalPath& p) {
  return nsp::sem_fun(ty_two(), [p](const nsp::SemVal& g) {
    return nsp::sem_ground(nsp::lz_seq(
        {nsp::apply_sem(g, nsp::sem_num(0))},
        [p, g](const std::vector<Nat>& ns, nsp::EvalCtx& ctx) -> nsp::Expr {
          Nat n0 = ns[0];
          for (std::size_t u = 0; u < p.y.size(); ++u) {
            if (n0 != p.y[u]) continue;
            if (u + 1 == p.y.size()) return nsp::ex_value(p.K);
            return nsp::lz_seq(
                       {nsp::apply_sem(g, nsp::sem_num(p.x[u]))},
                       [p, n0](const std::vector<Nat>& ms,
                               nsp::EvalCtx&) -> nsp::Expr {
                         if (ms[0] == p.K) return nsp::ex_value(p.K);
                         return nsp::ex_value(2 * n0);
                       })
                ->force(ctx);
          }
          return nsp::ex_value(2 * n0);
        }));
  });
}

TermPtr build_G1_term(const CriticalPath& p) {
  TypePtr one = ty_one();
  TermPtr g = mk_var("g", one);
  TermPtr body = strict_let(
      mk_app(g, mk_num(0)), [&p, &g](TermPtr s) -> TermPtr {
        TermPtr dbl = mk_apps(plus_str(), {s, s});
        TermPtr acc = dbl;
        for (std::size_t u = 0; u + 1 < p.y.size(); ++u) {
          TermPtr inner = strict_let(
              mk_app(g, mk_num(p.x[u])), [&p, dbl](TermPtr t) {
                return mk_apps(mk_ifzero(),
                               {mk_apps(eq_term(), {t, mk_num(p.K)}),
                                mk_num(p.K), dbl});
              });
          acc = mk_apps(mk_ifzero(),
                        {mk_apps(eq_term(), {s, mk_num(p.y[u])}), inner, acc});
        }
        return mk_apps(mk_ifzero(),
                       {mk_apps(eq_term(), {s, mk_num(p.y.back())}),
                        mk_num(p.K), acc});
      });
  return mk_lam("g", one, body);
}

// ---------------------------------------------------------------------------
// Neighbourhoods and securing

std::vector<CriticalNeighbourhood> neighbourhoods(const AnalysisState& st) {
  std::vector<CriticalNeighbourhood> out;
  for (std::size_t w = 0; w < st.levels.size(); ++w) {
    const auto& lvl = st.levels[w];
    for (std::size_t i = 0; i < lvl.g.size(); ++i) {
      CriticalNeighbourhood nb;
      nb.level = static_cast<int>(w);
      nb.index = i;
      nb.m = lvl.m;
      nb.r = lvl.g[i].values;
      nb.v = lvl.g[i].outcome;
      out.push_back(std::move(nb));
    }
  }
  return out;
}

nsp::SemVal neighbourhood_member(const CriticalNeighbourhood& nb) {
  return nsp::sem_fun(ty_one(), [nb](const nsp::SemVal& z) {
    return nsp::sem_ground(nsp::lz_seq(
        {z}, [nb](const std::vector<Nat>& ns, nsp::EvalCtx&) -> nsp::Expr {
          if (ns[0] < nb.m) return nsp::ex_value(nb.r[ns[0].get_ui()]);
          return nsp::ex_bottom();
        }));
  });
}

bool securing_check(const AnalysisState& st, const nsp::SemVal& psi,
                    const nsp::SemVal& G, const nsp::Budget& b,
                    std::string* why) {
  auto fail = [why](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  try {
    for (const auto& nb : neighbourhoods(st)) {
      nsp::Expr e =
          nsp::force(nsp::apply_sem(G, neighbourhood_member(nb)).ground, b);
      if (e.kind != nsp::Expr::Value || e.value != nb.v)
        return fail("G is not secured on the level-" +
                    std::to_string(nb.level) + " neighbourhood " +
                    std::to_string(nb.index));
    }
    nsp::Expr t = nsp::force(
        nsp::apply_sem(psi, {st.F_infinity, G, nsp::sem_num(seq_empty())})
            .ground,
        b);
    if (t.kind != nsp::Expr::Value)
      return fail("Psi F_inf G <> produced no numeral");
    if (t.value != st.c)
      return fail("Psi F_inf G <> = " + t.value.get_str() + ", expected " +
                  st.c.get_str());
    return true;
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
}

namespace {

using TablesPtr = std::shared_ptr<const std::vector<CriticalNeighbourhood>>;

// Adaptive reader: stops at the first completed table, so it never looks
// past the modulus of a neighbourhood whose member it is probing (partial
// members still get an answer). Overlapping tables agree, every v being
// twice the common first reading.
nsp::LazyPtr secured_read(const TablesPtr& tables, const Nat& M,
                          unsigned seed, const nsp::SemVal& g,
                          std::vector<Nat> prefix) {
  Nat L(static_cast<long>(prefix.size()));
  for (const auto& nb : *tables)
    if (nb.m == L && nb.r == prefix) return nsp::lz_value(nb.v);
  if (L >= M) {
    Nat h = seed;
    for (const Nat& p : prefix) h = h * 1000003 + p + 1;
    return nsp::lz_value(h);
  }
  return nsp::lz_seq(
      {nsp::apply_sem(g, nsp::sem_num(L))},
      [tables, M, seed, g, prefix](const std::vector<Nat>& ns,
                                   nsp::EvalCtx& ctx) {
        std::vector<Nat> next = prefix;
        next.push_back(ns[0]);
        return secured_read(tables, M, seed, g, std::move(next))->force(ctx);
      });
}

}  // namespace

nsp::SemVal random_secured_member(const AnalysisState& st, unsigned seed) {
  auto tables = std::make_shared<const std::vector<CriticalNeighbourhood>>(
      neighbourhoods(st));
  Nat M = 0;
  for (const auto& nb : *tables) M = std::max(M, nb.m);
  return nsp::sem_fun(ty_two(), [tables, M, seed](const nsp::SemVal& g) {
    return nsp::sem_ground(secured_read(tables, M, seed, g, {}));
  });
}

// ---------------------------------------------------------------------------
// Verification and the pipeline

SeparationReport verify_separation(const nsp::SemVal& psi,
                                   const AnalysisState& st,
                                   const CriticalPath& path,
                                   const nsp::SemVal& G1,
                                   const nsp::Budget& b, int phi_depth_cap) {
  SeparationReport rep;
  rep.c = st.c;
  rep.K = path.K;
  rep.d = st.d;
  rep.k = st.ks();
  rep.m = st.ms();
  rep.x = path.x;
  rep.y = path.y;

  auto note = [&rep](const std::string& msg) {
    if (rep.detail.empty()) rep.detail = msg;
  };

  // (a) G1 is secured: on the canonical member of every neighbourhood it
  // returns the recorded v (scrutiny stays below the modulus, so this is a
  // complete check, not a sample).
  rep.checks.neighbourhood = true;
  for (const auto& nb : neighbourhoods(st)) {
    nsp::Expr e =
        nsp::force(nsp::apply_sem(G1, neighbourhood_member(nb)).ground, b);
    if (e.kind != nsp::Expr::Value || e.value != nb.v) {
      rep.checks.neighbourhood = false;
      note("G1 not secured on level-" + std::to_string(nb.level) +
           " neighbourhood " + std::to_string(nb.index));
      break;
    }
  }

  // (b) the candidate still answers c.
  try {
    rep.psi_result = require_value(
        nsp::apply_sem(psi, {st.F_infinity, G1, nsp::sem_num(seq_empty())}),
        b, "verify: Psi F_inf G1 <>");
    rep.checks.psi_eval = rep.psi_result == st.c;
    if (!rep.checks.psi_eval)
      note("Psi F_inf G1 <> = " + rep.psi_result.get_str() + ", expected c = " +
           st.c.get_str());
  } catch (const std::exception& ex) {
    note(ex.what());
  }

  // (c) the reference recursor answers K, hitting every waypoint: on the
  // prefix <x_0..x_{w-1}> extended by 0 it gives y_w, on the prefix itself
  // it gives K.
  try {
    barrec::BarTree tree(st.F_infinity, barrec::Flavor::Kohlenbach, b);
    bool ok = true;
    Nat prefix = seq_empty();
    for (std::size_t w = 0; w < path.y.size(); ++w) {
      Nat at0 = barrec::reference_phi(tree, G1, seq_add(prefix, 0),
                                      phi_depth_cap);
      if (at0 != path.y[w]) {
        ok = false;
        note("phi1 misses waypoint y_" + std::to_string(w));
        break;
      }
      Nat atp = barrec::reference_phi(tree, G1, prefix, phi_depth_cap);
      if (atp != path.K) {
        ok = false;
        note("phi1 <x_0..x_" + std::to_string(w) + "> is not K");
        break;
      }
      if (w < path.x.size()) prefix = seq_add(prefix, path.x[w]);
    }
    rep.phi_result =
        barrec::reference_phi(tree, G1, seq_empty(), phi_depth_cap);
    rep.checks.phi_eval = ok && rep.phi_result == path.K;
  } catch (const std::exception& ex) {
    note(ex.what());
  }

  rep.pass = rep.checks.neighbourhood && rep.checks.psi_eval &&
             rep.checks.phi_eval && rep.c != rep.K;
  return rep;
}

SeparationReport run_separation(const nsp::SemVal& psi, const nsp::Budget& b,
                                int depth_cap, std::size_t entry_cap) {
  AnalysisState st = analyze(psi, b, depth_cap, entry_cap);
  CriticalPath path = choose_critical_path(st, b);
  nsp::SemVal G1 = build_G1(path);
  return verify_separation(psi, st, path, G1, b);
}

std::optional<std::string> gate_candidate(const TermPtr& candidate) {
  if (nsp::lwf_by_construction(candidate)) return std::nullopt;
  return "candidate is not a term of T+min or W, so it carries no"
         " left-well-foundedness certificate";
}

std::optional<std::string> gate_candidate(const nsp::ProcPtr& candidate,
                                          int depth_bound,
                                          const nsp::Budget& b) {
  nsp::LwfResult r = nsp::lwf_probe(candidate, depth_bound, b);
  if (!r.chain_found) return std::nullopt;
  return "left-well-foundedness probe found a nested application chain"
         " deeper than " +
         std::to_string(depth_bound);
}

SeparationReport run_separation_term(const TermPtr& candidate,
                                     const nsp::AccelTable& accel,
                                     const nsp::Budget& b, int depth_cap,
                                     std::size_t entry_cap) {
  if (auto reason = gate_candidate(candidate))
    throw SeparationError("candidate rejected: " + *reason);
  nsp::SemVal psi = nsp::denote_sem(candidate, accel);
  return run_separation(psi, b, depth_cap, entry_cap);
}

// ---------------------------------------------------------------------------
// The truncated-recursor family

TermPtr make_truncated_candidate(int D) {
  TypePtr one = ty_one();
  TypePtr two = ty_two();
  TermPtr F = mk_var("F", two);
  TermPtr G = mk_var("G", two);
  auto x_at = [](int j) {
    return mk_var("x" + std::to_string(j), ty_nat());
  };
  // B_0 x = leaf x;
  // B_{j+1} x = if F [x 0^w] = F [x 1^w] then leaf x
  //             else G (\z. B_j (add x z))
  TermPtr body = mk_app(leaf_rec(), x_at(0));
  TermPtr B = mk_lam("x0", ty_nat(), body);
  for (int j = 1; j <= D; ++j) {
    TermPtr x = x_at(j);
    TermPtr guard = mk_apps(
        eq_rec(), {mk_app(F, mk_apps(basic_rec(), {x, mk_num(0)})),
                   mk_app(F, mk_apps(basic_rec(), {x, mk_num(1)}))});
    TermPtr inner = mk_app(
        G, mk_lam("z", ty_nat(),
                  mk_app(B, mk_apps(add_rec(),
                                    {x, mk_var("z", ty_nat())}))));
    B = mk_lam("x" + std::to_string(j), ty_nat(),
               mk_apps(mk_ifzero(),
                       {guard, mk_app(leaf_rec(), x), inner}));
  }
  return mk_lam("F", two, mk_lam("G", two, B));
}

}  // namespace separation
}  // namespace nsplab
