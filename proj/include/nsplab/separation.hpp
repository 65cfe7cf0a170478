#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsplab/nat.hpp"
#include "nsplab/nsp.hpp"
#include "nsplab/term.hpp"

namespace nsplab {
namespace separation {

// Constructive separation. Given a left-well-founded candidate
// Psi : ((nat->nat)->nat) -> ((nat->nat)->nat) -> nat -> nat that claims to
// be a bar recursor (simplified interface, leaf value 2x+1), synthesize a
// functional F_inf and a functional G1 on which Psi must disagree with
// genuine bar recursion: Psi F_inf G1 <> returns the value c it is committed
// to on a whole neighbourhood of G's, while the real recursor threads a
// fresh flag value K through the tree of F_inf.

struct SeparationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The candidate escaped the analysis: a probe diverged or hit bottom, a cap
// was exhausted, or new oracle calls kept appearing below the depth cap.
// A genuine bar recursor lands here; the analysis never fabricates a
// separation report for it.
struct AnalysisInapplicable : SeparationError {
  using SeparationError::SeparationError;
};

// One oracle call on a traced head-reduction path. The argument is the
// type-1 procedure handed to the oracle, with F and G still free in it.
struct OracleTraceEntry {
  char oracle = 'F';             // 'F' or 'G'
  nsp::ProcPtr argument;         // f^w_i or g^w_i
  Nat outcome;                   // u^w_i or v^w_i
  int level = 0;                 // w
  int parent_level = -1;         // -1: spawned by the top-level computation
  char parent_oracle = 'F';
  std::size_t parent_index = 0;  // index into the parent level's entry list
  // Subcomputation results: q^w_iz for z <= level (F entries),
  // r^w_iz for z < m^level (G entries). Filled by analyze.
  std::vector<Nat> values;
};

struct TraceResult {
  std::vector<std::pair<char, Nat>> calls;  // (oracle, outcome) along the path
  std::vector<nsp::ProcPtr> arguments;      // parallel to calls
  Nat result;
};

// Head-reduce an open ground value (free F, G) and log every oracle call in
// order. Branch selection instantiates the call's argument under
// (F_inst, G_inst). Throws AnalysisInapplicable when the path hits bottom,
// exhausts the budget, or an oracle call fails to yield a numeral.
TraceResult trace_open(const nsp::SemVal& open_ground,
                       const nsp::SemVal& F_inst, const nsp::SemVal& G_inst,
                       const nsp::Budget& b, std::size_t call_cap = 4096);

// Trace of the top-level computation Psi F G <>.
TraceResult trace_toplevel(const nsp::SemVal& psi, const nsp::SemVal& F_inst,
                           const nsp::SemVal& G_inst, const nsp::Budget& b);

// Staged truncations of the sequence-reading functional:
//   F_stage(ks) = \f. case f 0 of (i0 < ks[0] => <i0> | _ => case f 1 of
//                 (i1 < ks[1] => <i0,i1> | _ => ... case f w of iw =>
//                 <i0..iw>))                                    (total)
//   F_trunc(ks) = the same, except the last threshold bounds the final
//                 coordinate: at or above it the result is bottom.
// F_stage({}) is \f. <f 0>.
nsp::SemVal F_stage(const std::vector<Nat>& ks);
nsp::SemVal F_trunc(const std::vector<Nat>& ks);
// The same functional as F_stage(ks), written as a closed T0str program.
TermPtr f_stage_term(const std::vector<Nat>& ks);

nsp::SemVal G0();  // \g. 2 * g 0

struct AnalysisLevel {
  std::vector<OracleTraceEntry> f, g;  // call occurrences at this level
  Nat k;                               // truncation threshold k^w
  Nat m;                               // probe modulus m^w
};

struct AnalysisState {
  Nat c;                                    // value of Psi F_inf G0 <>
  int d = 0;                                // deepest analyzed level
  std::vector<AnalysisLevel> levels;        // 0..d
  std::vector<std::pair<char, Nat>> top_path;  // top-level oracle calls
  nsp::SemVal F_infinity;                   // = F_stage(k^0..k^d)
  TermPtr F_infinity_term;                  // the same functional in T0str
  std::vector<Nat> ks() const;
  std::vector<Nat> ms() const;
};

// The level-by-level analysis: trace the top-level computation, then for
// each level choose the smallest threshold (doubling schedule, capped) whose
// truncation replays every recorded computation unchanged, fix the probe
// modulus m^w, and probe every level-w argument below it under the next
// stage. Bottoms out at the first level whose probes make no oracle calls.
AnalysisState analyze(const nsp::SemVal& psi, const nsp::Budget& b = {},
                      int depth_cap = 8, std::size_t entry_cap = 4096,
                      long long k_cap = 1 << 16);

struct CriticalPath {
  std::vector<Nat> x;  // x_0..x_d with x_w in [k^w, m^w)
  std::vector<Nat> y;  // y_0..y_{d+1}: reference values along the path
  Nat K;               // fresh flag value, larger than every recorded numeral
};

// y_0 = phi0 <0>, y_{w+1} = phi0 <x_0..x_w,0> where phi0 is the reference
// recursor on (F_inf, G0); each x_w is the smallest feasible coordinate
// whose y avoids all recorded r^u_i0 and has a fresh odd part.
CriticalPath choose_critical_path(const AnalysisState& st,
                                  const nsp::Budget& b = {});

// G1 = \g. case g 0 of (y_{d+1} => K
//                      | y_w => (case g x_w of K => K | _ => 2 * g 0)
//                      | _ => 2 * g 0)
nsp::SemVal build_G1(const CriticalPath& p);
TermPtr build_G1_term(const CriticalPath& p);  // the same functional in T0str

// Critical neighbourhood of a G entry: every g agreeing with its table
// r^w_i below m^w. A functional G is secured when G g = v^w_i on each
// neighbourhood (it then cannot distinguish the truncation from a genuine
// continuation) -- decidable because any secured scrutiny stays below m^w.
struct CriticalNeighbourhood {
  int level = 0;
  std::size_t index = 0;  // which G entry of the level
  Nat m;                  // constrained coordinates: z < m
  std::vector<Nat> r;     // required values r^w_iz
  Nat v;                  // required result v^w_i
};
std::vector<CriticalNeighbourhood> neighbourhoods(const AnalysisState& st);

// The canonical member of a neighbourhood: z -> r_z below m, bottom above.
nsp::SemVal neighbourhood_member(const CriticalNeighbourhood& nb);

// True when G returns v on the canonical member of every neighbourhood and
// Psi F_inf G <> still evaluates to c (the securing property).
bool securing_check(const AnalysisState& st, const nsp::SemVal& psi,
                    const nsp::SemVal& G, const nsp::Budget& b = {},
                    std::string* why = nullptr);

// A seeded member of the secured intersection: reads g 0, g 1, ... until
// the readings complete some neighbourhood table (then answers its v; the
// results of overlapping tables agree, all being 2 * g 0) and hashes the
// readings once every table is exhausted.
nsp::SemVal random_secured_member(const AnalysisState& st, unsigned seed);

struct SeparationChecks {
  bool neighbourhood = false;  // G1 is secured on every neighbourhood
  bool psi_eval = false;       // Psi F_inf G1 <> = c
  bool phi_eval = false;       // reference recursor gives K via the y_w's
};

struct SeparationReport {
  Nat c, K;
  int d = 0;
  std::vector<Nat> k, m, x, y;
  Nat psi_result, phi_result;
  SeparationChecks checks;
  bool pass = false;
  std::string detail;  // first failure, for the log
};

SeparationReport verify_separation(const nsp::SemVal& psi,
                                   const AnalysisState& st,
                                   const CriticalPath& path,
                                   const nsp::SemVal& G1,
                                   const nsp::Budget& b = {},
                                   int phi_depth_cap = 64);

// analyze + choose_critical_path + build_G1 + verify_separation.
SeparationReport run_separation(const nsp::SemVal& psi,
                                const nsp::Budget& b = {}, int depth_cap = 8,
                                std::size_t entry_cap = 4096);

// Left-well-foundedness gate. A term is admitted when it lies in T+min or
// W; a raw procedure is probed for nested-application chains. Returns the
// rejection reason, or nullopt when admitted.
std::optional<std::string> gate_candidate(const TermPtr& candidate);
std::optional<std::string> gate_candidate(const nsp::ProcPtr& candidate,
                                          int depth_bound,
                                          const nsp::Budget& b = {});

// Gate the term, denote it, and run the pipeline. Throws SeparationError
// when the gate rejects.
SeparationReport run_separation_term(const TermPtr& candidate,
                                     const nsp::AccelTable& accel,
                                     const nsp::Budget& b = {},
                                     int depth_cap = 8,
                                     std::size_t entry_cap = 4096);

// Truncated-recursor family: behaves like the canonical simplified
// recursor on trees of depth < D and returns the leaf value unconditionally
// at depth D. A term of T (hence of T+min, hence admitted by the gate),
// with the sequence programs in their rec flavour.
TermPtr make_truncated_candidate(int D);

}  // namespace separation
}  // namespace nsplab
