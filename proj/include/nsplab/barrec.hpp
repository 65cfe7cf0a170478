#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsplab/nat.hpp"
#include "nsplab/nsp.hpp"
#include "nsplab/seqcode.hpp"
#include "nsplab/term.hpp"

namespace nsplab {
namespace barrec {

// Bar recursion over sequence codes. F ranges over type-2 values
// ((nat -> nat) -> nat); a node of the tree of F is a sequence code xs.

enum class Flavor { Spector, Kohlenbach };

struct BarrecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// F (or another functional) failed to yield a numeral on a probed input.
struct UndefinedBarCondition : BarrecError {
  using BarrecError::BarrecError;
};
// A recursion or search cap was hit.
struct CapExceeded : BarrecError {
  using BarrecError::BarrecError;
};

// Bar condition at xs:
//   Spector:    F([xs 0^w]) < |xs|
//   Kohlenbach: F([xs 0^w]) = F([xs 1^w])
// computed by applying F to native eventually-constant functions. Throws
// UndefinedBarCondition if an application fails to resolve to a numeral.
bool bar_condition(const nsp::SemVal& F, const Nat& xs, Flavor flavor,
                   const nsp::Budget& b = {});

// The tree T(F): xs is a member iff no proper prefix of xs satisfies the
// bar condition; a member is a leaf iff its own condition holds. Bar
// conditions are memoized per node.
class BarTree {
 public:
  BarTree(nsp::SemVal F, Flavor flavor, nsp::Budget b = {});
  bool condition(const Nat& xs);
  bool member(const Nat& xs);
  bool leaf(const Nat& xs);      // member whose condition holds
  bool internal(const Nat& xs);  // member whose condition fails
  Flavor flavor() const { return flavor_; }
  const nsp::SemVal& F() const { return F_; }
  const nsp::Budget& budget() const { return budget_; }

 private:
  nsp::SemVal F_;
  Flavor flavor_;
  nsp::Budget budget_;
  std::map<Nat, bool> cond_memo_;
};

struct ExploreCaps {
  int depth = 32;           // longest path probed from the root
  long long window = 64;    // child labels probed at each internal node
};

// Verdicts of bounded exploration:
//   WellFoundedUpToCaps - every probed path ends in a leaf
//   InfinitePathWitness - a probed path of defined, failing bar conditions
//                         reaches the depth cap (candidate infinite path)
//   Exceeded            - a probe failed to resolve within the budget
enum class TreeVerdict { WellFoundedUpToCaps, InfinitePathWitness, Exceeded };

struct ExploreResult {
  TreeVerdict verdict = TreeVerdict::WellFoundedUpToCaps;
  std::vector<Nat> internal_nodes;  // in discovery (depth-first) order
  std::vector<Nat> leaves;
  std::vector<Nat> offending_path;  // path behind a non-well-founded verdict
};

ExploreResult explore_tree(BarTree& t, const ExploreCaps& caps = {});

// The canonical bar recursor as a closed PCF+byval term of type
//   ((nat->nat)->nat) -> (nat->nat) -> (nat -> (nat->nat) -> nat) -> nat -> nat
// built as Y_(nat->nat) of one unfolding step; the guard is the flavor's
// bar condition, the sequence primitives are the translated T0str programs.
TermPtr canonical_br(Flavor flavor);

// canonical_br specialized to L x = 2x+1 and a node-independent G, of the
// simplified type ((nat->nat)->nat) -> ((nat->nat)->nat) -> nat -> nat.
TermPtr canonical_br_simplified(Flavor flavor);

// Trusted host-level reference recursor (simplified form, L x = 2x+1):
// on a leaf xs of T(F) the value is 2*xs+1, on an internal node it is
// G (\z. phi(F, G, add xs z)). G has type (nat->nat)->nat. Throws
// CapExceeded past depth_cap, UndefinedBarCondition when a functional
// fails to produce a numeral, BarrecError when xs is not in the tree.
Nat reference_phi(BarTree& t, const nsp::SemVal& G, const Nat& xs,
                  int depth_cap = 64);

// Unsimplified form: leaf value L xs, internal value G xs (\z. ...), with
// L : nat->nat and G : nat -> (nat->nat) -> nat.
Nat reference_br(BarTree& t, const nsp::SemVal& L, const nsp::SemVal& G,
                 const Nat& xs, int depth_cap = 64);

// A host-level candidate recursor in the simplified interface.
using HostRecursor = std::function<Nat(
    const nsp::SemVal& F, const nsp::SemVal& G, const Nat& xs)>;

// Turns a Spector-style recursor into a Kohlenbach-style one:
//   U(F) = \g. (min r. F[g0..g(r-1) 0^w] = F[.. 1^w]) - 1
//   Phi^K(F,G,xs) = if F[0^w] = F[1^w] then leaf value else Phi^S(U(F),G,xs).
// The min search throws CapExceeded past search_cap.
HostRecursor spector_to_kohlenbach_bridge(HostRecursor phi_s,
                                          const nsp::Budget& b = {},
                                          long long search_cap = 4096);

// Conformance of a candidate Psi : 2 -> 2 -> 1 against the defining
// equations on every explored node of each battery tree: leaves must give
// 2*xs+1, internal nodes must give G (\z. Psi F G (add xs z)) with the
// inner calls going through Psi itself.
struct ConformanceViolation {
  std::size_t pair_index = 0;
  Nat node;
  std::string kind;  // "leaf-value" | "internal-value" | "undefined" | "tree"
  std::optional<Nat> expected, actual;
};

struct ConformanceReport {
  bool pass = false;
  long long nodes_checked = 0;
  std::vector<ConformanceViolation> violations;
};

ConformanceReport conformance_check(
    const nsp::SemVal& psi,
    const std::vector<std::pair<nsp::SemVal, nsp::SemVal>>& battery,
    Flavor flavor, const ExploreCaps& caps = {}, const nsp::Budget& b = {});

// Standard battery members.
nsp::SemVal F_const(const Nat& n);  // \f. n
nsp::SemVal F_plus0();              // \f. <f 0>
nsp::SemVal F_plus(const Nat& k0);  // \f. if f 0 < k0 then <f 0> else <f 0, f 1>
nsp::SemVal F_mix();                // \f. <f (f 0)>
nsp::SemVal G_double();             // \g. 2 * g 0
nsp::SemVal G_affine();             // \g. g 1 + 2 * g 0
std::vector<std::pair<nsp::SemVal, nsp::SemVal>> standard_battery();

// Acceleration table with native denotations for the sequence and
// arithmetic programs (plus/monus/lt/eq/len/add/basic/leaf), keyed by both
// the T0str terms and their PCF+byval translations.
nsp::AccelTable standard_accel();

}  // namespace barrec
}  // namespace nsplab
