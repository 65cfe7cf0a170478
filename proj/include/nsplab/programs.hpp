#pragma once

#include "nsplab/term.hpp"

namespace nsplab {

// The byval_[sigma] forcing operator for level-0 sigma, generalized to an
// arbitrary result type rho: BV(sigma, rho) : (sigma -> rho) -> sigma -> rho.
//   BV(nat, nat)      = byval^eps_nat (the primitive)
//   BV(nat, rho)      = \f n. ifzero_rho n (f n) (f n)   (rho != nat)
//   BV(sigma*tau,rho) = \f x. BV(sigma,rho)(\y. BV(tau,rho)(\z. f<y,z>)(snd x))(fst x)
// The product clause needs the heterogeneous result type to type-check;
// the nat/rho clause forces its argument exactly like byval does.
TermPtr byval_bracket(const TypePtr& sigma, const TypePtr& rho);

// Convenience: byval_[sigma] at result sigma (the operator the strict
// reduction rules use).
TermPtr byval_bracket(const TypePtr& sigma);

}  // namespace nsplab
