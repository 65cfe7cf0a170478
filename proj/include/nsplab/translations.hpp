#pragma once

#include "nsplab/lang.hpp"
#include "nsplab/term.hpp"

namespace nsplab {

// PCF+byval programs implementing the looping constants. While_prog is the
// self-unfolding fixed point (single-step simulation holds on the nose);
// Rec_prog and Min_prog follow the byval-sequenced definitions exactly.
TermPtr While_prog(const TypePtr& sigma);
TermPtr Rec_prog(const TypePtr& sigma);
TermPtr Min_prog();
TermPtr RecStr_prog(const TypePtr& sigma);
TermPtr WhileStr_prog(const TypePtr& sigma);

// W programs for the T+min constants (Rec', Min') and the T+min program for
// while (While'), together with the arithmetic they rely on.
TermPtr plus_w();
TermPtr monus_w();
TermPtr neq_w();  // neq a b = 0 iff a != b (0 plays "true")
TermPtr RecP_prog(const TypePtr& sigma);
TermPtr MinP_prog();
TermPtr plus_t();
TermPtr monus_t();
TermPtr neq_t();
TermPtr WhileP_prog(const TypePtr& sigma);

// Constant-replacing translations.
// -o : W / T+min / T0str(+min) / W0str  ->  PCF+byval (lock-step for W, T+min)
TermPtr to_pcf(const TermPtr& m, const LangTag& source);
// -dagger : T+min -> W (ground faithfulness only)
TermPtr t_min_to_w(const TermPtr& m);
// -ddagger : W -> T+min (ground faithfulness only)
TermPtr w_to_t_min(const TermPtr& m);

// Product elimination. hat(nat) = nat, hat(s->t) = hat s -> hat t,
// hat(s*t) = nat -> join(hat s, hat t) with join interleaving argument
// lists. Requires m closed with cross-free type; strict constants whose
// type parameter mentions a product are rejected.
TypePtr hat_type(const TypePtr& t);
TermPtr enc_term(const TypePtr& t);  // t -> hat t
TermPtr dec_term(const TypePtr& t);  // hat t -> t
TermPtr eliminate_products(const TermPtr& m);

}  // namespace nsplab
