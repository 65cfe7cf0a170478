#pragma once

#include <functional>
#include <vector>

#include "nsplab/nat.hpp"
#include "nsplab/term.hpp"

namespace nsplab {

// Sequence coding: code(<>) = 0, code(xs.z) = cantor(code(xs), z) + 1.
// Every natural decodes to exactly one sequence.
Nat seq_empty();
Nat seq_add(const Nat& code, const Nat& z);
Nat seq_encode(const std::vector<Nat>& xs);
std::vector<Nat> seq_decode(const Nat& code);
Nat seq_len(const Nat& code);
Nat seq_index(const Nat& code, const Nat& i);  // throws on out of range
// The eventually constant function [xs j^w] sampled at i.
Nat basic_at(const Nat& code, const Nat& j, const Nat& i);

// Closed T0str programs computing the same functions at the term level:
//   len  : nat -> nat           len <xs> = |xs|
//   add  : nat -> nat -> nat    add <xs> z = <xs.z>
//   basic: nat -> nat -> nat -> nat   basic <xs> j i = [xs j^w](i)
// together with arithmetic and comparisons (0 plays "true"):
//   lt a b = 0 iff a < b; eq a b = 0 iff a = b; leaf x = 2x+1.
TermPtr plus_str();
TermPtr monus_str();
TermPtr lt_term();
TermPtr eq_term();
TermPtr len_term();
TermPtr add_term();
TermPtr basic_term();
TermPtr leaf_term();

// The same programs built on the non-strict recursor of T, for embedding in
// T / T+min terms. rec substitutes its recursive call textually, so these
// are extensionally identical but slower under term reduction; the
// acceleration table covers both flavours.
TermPtr plus_rec();
TermPtr monus_rec();
TermPtr lt_rec();
TermPtr eq_rec();
TermPtr len_rec();
TermPtr add_rec();
TermPtr basic_rec();
TermPtr leaf_rec();

// let x = e in body(x) as a strict T0str program: rec-str e (\x m. body x) 1
// forces e to a numeral once and substitutes the numeral into the body.
TermPtr strict_let(TermPtr e, const std::function<TermPtr(TermPtr)>& body);

}  // namespace nsplab
