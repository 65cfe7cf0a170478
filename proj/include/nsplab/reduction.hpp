#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsplab/lang.hpp"
#include "nsplab/term.hpp"

namespace nsplab {

constexpr long long kDefaultFuel = 1000000;

struct StepRecord {
  TermPtr term;      // term after the step
  std::string rule;  // name of the displayed rule that fired
  std::string path;  // evaluation-context path to the redex
};

struct StepTrace {
  enum Outcome { Value, FuelExhausted, Stuck };
  Outcome outcome;
  Nat value;                 // when outcome == Value
  std::string stuck_reason;  // when outcome == Stuck
  long long steps_taken = 0;
  std::vector<StepRecord> steps;  // populated only when tracing is requested
  TermPtr final_term;
};

// One small step under the evaluation-context discipline, or nullopt for a
// normal form. Throws TypeError if m is not in lang.
std::optional<StepRecord> step(const TermPtr& m, const LangTag& lang);

// Iterated stepping. Requires fuel > 0. When record_steps is set the full
// step list is kept (memory-proportional to trace length).
StepTrace evaluate(const TermPtr& m, const LangTag& lang,
                   long long fuel = kDefaultFuel, bool record_steps = false);

struct DistinctnessWitness {
  std::vector<TermPtr> args;
  StepTrace left, right;
};

// Bounded observational-difference search over a corpus of closed argument
// tuples; a nullopt result is evidence, not proof, of equivalence.
std::optional<DistinctnessWitness> observationally_distinct_witness(
    const TermPtr& m, const TermPtr& mp, const LangTag& lang,
    const std::vector<std::vector<TermPtr>>& corpus,
    long long fuel = kDefaultFuel);

}  // namespace nsplab
