#pragma once

#include <optional>
#include <string>

#include "nsplab/term.hpp"

namespace nsplab {

// Language tags. Base B is the simply typed core (products, numerals, suc,
// pre, ifzero); the others extend it with the constants listed below.
struct LangTag {
  enum Base {
    B,          // no extra constants
    PCF,        // Y
    PCF_byval,  // Y, byval
    T,          // rec
    T_min,      // rec, min
    W,          // while
    T0_str,     // rec-str, byval^eps_nat
    T0_str_min, // rec-str, byval^eps_nat, min
    W0_str,     // while-str, byval^eps_nat
  };
  Base base = B;
  // Optional level cap k (PCF_k / T_k / W_k): the type parameter of
  // Y/rec/while must have level <= k.
  std::optional<int> cap;
};

// Parses tags like "b", "pcf", "pcf+byval", "t", "t+min", "w", "t0str",
// "t0str+min", "w0str", optionally suffixed "@k" for a level cap.
std::optional<LangTag> parse_lang_tag(const std::string& s);
std::string show_lang_tag(const LangTag& tag);

// Returns std::nullopt if m is a term of the language, otherwise a
// human-readable description of the first violation found.
std::optional<std::string> membership_violation(const TermPtr& m,
                                                const LangTag& tag);
bool in_language(const TermPtr& m, const LangTag& tag);

}  // namespace nsplab
