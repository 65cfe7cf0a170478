#pragma once

#include <vector>

#include "nsplab/lang.hpp"
#include "nsplab/term.hpp"

namespace nsplab {
namespace corpus {

// Deterministic pseudo-random closed terms of type nat in the given
// language (supported bases: B, PCF, PCF+byval, T, T+min, W). The same
// (tag, seed, size) always yields the same term list. Every term is closed,
// well-typed and passes the language membership check; apart from a few
// designated divergers (at most one in eight terms, only in the partial
// languages) every term reduces to a numeral quickly.
// `depth` bounds the nesting of generated expressions; smaller depths keep
// the terms cheap under the cost-amplifying translations.
std::vector<TermPtr> generate(const LangTag& tag, unsigned long long seed,
                              int size, int depth = 3);

}  // namespace corpus
}  // namespace nsplab
