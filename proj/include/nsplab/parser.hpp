#pragma once

#include <stdexcept>
#include <string>

#include "nsplab/term.hpp"

namespace nsplab {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses a type in concrete syntax: nat | (-> s t ...) | (* s t).
TypePtr parse_type(const std::string& text);

// Parses a term in concrete syntax; throws ParseError (with position) or
// TypeError. Binders are annotated, so no inference is performed.
TermPtr parse_term(const std::string& text);

// Reads a term from a file (ignores ;-to-end-of-line comments).
TermPtr parse_term_file(const std::string& path);

}  // namespace nsplab
