#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsplab {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

// Simple types over nat, with arrows and binary products.
struct Type {
  enum Kind { Nat, Arrow, Product };
  Kind kind;
  TypePtr left;   // domain / first component
  TypePtr right;  // codomain / second component
};

TypePtr ty_nat();
TypePtr ty_arrow(TypePtr dom, TypePtr cod);
TypePtr ty_product(TypePtr a, TypePtr b);
TypePtr ty_arrows(const std::vector<TypePtr>& doms, TypePtr cod);

bool type_equal(const TypePtr& a, const TypePtr& b);
int type_level(const TypePtr& t);
bool type_cross_free(const TypePtr& t);
TypePtr pure_type(int k);

// Splits t = a1 -> ... -> ar -> nat into argument list; throws if the final
// result type is not nat (only used on cross-free types).
std::vector<TypePtr> arrow_args(const TypePtr& t);

std::string show_type(const TypePtr& t);

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nsplab
