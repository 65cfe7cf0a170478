#include "nsplab/type.hpp"

#include <algorithm>

namespace nsplab {

TypePtr ty_nat() {
  static const TypePtr n = std::make_shared<Type>(Type{Type::Nat, nullptr, nullptr});
  return n;
}

TypePtr ty_arrow(TypePtr dom, TypePtr cod) {
  return std::make_shared<Type>(Type{Type::Arrow, std::move(dom), std::move(cod)});
}

TypePtr ty_product(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{Type::Product, std::move(a), std::move(b)});
}

TypePtr ty_arrows(const std::vector<TypePtr>& doms, TypePtr cod) {
  TypePtr t = std::move(cod);
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) t = ty_arrow(*it, t);
  return t;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  if (a->kind == Type::Nat) return true;
  return type_equal(a->left, b->left) && type_equal(a->right, b->right);
}

int type_level(const TypePtr& t) {
  switch (t->kind) {
    case Type::Nat:
      return 0;
    case Type::Arrow:
      return std::max(type_level(t->left) + 1, type_level(t->right));
    case Type::Product:
      return std::max(type_level(t->left), type_level(t->right));
  }
  return 0;
}

bool type_cross_free(const TypePtr& t) {
  switch (t->kind) {
    case Type::Nat:
      return true;
    case Type::Arrow:
      return type_cross_free(t->left) && type_cross_free(t->right);
    case Type::Product:
      return false;
  }
  return true;
}

TypePtr pure_type(int k) {
  TypePtr t = ty_nat();
  for (int i = 0; i < k; ++i) t = ty_arrow(t, ty_nat());
  return t;
}

std::vector<TypePtr> arrow_args(const TypePtr& t) {
  std::vector<TypePtr> args;
  const Type* cur = t.get();
  TypePtr hold = t;
  while (hold->kind == Type::Arrow) {
    args.push_back(hold->left);
    hold = hold->right;
  }
  (void)cur;
  if (hold->kind != Type::Nat)
    throw TypeError("arrow_args: result type is not nat: " + show_type(t));
  return args;
}

std::string show_type(const TypePtr& t) {
  switch (t->kind) {
    case Type::Nat:
      return "nat";
    case Type::Arrow:
      return "(-> " + show_type(t->left) + " " + show_type(t->right) + ")";
    case Type::Product:
      return "(* " + show_type(t->left) + " " + show_type(t->right) + ")";
  }
  return "?";
}

}  // namespace nsplab
