#include "nsplab/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <vector>

namespace nsplab {

namespace {

struct Sexp {
  bool atom;
  std::string text;          // atom payload
  std::vector<Sexp> items;   // list payload
  int line = 0, col = 0;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (pos < src.size() && src[pos] == '\n') { ++line; col = 1; }
    else ++col;
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == ';') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at " + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + msg);
  }

  Sexp read() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    Sexp s;
    s.line = line;
    s.col = col;
    char c = src[pos];
    if (c == '(') {
      advance();
      s.atom = false;
      while (true) {
        skip_ws();
        if (pos >= src.size()) fail("unclosed '('");
        if (src[pos] == ')') { advance(); break; }
        s.items.push_back(read());
      }
      return s;
    }
    if (c == ')') fail("unexpected ')'");
    s.atom = true;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')' && src[pos] != ';') {
      s.text += src[pos];
      advance();
    }
    return s;
  }
};

[[noreturn]] void fail_at(const Sexp& s, const std::string& msg) {
  throw ParseError("parse error at " + std::to_string(s.line) + ":" +
                   std::to_string(s.col) + ": " + msg);
}

bool looks_like_type(const Sexp& s) {
  if (s.atom) return s.text == "nat";
  return !s.items.empty() && s.items[0].atom &&
         (s.items[0].text == "->" || s.items[0].text == "*");
}

TypePtr type_of_sexp(const Sexp& s) {
  if (s.atom) {
    if (s.text == "nat") return ty_nat();
    fail_at(s, "expected a type, got '" + s.text + "'");
  }
  if (s.items.empty() || !s.items[0].atom) fail_at(s, "expected a type");
  const std::string& h = s.items[0].text;
  if (h == "->") {
    if (s.items.size() < 3) fail_at(s, "(-> ...) needs at least two types");
    TypePtr t = type_of_sexp(s.items.back());
    for (size_t i = s.items.size() - 1; i-- > 1;)
      t = ty_arrow(type_of_sexp(s.items[i]), t);
    return t;
  }
  if (h == "*") {
    if (s.items.size() != 3) fail_at(s, "(* ...) needs exactly two types");
    return ty_product(type_of_sexp(s.items[1]), type_of_sexp(s.items[2]));
  }
  fail_at(s, "expected a type, got '(" + h + " ...)'");
}

bool is_keyword(const std::string& t) {
  return t == "lam" || t == "app" || t == "pair" || t == "fst" || t == "snd" ||
         t == "suc" || t == "pre" || t == "ifzero" || t == "Y" ||
         t == "while" || t == "rec" || t == "min" || t == "byval" ||
         t == "rec-str" || t == "while-str" || t == "nat" || t == "->" ||
         t == "*";
}

bool is_numeral(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

using Scope = std::map<std::string, TypePtr>;

TermPtr term_of_sexp(const Sexp& s, Scope& scope);

TermPtr apply_rest(TermPtr head, const Sexp& s, size_t from, Scope& scope) {
  for (size_t i = from; i < s.items.size(); ++i)
    head = mk_app(std::move(head), term_of_sexp(s.items[i], scope));
  return head;
}

// Typed-constant list forms: (Y s), (while s), (rec s), (rec-str s),
// (while-str s), (ifzero s), (byval (s...) t); extra elements are
// application sugar.
TermPtr const_form(const Sexp& s, Scope& scope) {
  const std::string& h = s.items[0].text;
  if (h == "byval") {
    if (s.items.size() < 3) fail_at(s, "(byval (s...) t) needs two type arguments");
    const Sexp& vec = s.items[1];
    if (vec.atom) fail_at(vec, "byval expects a list of parameter types");
    std::vector<TypePtr> sigmas;
    for (const auto& it : vec.items) sigmas.push_back(type_of_sexp(it));
    TermPtr c = mk_byval(std::move(sigmas), type_of_sexp(s.items[2]));
    return apply_rest(std::move(c), s, 3, scope);
  }
  if (s.items.size() < 2 || !looks_like_type(s.items[1]))
    fail_at(s, "(" + h + " s) expects a type parameter");
  TypePtr sigma = type_of_sexp(s.items[1]);
  TermPtr c;
  if (h == "Y") c = mk_Y(sigma);
  else if (h == "while") c = mk_while(sigma);
  else if (h == "rec") c = mk_rec(sigma);
  else if (h == "rec-str") c = mk_rec_str(sigma);
  else if (h == "while-str") c = mk_while_str(sigma);
  else if (h == "ifzero") c = mk_ifzero(sigma);
  else fail_at(s, "unknown constant form");
  return apply_rest(std::move(c), s, 2, scope);
}

TermPtr term_of_sexp(const Sexp& s, Scope& scope) {
  if (s.atom) {
    const std::string& t = s.text;
    if (is_numeral(t)) return mk_num(Nat(t));
    if (t == "suc") return mk_suc();
    if (t == "pre") return mk_pre();
    if (t == "ifzero") return mk_ifzero();
    if (t == "min") return mk_min();
    auto it = scope.find(t);
    if (it == scope.end()) {
      if (is_keyword(t)) fail_at(s, "keyword '" + t + "' used as a term");
      fail_at(s, "unbound variable '" + t + "'");
    }
    return mk_var(t, it->second);
  }
  if (s.items.empty()) fail_at(s, "empty list");
  if (s.items[0].atom) {
    const std::string& h = s.items[0].text;
    if (h == "lam") {
      if (s.items.size() != 3) fail_at(s, "(lam (x s) M) needs binder and body");
      const Sexp& b = s.items[1];
      if (b.atom || b.items.size() != 2 || !b.items[0].atom)
        fail_at(b, "binder must be (name type)");
      const std::string& name = b.items[0].text;
      if (is_keyword(name) || is_numeral(name))
        fail_at(b, "'" + name + "' cannot be a variable name");
      TypePtr ty = type_of_sexp(b.items[1]);
      auto old = scope.find(name) != scope.end()
                     ? std::optional<TypePtr>(scope[name])
                     : std::nullopt;
      scope[name] = ty;
      TermPtr body = term_of_sexp(s.items[2], scope);
      if (old) scope[name] = *old; else scope.erase(name);
      return mk_lam(name, ty, body);
    }
    if (h == "app") {
      if (s.items.size() < 3) fail_at(s, "(app M N) needs two terms");
      return apply_rest(term_of_sexp(s.items[1], scope), s, 2, scope);
    }
    if (h == "pair") {
      if (s.items.size() != 3) fail_at(s, "(pair M N) needs two terms");
      return mk_pair(term_of_sexp(s.items[1], scope),
                     term_of_sexp(s.items[2], scope));
    }
    if (h == "fst") {
      if (s.items.size() != 2) fail_at(s, "(fst M) needs one term");
      return mk_fst(term_of_sexp(s.items[1], scope));
    }
    if (h == "snd") {
      if (s.items.size() != 2) fail_at(s, "(snd M) needs one term");
      return mk_snd(term_of_sexp(s.items[1], scope));
    }
    if (h == "Y" || h == "while" || h == "rec" || h == "rec-str" ||
        h == "while-str" || h == "byval" ||
        (h == "ifzero" && s.items.size() >= 2 && looks_like_type(s.items[1])))
      return const_form(s, scope);
  }
  // Application sugar (M N P ...), left-associative.
  if (s.items.size() < 2) {
    // A singleton list (M) is just M.
    return term_of_sexp(s.items[0], scope);
  }
  return apply_rest(term_of_sexp(s.items[0], scope), s, 1, scope);
}

}  // namespace

TypePtr parse_type(const std::string& text) {
  Lexer lx(text);
  Sexp s = lx.read();
  lx.skip_ws();
  if (lx.pos != text.size()) lx.fail("trailing input after type");
  return type_of_sexp(s);
}

TermPtr parse_term(const std::string& text) {
  Lexer lx(text);
  Sexp s = lx.read();
  lx.skip_ws();
  if (lx.pos != text.size()) lx.fail("trailing input after term");
  Scope scope;
  return term_of_sexp(s, scope);
}

TermPtr parse_term_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_term(ss.str());
}

}  // namespace nsplab
