#include "nsplab/lang.hpp"

namespace nsplab {

std::optional<LangTag> parse_lang_tag(const std::string& s) {
  std::string body = s;
  std::optional<int> cap;
  auto at = s.find('@');
  if (at != std::string::npos) {
    body = s.substr(0, at);
    try {
      cap = std::stoi(s.substr(at + 1));
    } catch (...) {
      return std::nullopt;
    }
    if (*cap < 0) return std::nullopt;
  }
  LangTag t;
  t.cap = cap;
  if (body == "b") t.base = LangTag::B;
  else if (body == "pcf") t.base = LangTag::PCF;
  else if (body == "pcf+byval") t.base = LangTag::PCF_byval;
  else if (body == "t") t.base = LangTag::T;
  else if (body == "t+min") t.base = LangTag::T_min;
  else if (body == "w") t.base = LangTag::W;
  else if (body == "t0str") t.base = LangTag::T0_str;
  else if (body == "t0str+min") t.base = LangTag::T0_str_min;
  else if (body == "w0str") t.base = LangTag::W0_str;
  else return std::nullopt;
  return t;
}

std::string show_lang_tag(const LangTag& tag) {
  std::string s;
  switch (tag.base) {
    case LangTag::B: s = "b"; break;
    case LangTag::PCF: s = "pcf"; break;
    case LangTag::PCF_byval: s = "pcf+byval"; break;
    case LangTag::T: s = "t"; break;
    case LangTag::T_min: s = "t+min"; break;
    case LangTag::W: s = "w"; break;
    case LangTag::T0_str: s = "t0str"; break;
    case LangTag::T0_str_min: s = "t0str+min"; break;
    case LangTag::W0_str: s = "w0str"; break;
  }
  if (tag.cap) s += "@" + std::to_string(*tag.cap);
  return s;
}

namespace {
std::optional<std::string> const_violation(const Term& c, const LangTag& tag) {
  auto capped = [&](const TypePtr& sigma,
                    const char* name) -> std::optional<std::string> {
    if (tag.cap && type_level(sigma) > *tag.cap)
      return std::string(name) + " type parameter " + show_type(sigma) +
             " exceeds level cap " + std::to_string(*tag.cap);
    return std::nullopt;
  };
  bool strict_lang = tag.base == LangTag::T0_str ||
                     tag.base == LangTag::T0_str_min ||
                     tag.base == LangTag::W0_str;
  switch (c.ck) {
    case ConstKind::Suc:
    case ConstKind::Pre:
    case ConstKind::Ifzero:
      return std::nullopt;
    case ConstKind::Y:
      if (tag.base != LangTag::PCF && tag.base != LangTag::PCF_byval)
        return std::string("constant Y not in language");
      return capped(c.cty, "Y");
    case ConstKind::While:
      if (tag.base != LangTag::W) return std::string("constant while not in language");
      return capped(c.cty, "while");
    case ConstKind::Rec:
      if (tag.base != LangTag::T && tag.base != LangTag::T_min)
        return std::string("constant rec not in language");
      return capped(c.cty, "rec");
    case ConstKind::Min:
      if (tag.base != LangTag::T_min && tag.base != LangTag::T0_str_min)
        return std::string("constant min not in language");
      return std::nullopt;
    case ConstKind::Byval:
      if (tag.base == LangTag::PCF_byval) return std::nullopt;
      if (strict_lang) {
        // Strict languages admit only byval^eps_nat.
        if (c.bv_sigmas.empty() && c.bv_tau->kind == Type::Nat)
          return std::nullopt;
        return std::string("only byval^eps_nat is available here");
      }
      return std::string("constant byval not in language");
    case ConstKind::RecStr:
      if (tag.base != LangTag::T0_str && tag.base != LangTag::T0_str_min)
        return std::string("constant rec-str not in language");
      return std::nullopt;
    case ConstKind::WhileStr:
      if (tag.base != LangTag::W0_str)
        return std::string("constant while-str not in language");
      return std::nullopt;
  }
  return std::string("unknown constant");
}

std::optional<std::string> walk(const TermPtr& m, const LangTag& tag) {
  switch (m->kind) {
    case Term::Const:
      return const_violation(*m, tag);
    case Term::Lam:
      return walk(m->a, tag);
    case Term::App:
    case Term::PairT: {
      auto v = walk(m->a, tag);
      return v ? v : walk(m->b, tag);
    }
    case Term::Fst:
    case Term::Snd:
      return walk(m->a, tag);
    default:
      return std::nullopt;
  }
}
}  // namespace

std::optional<std::string> membership_violation(const TermPtr& m,
                                                const LangTag& tag) {
  return walk(m, tag);
}

bool in_language(const TermPtr& m, const LangTag& tag) {
  return !membership_violation(m, tag);
}

}  // namespace nsplab
