#pragma once

#include "infer.hpp"
#include "parse.hpp"

namespace lamneg {
namespace lmu {

// The embedded fragment: naming and mu only occur together, as the context
// switch mu 'a.['b]M, and there is no negation syntax.
enum class lkind : uint8_t { var, lam, app, cswitch };

struct lnode;
using lterm = std::shared_ptr<const lnode>;

struct lnode {
  lkind kind;
  ident x{};            // var / lam binder
  ident alpha{}, beta{};  // cswitch: mu 'a.['b]M
  lterm a{}, b{};
};

inline lterm mk_var(ident x) { return std::make_shared<lnode>(lnode{lkind::var, x, {}, {}, {}, {}}); }
inline lterm mk_lam(ident x, lterm body) { return std::make_shared<lnode>(lnode{lkind::lam, x, {}, {}, std::move(body), {}}); }
inline lterm mk_app(lterm f, lterm arg) { return std::make_shared<lnode>(lnode{lkind::app, {}, {}, {}, std::move(f), std::move(arg)}); }
inline lterm mk_cswitch(ident alpha, ident beta, lterm body) {
  return std::make_shared<lnode>(lnode{lkind::cswitch, {}, alpha, beta, std::move(body), {}});
}

// Identity on shared constructors; the context switch becomes mu over naming.
inline term embed(const lterm& t) {
  switch (t->kind) {
    case lkind::var: return lamneg::mk_var(t->x);
    case lkind::lam: return lamneg::mk_lam(t->x, embed(t->a));
    case lkind::app: return lamneg::mk_app(embed(t->a), embed(t->b));
    case lkind::cswitch: return lamneg::mk_mu(t->alpha, mk_naming(t->beta, embed(t->a)));
  }
  return {};
}

// Validates that a parsed term lies in the fragment and rebuilds it.
inline std::optional<lterm> from_term(const term& t, std::string* why = nullptr) {
  switch (t->kind) {
    case term_kind::var:
      return lmu::mk_var(t->id);
    case term_kind::lam: {
      auto body = from_term(t->a, why);
      if (!body) return std::nullopt;
      return mk_lam(t->id, *body);
    }
    case term_kind::app: {
      auto f = from_term(t->a, why);
      if (!f) return std::nullopt;
      auto arg = from_term(t->b, why);
      if (!arg) return std::nullopt;
      return mk_app(*f, *arg);
    }
    case term_kind::mu: {
      if (t->a->kind != term_kind::naming) {
        detail::set_err(why, "in this dialect mu must be followed by a naming");
        return std::nullopt;
      }
      auto body = from_term(t->a->a, why);
      if (!body) return std::nullopt;
      return mk_cswitch(t->id, t->a->id, *body);
    }
    case term_kind::nu:
      detail::set_err(why, "nu does not exist in this dialect");
      return std::nullopt;
    case term_kind::neg_app:
      detail::set_err(why, "negated application does not exist in this dialect");
      return std::nullopt;
    case term_kind::naming:
      detail::set_err(why, "a naming may only appear directly under mu in this dialect");
      return std::nullopt;
  }
  return std::nullopt;
}

inline lterm parse(const std::string& src) {
  std::string why;
  auto t = from_term(parse_term(src), &why);
  if (!t) throw parse_error(why, 0);
  return *t;
}

inline std::string print(const lterm& t) { return print_term(embed(t)); }

// Gamma |- M : A | Delta, where Delta holds the alternative conclusions
// un-negated and no negation occurs in any type.
struct judgement {
  std::map<ident, ty> gamma;
  ty a;
  std::map<ident, ty> delta;
};

inline bool neg_free(const ty& t) {
  if (!t) return true;
  if (t->kind == ty_kind::neg) return false;
  return neg_free(t->a) && neg_free(t->b);
}

// Typing by embedding: infer in the host calculus, then split the context
// into term variables and (un-negated) names.
inline std::optional<judgement> infer(const lterm& t, std::string* why = nullptr) {
  auto j = principal_typing(embed(t), why);
  if (!j) return std::nullopt;
  if (j->c.is_bottom()) {
    detail::set_err(why, "term concludes #");
    return std::nullopt;
  }
  judgement out;
  out.a = j->c.t;
  for (const auto& [subj, typ] : j->ctx) {
    if (subj.kind == ident_kind::var) {
      out.gamma.emplace(subj, typ);
    } else {
      assert(typ->kind == ty_kind::neg);
      out.delta.emplace(subj, typ->a);
    }
  }
  for (const auto& [subj, typ] : out.gamma)
    if (!neg_free(typ)) {
      detail::set_err(why, "inferred a negated type, outside this dialect");
      return std::nullopt;
    }
  for (const auto& [subj, typ] : out.delta)
    if (!neg_free(typ)) {
      detail::set_err(why, "inferred a negated type, outside this dialect");
      return std::nullopt;
    }
  if (!neg_free(out.a)) {
    detail::set_err(why, "inferred a negated type, outside this dialect");
    return std::nullopt;
  }
  return out;
}

// Gamma, ~Delta as a host-calculus context.
inline typing_context embed_context(const std::map<ident, ty>& gamma,
                                    const std::map<ident, ty>& delta) {
  typing_context g;
  for (const auto& [subj, typ] : gamma) g.emplace(subj, typ);
  for (const auto& [subj, typ] : delta) g.emplace(subj, mk_neg(typ));
  return g;
}

inline std::string print_judgement(const judgement& j, const std::string& term_text) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [subj, typ] : j.gamma) {
    if (!first) os << ", ";
    first = false;
    os << symbols::hint(subj) << ":" << print_type(typ);
  }
  if (!first) os << " ";
  os << "⊢ " << term_text << " : " << print_type(j.a) << " |";
  first = true;
  for (const auto& [subj, typ] : j.delta) {
    os << (first ? " " : ", ") << "'" << symbols::hint(subj) << ":" << print_type(typ);
    first = false;
  }
  return os.str();
}

}  // namespace lmu
}  // namespace lamneg
