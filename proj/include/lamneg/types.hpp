#pragma once

#include <map>
#include <optional>
#include <sstream>

#include "syntax.hpp"

namespace lamneg {

// A, B ::= p | A -> B | ~A. Bottom is not a type; it exists only as a
// conclusion (see `concl`).
enum class ty_kind : uint8_t { tvar, arrow, neg };

struct ty_node;
using ty = std::shared_ptr<const ty_node>;

struct ty_node {
  ty_kind kind;
  uint32_t var = 0;
  ty a{}, b{};
};

inline ty mk_tvar(uint32_t v) { return std::make_shared<ty_node>(ty_node{ty_kind::tvar, v, {}, {}}); }
inline ty mk_arrow(ty a, ty b) { return std::make_shared<ty_node>(ty_node{ty_kind::arrow, 0, std::move(a), std::move(b)}); }
inline ty mk_neg(ty a) { return std::make_shared<ty_node>(ty_node{ty_kind::neg, 0, std::move(a), {}}); }

inline bool ty_eq(const ty& a, const ty& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ty_kind::tvar: return a->var == b->var;
    case ty_kind::arrow: return ty_eq(a->a, b->a) && ty_eq(a->b, b->b);
    case ty_kind::neg: return ty_eq(a->a, b->a);
  }
  return false;
}

inline bool occurs_ty(uint32_t v, const ty& t) {
  if (!t) return false;
  if (t->kind == ty_kind::tvar) return t->var == v;
  return occurs_ty(v, t->a) || occurs_ty(v, t->b);
}

inline void tvars_in_order(const ty& t, std::vector<uint32_t>& order) {
  if (!t) return;
  if (t->kind == ty_kind::tvar) {
    for (uint32_t v : order)
      if (v == t->var) return;
    order.push_back(t->var);
    return;
  }
  tvars_in_order(t->a, order);
  tvars_in_order(t->b, order);
}

// Conclusion of a judgement: a type, or the conflict marker # (bottom).
struct concl {
  ty t{};  // empty means bottom
  static concl bottom() { return concl{}; }
  static concl of(ty x) { return concl{std::move(x)}; }
  bool is_bottom() const { return !t; }
};

inline bool concl_eq(const concl& a, const concl& b) {
  if (a.is_bottom() || b.is_bottom()) return a.is_bottom() == b.is_bottom();
  return ty_eq(a.t, b.t);
}

// Finite map from type variables to types. Application is homomorphic over
// arrows and negations and fixes bottom.
struct ty_subst {
  std::map<uint32_t, ty> m;

  ty operator()(const ty& t) const {
    if (!t) return t;
    switch (t->kind) {
      case ty_kind::tvar: {
        auto it = m.find(t->var);
        return it != m.end() ? it->second : t;
      }
      case ty_kind::arrow: return mk_arrow((*this)(t->a), (*this)(t->b));
      case ty_kind::neg: return mk_neg((*this)(t->a));
    }
    return t;
  }

  concl operator()(const concl& c) const {
    return c.is_bottom() ? concl::bottom() : concl::of((*this)(c.t));
  }

  bool identity() const { return m.empty(); }
};

// (s1 o s2) A = s1 (s2 A)
inline ty_subst compose(const ty_subst& s1, const ty_subst& s2) {
  ty_subst out;
  for (const auto& [v, t] : s2.m) out.m.emplace(v, s1(t));
  for (const auto& [v, t] : s1.m) out.m.emplace(v, t);  // keeps s2's binding when shared
  return out;
}

// Robinson unification, cases tried top-down; fails on the occurs check and
// on constructor clashes.
inline std::optional<ty_subst> unify(const ty& a, const ty& b) {
  if (a->kind == ty_kind::tvar && b->kind == ty_kind::tvar && a->var == b->var)
    return ty_subst{};
  if (a->kind == ty_kind::tvar) {
    if (occurs_ty(a->var, b)) return std::nullopt;
    ty_subst s;
    s.m.emplace(a->var, b);
    return s;
  }
  if (b->kind == ty_kind::tvar) return unify(b, a);
  if (a->kind == ty_kind::arrow && b->kind == ty_kind::arrow) {
    auto s1 = unify(a->a, b->a);
    if (!s1) return std::nullopt;
    auto s2 = unify((*s1)(a->b), (*s1)(b->b));
    if (!s2) return std::nullopt;
    return compose(*s2, *s1);
  }
  if (a->kind == ty_kind::neg && b->kind == ty_kind::neg) return unify(a->a, b->a);
  return std::nullopt;
}

// Statements x:A for term variables and 'a:~A for names, distinct subjects.
using typing_context = std::map<ident, ty>;

inline typing_context apply_subst(const ty_subst& s, const typing_context& g) {
  typing_context out;
  for (const auto& [subj, t] : g) out.emplace(subj, s(t));
  return out;
}

inline bool names_negated(const typing_context& g) {
  for (const auto& [subj, t] : g)
    if (subj.kind == ident_kind::name && t->kind != ty_kind::neg) return false;
  return true;
}

// Folds unify over the subjects shared by both contexts.
inline std::optional<ty_subst> unify_contexts(const typing_context& g1, const typing_context& g2) {
  ty_subst s;
  for (const auto& [subj, t] : g1) {
    auto it = g2.find(subj);
    if (it == g2.end()) continue;
    auto u = unify(s(t), s(it->second));
    if (!u) return std::nullopt;
    s = compose(*u, s);
  }
  return s;
}

struct typing {
  typing_context ctx;
  concl c;
};

inline typing apply_subst(const ty_subst& s, const typing& j) {
  return typing{apply_subst(s, j.ctx), s(j.c)};
}

// Renumbers the type variables left-to-right (context first, in subject
// order, then the conclusion) into p1, p2, ... so goldens are deterministic.
inline typing canonicalize(const typing& j) {
  std::vector<uint32_t> order;
  for (const auto& [subj, t] : j.ctx) tvars_in_order(t, order);
  if (!j.c.is_bottom()) tvars_in_order(j.c.t, order);
  ty_subst s;
  uint32_t next = 1;
  for (uint32_t v : order) s.m.emplace(v, mk_tvar(next++));
  return apply_subst(s, j);
}

inline ty canonicalize(const ty& t) {
  std::vector<uint32_t> order;
  tvars_in_order(t, order);
  ty_subst s;
  uint32_t next = 1;
  for (uint32_t v : order) s.m.emplace(v, mk_tvar(next++));
  return s(t);
}

// Equality up to a bijective renaming of type variables.
namespace detail {

inline bool ty_alpha_rec(const ty& a, const ty& b, std::map<uint32_t, uint32_t>& fwd,
                         std::map<uint32_t, uint32_t>& bwd) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ty_kind::tvar: {
      auto f = fwd.find(a->var);
      auto g = bwd.find(b->var);
      if (f == fwd.end() && g == bwd.end()) {
        fwd.emplace(a->var, b->var);
        bwd.emplace(b->var, a->var);
        return true;
      }
      return f != fwd.end() && g != bwd.end() && f->second == b->var && g->second == a->var;
    }
    case ty_kind::arrow:
      return ty_alpha_rec(a->a, b->a, fwd, bwd) && ty_alpha_rec(a->b, b->b, fwd, bwd);
    case ty_kind::neg:
      return ty_alpha_rec(a->a, b->a, fwd, bwd);
  }
  return false;
}

}  // namespace detail

inline bool ty_alpha_eq(const ty& a, const ty& b) {
  std::map<uint32_t, uint32_t> fwd, bwd;
  return detail::ty_alpha_rec(a, b, fwd, bwd);
}

inline bool typing_alpha_eq(const typing& a, const typing& b) {
  if (a.ctx.size() != b.ctx.size() || a.c.is_bottom() != b.c.is_bottom()) return false;
  std::map<uint32_t, uint32_t> fwd, bwd;
  auto ita = a.ctx.begin();
  auto itb = b.ctx.begin();
  for (; ita != a.ctx.end(); ++ita, ++itb) {
    if (ita->first != itb->first) return false;
    if (!detail::ty_alpha_rec(ita->second, itb->second, fwd, bwd)) return false;
  }
  if (!a.c.is_bottom() && !detail::ty_alpha_rec(a.c.t, b.c.t, fwd, bwd)) return false;
  return true;
}

// --- text form ---------------------------------------------------------

namespace detail {

inline void print_ty_rec(const ty& t, std::ostream& os, bool arrow_parens) {
  switch (t->kind) {
    case ty_kind::tvar:
      os << symbols::tyvar_text(t->var);
      return;
    case ty_kind::arrow:
      if (arrow_parens) os << "(";
      print_ty_rec(t->a, os, true);
      os << " -> ";
      print_ty_rec(t->b, os, false);
      if (arrow_parens) os << ")";
      return;
    case ty_kind::neg:
      os << "~";
      print_ty_rec(t->a, os, true);
      return;
  }
}

}  // namespace detail

inline std::string print_type(const ty& t) {
  std::ostringstream os;
  detail::print_ty_rec(t, os, false);
  return os.str();
}

inline std::string print_conclusion(const concl& c) {
  return c.is_bottom() ? "#" : print_type(c.t);
}

}  // namespace lamneg
