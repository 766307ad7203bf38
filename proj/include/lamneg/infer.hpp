#pragma once

#include <cassert>

#include "print.hpp"
#include "reduce.hpp"
#include "types.hpp"

namespace lamneg {

namespace detail {

inline void set_err(std::string* why, const std::string& msg) {
  if (why) *why = msg;
}

// error messages show types with display numbering, not raw supply ids
inline std::string show_ty(const ty& t) { return print_type(canonicalize(t)); }

// Union of contexts whose shared subjects were already unified; a mismatch
// here is an internal invariant violation, not a typing failure.
inline typing_context union_contexts(const typing_context& g1, const typing_context& g2) {
  typing_context out = g1;
  for (const auto& [subj, t] : g2) {
    auto [it, inserted] = out.emplace(subj, t);
    if (!inserted) assert(ty_eq(it->second, t));
  }
  return out;
}

}  // namespace detail

// Principal typing: returns the most general <context; conclusion> pair for
// t, or nothing (with a reason) if t is untypeable.
//
// Case by case: a variable gets a fresh type variable; an abstraction splits
// on whether its binder was used; an application unifies the function type
// against argument -> fresh and then the two contexts; nu and mu demand a
// body concluding bottom; a negated application unifies against a negated
// type and concludes bottom; a naming records (or unifies with) the named
// assumption and concludes bottom.
inline std::optional<typing> principal_typing(const term& t, std::string* why = nullptr) {
  switch (t->kind) {
    case term_kind::var: {
      ty v = mk_tvar(symbols::fresh_tyvar());
      return typing{{{t->id, v}}, concl::of(v)};
    }

    case term_kind::lam: {
      auto body = principal_typing(t->a, why);
      if (!body) return std::nullopt;
      if (body->c.is_bottom()) {
        detail::set_err(why, "lambda body concludes #, which is not a type");
        return std::nullopt;
      }
      auto it = body->ctx.find(t->id);
      if (it != body->ctx.end()) {
        ty dom = it->second;
        body->ctx.erase(it);
        return typing{std::move(body->ctx), concl::of(mk_arrow(dom, body->c.t))};
      }
      return typing{std::move(body->ctx),
                    concl::of(mk_arrow(mk_tvar(symbols::fresh_tyvar()), body->c.t))};
    }

    case term_kind::app: {
      auto f = principal_typing(t->a, why);
      if (!f) return std::nullopt;
      auto arg = principal_typing(t->b, why);
      if (!arg) return std::nullopt;
      if (f->c.is_bottom() || arg->c.is_bottom()) {
        detail::set_err(why, "an application operand concludes #");
        return std::nullopt;
      }
      ty v = mk_tvar(symbols::fresh_tyvar());
      auto s1 = unify(f->c.t, mk_arrow(arg->c.t, v));
      if (!s1) {
        detail::set_err(why, "cannot apply " + detail::show_ty(f->c.t) + " to " + detail::show_ty(arg->c.t));
        return std::nullopt;
      }
      auto s2 = unify_contexts(apply_subst(*s1, f->ctx), apply_subst(*s1, arg->ctx));
      if (!s2) {
        detail::set_err(why, "contexts of function and argument do not unify");
        return std::nullopt;
      }
      ty_subst s = compose(*s2, *s1);
      return typing{detail::union_contexts(apply_subst(s, f->ctx), apply_subst(s, arg->ctx)),
                    concl::of(s(v))};
    }

    case term_kind::nu: {
      auto body = principal_typing(t->a, why);
      if (!body) return std::nullopt;
      if (!body->c.is_bottom()) {
        detail::set_err(why, "nu body must conclude #, found " + detail::show_ty(body->c.t));
        return std::nullopt;
      }
      auto it = body->ctx.find(t->id);
      if (it != body->ctx.end()) {
        ty dom = it->second;
        body->ctx.erase(it);
        return typing{std::move(body->ctx), concl::of(mk_neg(dom))};
      }
      return typing{std::move(body->ctx), concl::of(mk_neg(mk_tvar(symbols::fresh_tyvar())))};
    }

    case term_kind::neg_app: {
      auto l = principal_typing(t->a, why);
      if (!l) return std::nullopt;
      auto r = principal_typing(t->b, why);
      if (!r) return std::nullopt;
      if (l->c.is_bottom() || r->c.is_bottom()) {
        detail::set_err(why, "a negated-application operand concludes #");
        return std::nullopt;
      }
      auto s1 = unify(l->c.t, mk_neg(r->c.t));
      if (!s1) {
        detail::set_err(why, "left of [.]. must have a negated type; cannot unify " +
                                 detail::show_ty(l->c.t) + " with ~" + detail::show_ty(r->c.t));
        return std::nullopt;
      }
      auto s2 = unify_contexts(apply_subst(*s1, l->ctx), apply_subst(*s1, r->ctx));
      if (!s2) {
        detail::set_err(why, "contexts of a negated application do not unify");
        return std::nullopt;
      }
      ty_subst s = compose(*s2, *s1);
      return typing{detail::union_contexts(apply_subst(s, l->ctx), apply_subst(s, r->ctx)),
                    concl::bottom()};
    }

    case term_kind::mu: {
      auto body = principal_typing(t->a, why);
      if (!body) return std::nullopt;
      if (!body->c.is_bottom()) {
        detail::set_err(why, "mu body must conclude #, found " + detail::show_ty(body->c.t));
        return std::nullopt;
      }
      auto it = body->ctx.find(t->id);
      if (it != body->ctx.end()) {
        ty rec = it->second;
        assert(rec->kind == ty_kind::neg);
        body->ctx.erase(it);
        return typing{std::move(body->ctx), concl::of(rec->a)};
      }
      return typing{std::move(body->ctx), concl::of(mk_tvar(symbols::fresh_tyvar()))};
    }

    case term_kind::naming: {
      auto body = principal_typing(t->a, why);
      if (!body) return std::nullopt;
      if (body->c.is_bottom()) {
        detail::set_err(why, "a named term concludes #, which cannot be named");
        return std::nullopt;
      }
      auto it = body->ctx.find(t->id);
      if (it != body->ctx.end()) {
        assert(it->second->kind == ty_kind::neg);
        auto s = unify(it->second->a, body->c.t);
        if (!s) {
          detail::set_err(why, "name '" + symbols::hint(t->id) + " is already recorded at " +
                                   detail::show_ty(it->second) + ", incompatible with ~" +
                                   detail::show_ty(body->c.t));
          return std::nullopt;
        }
        return typing{apply_subst(*s, body->ctx), concl::bottom()};
      }
      body->ctx.emplace(t->id, mk_neg(body->c.t));
      return typing{std::move(body->ctx), concl::bottom()};
    }
  }
  detail::set_err(why, "malformed term");
  return std::nullopt;
}

namespace detail {

// One-way matching: variables of the pattern (the pt output) may be
// instantiated, the concrete side is rigid. Fresh inference variables are
// drawn from a never-reused supply, so the two sides cannot share variables.
inline bool match_ty(const ty& pattern, const ty& concrete, std::map<uint32_t, ty>& binding) {
  if (pattern->kind == ty_kind::tvar) {
    auto it = binding.find(pattern->var);
    if (it != binding.end()) return ty_eq(it->second, concrete);
    binding.emplace(pattern->var, concrete);
    return true;
  }
  if (pattern->kind != concrete->kind) return false;
  if (pattern->kind == ty_kind::arrow)
    return match_ty(pattern->a, concrete->a, binding) &&
           match_ty(pattern->b, concrete->b, binding);
  return match_ty(pattern->a, concrete->a, binding);
}

}  // namespace detail

// Decides Gamma |- t : expected by instance-matching against the principal
// typing: true iff some substitution S of the inferred variables gives
// S Pi included in g and S P = expected. Weakening is the inclusion.
inline bool check(const typing_context& g, const term& t, const concl& expected,
                  std::string* why = nullptr) {
  auto j = principal_typing(t, why);
  if (!j) return false;
  std::map<uint32_t, ty> binding;
  if (expected.is_bottom() != j->c.is_bottom()) {
    detail::set_err(why, "conclusion shape differs from expected");
    return false;
  }
  if (!expected.is_bottom() && !detail::match_ty(j->c.t, expected.t, binding)) {
    detail::set_err(why, "principal conclusion " + detail::show_ty(j->c.t) +
                             " has no instance " + print_type(expected.t));
    return false;
  }
  for (const auto& [subj, t_subj] : j->ctx) {
    auto it = g.find(subj);
    if (it == g.end()) {
      detail::set_err(why, "context lacks an assumption for a free identifier");
      return false;
    }
    if (!detail::match_ty(t_subj, it->second, binding)) {
      detail::set_err(why, "assumption for " + symbols::hint(subj) + " does not match");
      return false;
    }
  }
  return true;
}

struct sr_violation {
  term from;
  reduction_step step;
  std::string why;
};

struct sr_report {
  int steps_checked = 0;
  std::optional<sr_violation> violation;
  bool ok() const { return !violation.has_value(); }
};

// Walks the reduction graph of t breadth-first for up to step_budget single
// steps (every redex, not one strategy) and re-checks each contractum at the
// given judgement.
inline sr_report subject_reduction_check(const typing_context& g, const term& t, const concl& a,
                                         int step_budget) {
  sr_report rep;
  std::vector<term> frontier{t};
  std::set<std::string> seen{canon_key(t)};
  while (!frontier.empty() && rep.steps_checked < step_budget) {
    std::vector<term> next;
    for (const term& u : frontier) {
      for (const auto& step : enumerate_redexes(u)) {
        if (rep.steps_checked >= step_budget) break;
        ++rep.steps_checked;
        std::string why;
        if (!check(g, step.after, a, &why)) {
          rep.violation = sr_violation{u, step, why};
          return rep;
        }
        if (seen.insert(canon_key(step.after)).second) next.push_back(step.after);
      }
    }
    frontier = std::move(next);
  }
  return rep;
}

// "x:p1, 'a:~p1 |- M : p1", with the turnstile spelled in UTF-8.
inline std::string print_judgement(const typing_context& g, const std::string& term_text,
                                   const concl& c) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [subj, t] : g) {
    if (!first) os << ", ";
    first = false;
    if (subj.kind == ident_kind::name) os << "'";
    os << symbols::hint(subj) << ":" << print_type(t);
  }
  if (!first) os << " ";
  os << "⊢ " << term_text << " : " << print_conclusion(c);
  return os.str();
}

inline nlohmann::json judgement_json(const typing_context& g, const std::string& term_text,
                                     const concl& c) {
  nlohmann::json vars = nlohmann::json::object();
  nlohmann::json names = nlohmann::json::object();
  for (const auto& [subj, t] : g) {
    if (subj.kind == ident_kind::var)
      vars[symbols::hint(subj)] = print_type(t);
    else
      names[symbols::hint(subj)] = print_type(t);
  }
  return {{"context", {{"vars", std::move(vars)}, {"names", std::move(names)}}},
          {"term", term_text},
          {"conclusion", print_conclusion(c)}};
}

}  // namespace lamneg
