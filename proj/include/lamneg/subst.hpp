#pragma once

#include "syntax.hpp"

namespace lamneg {

// The four implicit substitutions share one binding-aware traversal; they
// differ only in the variable case and in how a naming on the target name is
// rewritten.
//
//   term_var    M[N/x]       x := N
//   structural  M[N.g/a]     ['a]P := ['g](P' N)   (P' recursively substituted)
//   insertion   M[N/a]       ['a]P := [P']N
//   renaming    M[b/a]       ['a]P := ['b]P'
namespace detail {

enum class subst_kind : uint8_t { term_var, structural, insertion, renaming };

struct subst_ctx {
  subst_kind kind;
  ident target;
  term payload;        // N for the first three; empty for renaming
  ident aux;           // g for structural, b for renaming
  std::set<ident> avoid;  // identifiers that must not be captured
};

inline term subst_rec(const subst_ctx& cx, const term& t);

// Replace bound identifier `from` by the fresh `to` inside `body`. `to` is
// globally fresh, so a plain traversal cannot capture.
inline term refresh_bound(const term& body, ident from, ident to) {
  subst_ctx cx;
  if (from.kind == ident_kind::var) {
    cx = {subst_kind::term_var, from, mk_var(to), {}, {to}};
  } else {
    cx = {subst_kind::renaming, from, {}, to, {to}};
  }
  return subst_rec(cx, body);
}

inline term subst_rec(const subst_ctx& cx, const term& t) {
  switch (t->kind) {
    case term_kind::var:
      if (cx.kind == subst_kind::term_var && t->id == cx.target) return cx.payload;
      return t;

    case term_kind::lam:
    case term_kind::nu:
    case term_kind::mu: {
      if (t->id == cx.target) return t;  // shadowed
      if (cx.avoid.count(t->id)) {
        ident fresh = symbols::fresh(t->id.kind, symbols::hint(t->id));
        term body = refresh_bound(t->a, t->id, fresh);
        body = subst_rec(cx, body);
        return t->kind == term_kind::lam ? mk_lam(fresh, body)
             : t->kind == term_kind::nu  ? mk_nu(fresh, body)
                                         : mk_mu(fresh, body);
      }
      term body = subst_rec(cx, t->a);
      if (body == t->a) return t;
      return t->kind == term_kind::lam ? mk_lam(t->id, body)
           : t->kind == term_kind::nu  ? mk_nu(t->id, body)
                                       : mk_mu(t->id, body);
    }

    case term_kind::app:
    case term_kind::neg_app: {
      term a = subst_rec(cx, t->a);
      term b = subst_rec(cx, t->b);
      if (a == t->a && b == t->b) return t;
      return t->kind == term_kind::app ? mk_app(a, b) : mk_neg_app(a, b);
    }

    case term_kind::naming: {
      term body = subst_rec(cx, t->a);
      if (t->id != cx.target) {
        if (body == t->a) return t;
        return mk_naming(t->id, body);
      }
      switch (cx.kind) {
        case subst_kind::term_var:
          return body == t->a ? t : mk_naming(t->id, body);
        case subst_kind::structural:
          return mk_naming(cx.aux, mk_app(body, cx.payload));
        case subst_kind::insertion:
          return mk_neg_app(body, cx.payload);
        case subst_kind::renaming:
          return mk_naming(cx.aux, body);
      }
      return t;
    }
  }
  return t;
}

}  // namespace detail

// M[N/x]: every free occurrence of x in m replaced by n, capture-avoiding.
inline term subst_term(const term& m, const term& n, ident x) {
  detail::subst_ctx cx{detail::subst_kind::term_var, x, n, {}, free_idents(n)};
  return detail::subst_rec(cx, m);
}

// M[N.g/a]: every subterm named a receives the argument n under the fresh
// name g: ['a]P becomes ['g](P' N).
inline term subst_struct(const term& m, const term& n, ident alpha, ident gamma) {
  std::set<ident> avoid = free_idents(n);
  avoid.insert(gamma);
  detail::subst_ctx cx{detail::subst_kind::structural, alpha, n, gamma, std::move(avoid)};
  return detail::subst_rec(cx, m);
}

// M[N/a]: ['a]P becomes [P']N, discharging a double-negated name.
inline term subst_insert(const term& m, const term& n, ident alpha) {
  detail::subst_ctx cx{detail::subst_kind::insertion, alpha, n, {}, free_idents(n)};
  return detail::subst_rec(cx, m);
}

// M[b/a]: every free occurrence of the name a becomes b.
inline term rename_name(const term& m, ident beta, ident alpha) {
  detail::subst_ctx cx{detail::subst_kind::renaming, alpha, {}, beta, {beta}};
  return detail::subst_rec(cx, m);
}

}  // namespace lamneg
