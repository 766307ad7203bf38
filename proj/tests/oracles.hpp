#pragma once

// Locally-nameless reference implementations, independent of the library's
// named representation and fresh-name supply. Bound identifiers become de
// Bruijn indices (separate index spaces for variables and names), free ones
// stay as idents. A term in this form can be grafted anywhere without
// shifting, which makes the reference substitutions trivially capture-free.

#include <lamneg/subst.hpp>

namespace oracle {

using lamneg::ident;
using lamneg::ident_kind;
using lamneg::term;
using lamneg::term_kind;

struct db_node;
using db = std::shared_ptr<const db_node>;

struct db_node {
  term_kind kind;
  bool bound = false;
  int index = 0;   // de Bruijn index when bound
  ident free{};    // identifier when free
  db a{}, b{};
};

inline db mk(term_kind k, db a = {}, db b = {}) {
  return std::make_shared<db_node>(db_node{k, false, 0, {}, std::move(a), std::move(b)});
}
inline db mk_bound(term_kind k, int idx, db a = {}) {
  return std::make_shared<db_node>(db_node{k, true, idx, {}, std::move(a), {}});
}
inline db mk_free(term_kind k, ident i, db a = {}) {
  return std::make_shared<db_node>(db_node{k, false, 0, i, std::move(a), {}});
}

inline db to_db_rec(const term& t, std::vector<ident>& vs, std::vector<ident>& ns) {
  auto index_of = [](const std::vector<ident>& st, ident x) -> int {
    for (int i = static_cast<int>(st.size()) - 1; i >= 0; --i)
      if (st[static_cast<size_t>(i)] == x) return static_cast<int>(st.size()) - 1 - i;
    return -1;
  };
  switch (t->kind) {
    case term_kind::var: {
      int k = index_of(vs, t->id);
      return k >= 0 ? mk_bound(term_kind::var, k) : mk_free(term_kind::var, t->id);
    }
    case term_kind::lam:
    case term_kind::nu: {
      vs.push_back(t->id);
      db body = to_db_rec(t->a, vs, ns);
      vs.pop_back();
      return mk(t->kind, body);
    }
    case term_kind::mu: {
      ns.push_back(t->id);
      db body = to_db_rec(t->a, vs, ns);
      ns.pop_back();
      return mk(t->kind, body);
    }
    case term_kind::naming: {
      int k = index_of(ns, t->id);
      db body = to_db_rec(t->a, vs, ns);
      return k >= 0 ? mk_bound(term_kind::naming, k, body)
                    : mk_free(term_kind::naming, t->id, body);
    }
    case term_kind::app:
    case term_kind::neg_app:
      return mk(t->kind, to_db_rec(t->a, vs, ns), to_db_rec(t->b, vs, ns));
  }
  return {};
}

inline db to_db(const term& t) {
  std::vector<ident> vs, ns;
  return to_db_rec(t, vs, ns);
}

inline bool db_eq(const db& x, const db& y) {
  if (!x || !y) return x == y;
  if (x->kind != y->kind || x->bound != y->bound) return false;
  if (x->bound && x->index != y->index) return false;
  if (!x->bound && (x->kind == term_kind::var || x->kind == term_kind::naming) &&
      x->free != y->free)
    return false;
  return db_eq(x->a, y->a) && db_eq(x->b, y->b);
}

// Reference alpha-equivalence.
inline bool alpha_eq(const term& l, const term& r) { return db_eq(to_db(l), to_db(r)); }

// M[N/x] on the nameless form: bound indices in the grafted copy refer to
// its own binders, so no adjustment is needed.
inline db subst_term(const db& m, ident x, const db& n) {
  if (!m) return m;
  if (m->kind == term_kind::var && !m->bound && m->free == x) return n;
  auto node = std::make_shared<db_node>(*m);
  node->a = subst_term(m->a, x, n);
  node->b = subst_term(m->b, x, n);
  return node;
}

// M[N.g/a]: every free naming on a becomes a naming on g of an application.
inline db subst_struct(const db& m, ident alpha, const db& n, ident gamma) {
  if (!m) return m;
  if (m->kind == term_kind::naming && !m->bound && m->free == alpha)
    return mk_free(term_kind::naming, gamma,
                   mk(term_kind::app, subst_struct(m->a, alpha, n, gamma), n));
  auto node = std::make_shared<db_node>(*m);
  node->a = subst_struct(m->a, alpha, n, gamma);
  node->b = subst_struct(m->b, alpha, n, gamma);
  return node;
}

// M[N/a]: every free naming on a becomes a negated application.
inline db subst_insert(const db& m, ident alpha, const db& n) {
  if (!m) return m;
  if (m->kind == term_kind::naming && !m->bound && m->free == alpha)
    return mk(term_kind::neg_app, subst_insert(m->a, alpha, n), n);
  auto node = std::make_shared<db_node>(*m);
  node->a = subst_insert(m->a, alpha, n);
  node->b = subst_insert(m->b, alpha, n);
  return node;
}

// M[b/a] on free namings.
inline db rename_name(const db& m, ident beta, ident alpha) {
  if (!m) return m;
  auto node = std::make_shared<db_node>(*m);
  if (m->kind == term_kind::naming && !m->bound && m->free == alpha) node->free = beta;
  node->a = rename_name(m->a, beta, alpha);
  node->b = rename_name(m->b, beta, alpha);
  return node;
}

}  // namespace oracle
