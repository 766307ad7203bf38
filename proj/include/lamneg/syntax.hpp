#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace lamneg {

// Variables (x, y, ...) and names ('a, 'b, ...) are disjoint lexical classes;
// a name is never a term by itself.
enum class ident_kind : uint8_t { var, name };

struct ident {
  ident_kind kind{ident_kind::var};
  uint32_t id{0};
};

inline bool operator==(ident a, ident b) { return a.kind == b.kind && a.id == b.id; }
inline bool operator!=(ident a, ident b) { return !(a == b); }
inline bool operator<(ident a, ident b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.id < b.id;
}

// Process-wide identifier registry. Free identifiers are interned by text so
// that two parses of "x" denote the same variable; binders always get fresh
// ids, which keeps terms renamed apart. The counter never re-issues an id.
class symbols {
 public:
  static ident intern(ident_kind k, const std::string& text) {
    state_t& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    auto& table = (k == ident_kind::var) ? s.var_intern : s.name_intern;
    auto it = table.find(text);
    if (it != table.end()) return ident{k, it->second};
    uint32_t id = alloc(s, text);
    table.emplace(text, id);
    return ident{k, id};
  }

  static ident fresh(ident_kind k, const std::string& hint) {
    state_t& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    return ident{k, alloc(s, hint)};
  }

  static std::string hint(ident i) {
    state_t& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    if (i.id < s.hints.size()) return s.hints[i.id];
    return "?";
  }

  // Type variables live in a separate numeric space: "p<k>" maps onto id k,
  // other spelled variables intern above kUserBase, and inference draws fresh
  // ids above kFreshBase. Canonicalised typings renumber into the p-range.
  static constexpr uint32_t kUserBase = 1u << 20;
  static constexpr uint32_t kFreshBase = 1u << 24;

  static uint32_t intern_tyvar(const std::string& text) {
    if (text.size() > 1 && text[0] == 'p' &&
        text.find_first_not_of("0123456789", 1) == std::string::npos) {
      uint32_t v = static_cast<uint32_t>(std::stoul(text.substr(1)));
      if (v < kUserBase) return v;
    }
    state_t& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    auto it = s.tyvar_intern.find(text);
    if (it != s.tyvar_intern.end()) return it->second;
    uint32_t id = s.next_user_tyvar++;
    s.tyvar_intern.emplace(text, id);
    s.tyvar_texts.emplace(id, text);
    return id;
  }

  static uint32_t fresh_tyvar() {
    state_t& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    return s.next_fresh_tyvar++;
  }

  static std::string tyvar_text(uint32_t v) {
    if (v < kUserBase) return "p" + std::to_string(v);
    state_t& s = state();
    std::lock_guard<std::mutex> lock(s.mu);
    auto it = s.tyvar_texts.find(v);
    if (it != s.tyvar_texts.end()) return it->second;
    return "t" + std::to_string(v - kFreshBase);
  }

 private:
  struct state_t {
    std::mutex mu;
    std::unordered_map<std::string, uint32_t> var_intern, name_intern;
    std::unordered_map<std::string, uint32_t> tyvar_intern;
    std::unordered_map<uint32_t, std::string> tyvar_texts;
    std::vector<std::string> hints;
    uint32_t next_user_tyvar = kUserBase;
    uint32_t next_fresh_tyvar = kFreshBase;
  };

  static state_t& state() {
    static state_t s;
    return s;
  }

  static uint32_t alloc(state_t& s, const std::string& hint) {
    uint32_t id = static_cast<uint32_t>(s.hints.size());
    s.hints.push_back(hint);
    return id;
  }
};

// M, N ::= x | \x.M | M N | nu x.M | [M]N | mu 'a.M | ['a]M
enum class term_kind : uint8_t { var, lam, app, nu, neg_app, mu, naming };

struct term_node;
using term = std::shared_ptr<const term_node>;

struct term_node {
  term_kind kind;
  ident id{};   // var: occurrence; lam/nu: bound variable; mu: bound name; naming: the name
  term a{}, b{};
};

inline term mk_var(ident x) { return std::make_shared<term_node>(term_node{term_kind::var, x, {}, {}}); }
inline term mk_lam(ident x, term body) { return std::make_shared<term_node>(term_node{term_kind::lam, x, std::move(body), {}}); }
inline term mk_app(term f, term arg) { return std::make_shared<term_node>(term_node{term_kind::app, {}, std::move(f), std::move(arg)}); }
inline term mk_nu(ident x, term body) { return std::make_shared<term_node>(term_node{term_kind::nu, x, std::move(body), {}}); }
inline term mk_neg_app(term l, term r) { return std::make_shared<term_node>(term_node{term_kind::neg_app, {}, std::move(l), std::move(r)}); }
inline term mk_mu(ident alpha, term body) { return std::make_shared<term_node>(term_node{term_kind::mu, alpha, std::move(body), {}}); }
inline term mk_naming(ident alpha, term body) { return std::make_shared<term_node>(term_node{term_kind::naming, alpha, std::move(body), {}}); }

inline bool is_binder(term_kind k) {
  return k == term_kind::lam || k == term_kind::nu || k == term_kind::mu;
}

inline int term_size(const term& t) {
  if (!t) return 0;
  return 1 + term_size(t->a) + term_size(t->b);
}

namespace detail {

inline void free_idents_rec(const term& t, std::vector<ident>& bound, std::set<ident>& out) {
  if (!t) return;
  switch (t->kind) {
    case term_kind::var: {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t->id) return;
      out.insert(t->id);
      return;
    }
    case term_kind::lam:
    case term_kind::nu:
    case term_kind::mu:
      bound.push_back(t->id);
      free_idents_rec(t->a, bound, out);
      bound.pop_back();
      return;
    case term_kind::naming: {
      bool is_bound = false;
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t->id) { is_bound = true; break; }
      if (!is_bound) out.insert(t->id);
      free_idents_rec(t->a, bound, out);
      return;
    }
    case term_kind::app:
    case term_kind::neg_app:
      free_idents_rec(t->a, bound, out);
      free_idents_rec(t->b, bound, out);
      return;
  }
}

}  // namespace detail

inline std::set<ident> free_idents(const term& t) {
  std::set<ident> out;
  std::vector<ident> bound;
  detail::free_idents_rec(t, bound, out);
  return out;
}

inline std::set<ident> free_vars(const term& t) {
  std::set<ident> out;
  for (ident i : free_idents(t))
    if (i.kind == ident_kind::var) out.insert(i);
  return out;
}

inline std::set<ident> free_names(const term& t) {
  std::set<ident> out;
  for (ident i : free_idents(t))
    if (i.kind == ident_kind::name) out.insert(i);
  return out;
}

// Occurrence "free or bound", as used by the erasure rule's side condition.
inline bool occurs(const term& t, ident x) {
  if (!t) return false;
  if (t->kind != term_kind::app && t->kind != term_kind::neg_app && t->id == x) return true;
  return occurs(t->a, x) || occurs(t->b, x);
}

inline bool is_closed(const term& t) { return free_idents(t).empty(); }

namespace detail {

inline bool match_occurrence(ident x, ident y, const std::vector<std::pair<ident, ident>>& env) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == x || it->second == y) return it->first == x && it->second == y;
  }
  return x == y;  // both free: rigid
}

inline bool alpha_eq_rec(const term& l, const term& r, std::vector<std::pair<ident, ident>>& env) {
  if (!l || !r) return l == r;
  if (l->kind != r->kind) return false;
  switch (l->kind) {
    case term_kind::var:
      return match_occurrence(l->id, r->id, env);
    case term_kind::lam:
    case term_kind::nu:
    case term_kind::mu: {
      env.emplace_back(l->id, r->id);
      bool ok = alpha_eq_rec(l->a, r->a, env);
      env.pop_back();
      return ok;
    }
    case term_kind::naming:
      return match_occurrence(l->id, r->id, env) && alpha_eq_rec(l->a, r->a, env);
    case term_kind::app:
    case term_kind::neg_app:
      return alpha_eq_rec(l->a, r->a, env) && alpha_eq_rec(l->b, r->b, env);
  }
  return false;
}

}  // namespace detail

// Equality up to consistent renaming of bound variables and bound names.
inline bool alpha_eq(const term& l, const term& r) {
  std::vector<std::pair<ident, ident>> env;
  return detail::alpha_eq_rec(l, r, env);
}

// Structure key with de Bruijn levels for bound identifiers; two terms get
// the same key iff they are alpha-equivalent. Used for reduct-set hashing.
namespace detail {

inline void canon_key_rec(const term& t, std::vector<ident>& vstack, std::vector<ident>& nstack,
                          std::string& out) {
  auto bound_index = [](const std::vector<ident>& st, ident x) -> int {
    for (int i = static_cast<int>(st.size()) - 1; i >= 0; --i)
      if (st[static_cast<size_t>(i)] == x) return static_cast<int>(st.size()) - 1 - i;
    return -1;
  };
  switch (t->kind) {
    case term_kind::var: {
      int k = bound_index(vstack, t->id);
      out += (k >= 0) ? "b" + std::to_string(k) : "f" + std::to_string(t->id.id);
      return;
    }
    case term_kind::lam:
    case term_kind::nu:
    case term_kind::mu: {
      out += (t->kind == term_kind::lam) ? "L" : (t->kind == term_kind::nu) ? "V" : "M";
      auto& st = (t->kind == term_kind::mu) ? nstack : vstack;
      st.push_back(t->id);
      canon_key_rec(t->a, vstack, nstack, out);
      st.pop_back();
      return;
    }
    case term_kind::naming: {
      int k = bound_index(nstack, t->id);
      out += (k >= 0) ? "[b" + std::to_string(k) + "]" : "[f" + std::to_string(t->id.id) + "]";
      canon_key_rec(t->a, vstack, nstack, out);
      return;
    }
    case term_kind::app:
      out += "(";
      canon_key_rec(t->a, vstack, nstack, out);
      out += " ";
      canon_key_rec(t->b, vstack, nstack, out);
      out += ")";
      return;
    case term_kind::neg_app:
      out += "<";
      canon_key_rec(t->a, vstack, nstack, out);
      out += " ";
      canon_key_rec(t->b, vstack, nstack, out);
      out += ">";
      return;
  }
}

}  // namespace detail

inline std::string canon_key(const term& t) {
  std::string out;
  std::vector<ident> vstack, nstack;
  detail::canon_key_rec(t, vstack, nstack, out);
  return out;
}

// All subterms in preorder, including the term itself.
inline void collect_subterms(const term& t, std::vector<term>& out) {
  if (!t) return;
  out.push_back(t);
  collect_subterms(t->a, out);
  collect_subterms(t->b, out);
}

}  // namespace lamneg
