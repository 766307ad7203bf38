#pragma once

#include <map>
#include <sstream>
#include <string>

#include "syntax.hpp"

namespace lamneg {

// Display names: free identifiers keep their interned text, binders take
// their hint, renamed with a numeric suffix when that would capture or clash.
// Variables and names draw from separate pools ('a never collides with a).
class display_names {
 public:
  explicit display_names(const term& t) {
    for (ident i : free_idents(t)) choose(i, symbols::hint(i));
    walk_binders(t);
  }

  std::string text(ident i) const {
    auto it = chosen_.find(i);
    return it != chosen_.end() ? it->second : symbols::hint(i);
  }

 private:
  void walk_binders(const term& t) {
    if (!t) return;
    if (is_binder(t->kind) && !chosen_.count(t->id)) choose(t->id, symbols::hint(t->id));
    walk_binders(t->a);
    walk_binders(t->b);
  }

  void choose(ident i, const std::string& hint) {
    auto& used = (i.kind == ident_kind::var) ? used_vars_ : used_names_;
    std::string base = hint.empty() ? std::string("x") : hint;
    std::string pick = base;
    for (int k = 1; used.count(pick); ++k) pick = base + std::to_string(k);
    used.insert(pick);
    chosen_.emplace(i, pick);
  }

  std::map<ident, std::string> chosen_;
  std::set<std::string> used_vars_, used_names_;
};

namespace detail {

inline bool is_atom(const term& t) {
  return t->kind == term_kind::var || t->kind == term_kind::naming ||
         t->kind == term_kind::neg_app;
}

inline void print_rec(const term& t, const display_names& dn, std::ostream& os);

inline void print_atom(const term& t, const display_names& dn, std::ostream& os) {
  if (is_atom(t)) {
    print_rec(t, dn, os);
  } else {
    os << "(";
    print_rec(t, dn, os);
    os << ")";
  }
}

inline void print_applicand(const term& t, const display_names& dn, std::ostream& os) {
  if (t->kind == term_kind::app || is_atom(t)) {
    print_rec(t, dn, os);
  } else {
    os << "(";
    print_rec(t, dn, os);
    os << ")";
  }
}

inline void print_rec(const term& t, const display_names& dn, std::ostream& os) {
  switch (t->kind) {
    case term_kind::var:
      os << dn.text(t->id);
      return;
    case term_kind::lam:
      os << "\\" << dn.text(t->id) << ".";
      print_rec(t->a, dn, os);
      return;
    case term_kind::nu:
      os << "nu " << dn.text(t->id) << ".";
      print_rec(t->a, dn, os);
      return;
    case term_kind::mu:
      os << "mu '" << dn.text(t->id) << ".";
      print_rec(t->a, dn, os);
      return;
    case term_kind::app:
      print_applicand(t->a, dn, os);
      os << " ";
      print_atom(t->b, dn, os);
      return;
    case term_kind::naming:
      os << "['" << dn.text(t->id) << "]";
      print_atom(t->a, dn, os);
      return;
    case term_kind::neg_app:
      os << "[";
      print_rec(t->a, dn, os);
      os << "]";
      if (!is_atom(t->b) ) {
        print_atom(t->b, dn, os);
      } else {
        os << " ";
        print_rec(t->b, dn, os);
      }
      return;
  }
}

}  // namespace detail

inline std::string print_term(const term& t) {
  display_names dn(t);
  std::ostringstream os;
  detail::print_rec(t, dn, os);
  return os.str();
}

}  // namespace lamneg
