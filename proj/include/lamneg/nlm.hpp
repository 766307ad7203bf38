#pragma once

#include <functional>

#include "infer.hpp"
#include "parse.hpp"

namespace lamneg {
namespace nlm {

// Types of the single-class calculus: here bottom IS a type, so it may occur
// inside arrows and negations.
enum class nt_kind : uint8_t { bot, tvar, arrow, neg };

struct nt_node;
using nt = std::shared_ptr<const nt_node>;

struct nt_node {
  nt_kind kind;
  uint32_t var = 0;
  nt a{}, b{};
};

inline nt mk_bot() {
  static const nt bot = std::make_shared<nt_node>(nt_node{nt_kind::bot, 0, {}, {}});
  return bot;
}
inline nt mk_tvar(uint32_t v) { return std::make_shared<nt_node>(nt_node{nt_kind::tvar, v, {}, {}}); }
inline nt mk_arrow(nt a, nt b) { return std::make_shared<nt_node>(nt_node{nt_kind::arrow, 0, std::move(a), std::move(b)}); }
inline nt mk_neg(nt a) { return std::make_shared<nt_node>(nt_node{nt_kind::neg, 0, std::move(a), {}}); }

inline bool nt_eq(const nt& a, const nt& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case nt_kind::bot: return true;
    case nt_kind::tvar: return a->var == b->var;
    case nt_kind::arrow: return nt_eq(a->a, b->a) && nt_eq(a->b, b->b);
    case nt_kind::neg: return nt_eq(a->a, b->a);
  }
  return false;
}

inline bool occurs_nt(uint32_t v, const nt& t) {
  if (!t) return false;
  if (t->kind == nt_kind::tvar) return t->var == v;
  return occurs_nt(v, t->a) || occurs_nt(v, t->b);
}

inline bool mentions_bot(const nt& t) {
  if (!t) return false;
  if (t->kind == nt_kind::bot) return true;
  return mentions_bot(t->a) || mentions_bot(t->b);
}

struct nsubst {
  std::map<uint32_t, nt> m;
  nt operator()(const nt& t) const {
    if (!t) return t;
    switch (t->kind) {
      case nt_kind::bot: return t;
      case nt_kind::tvar: {
        auto it = m.find(t->var);
        return it != m.end() ? it->second : t;
      }
      case nt_kind::arrow: return mk_arrow((*this)(t->a), (*this)(t->b));
      case nt_kind::neg: return mk_neg((*this)(t->a));
    }
    return t;
  }
};

inline nsubst compose(const nsubst& s1, const nsubst& s2) {
  nsubst out;
  for (const auto& [v, t] : s2.m) out.m.emplace(v, s1(t));
  for (const auto& [v, t] : s1.m) out.m.emplace(v, t);
  return out;
}

inline std::optional<nsubst> unify(const nt& a, const nt& b) {
  if (a->kind == nt_kind::tvar && b->kind == nt_kind::tvar && a->var == b->var) return nsubst{};
  if (a->kind == nt_kind::tvar) {
    if (occurs_nt(a->var, b)) return std::nullopt;
    nsubst s;
    s.m.emplace(a->var, b);
    return s;
  }
  if (b->kind == nt_kind::tvar) return unify(b, a);
  if (a->kind == nt_kind::bot && b->kind == nt_kind::bot) return nsubst{};
  if (a->kind == nt_kind::arrow && b->kind == nt_kind::arrow) {
    auto s1 = unify(a->a, b->a);
    if (!s1) return std::nullopt;
    auto s2 = unify((*s1)(a->b), (*s1)(b->b));
    if (!s2) return std::nullopt;
    return compose(*s2, *s1);
  }
  if (a->kind == nt_kind::neg && b->kind == nt_kind::neg) return unify(a->a, b->a);
  return std::nullopt;
}

inline std::string print_ntype(const nt& t, bool arrow_parens = false) {
  switch (t->kind) {
    case nt_kind::bot: return "#";
    case nt_kind::tvar: return symbols::tyvar_text(t->var);
    case nt_kind::arrow: {
      std::string s = print_ntype(t->a, true) + " -> " + print_ntype(t->b, false);
      return arrow_parens ? "(" + s + ")" : s;
    }
    case nt_kind::neg: return "~" + print_ntype(t->a, true);
  }
  return "?";
}

// Terms: a single identifier class; mu binds a term variable, and there is
// no separate naming form.
enum class nkind : uint8_t { var, lam, app, nu, neg_app, mu };

struct nnode;
using nterm = std::shared_ptr<const nnode>;

struct nnode {
  nkind kind;
  ident x{};
  nterm a{}, b{};
};

inline nterm mk_var(ident x) { return std::make_shared<nnode>(nnode{nkind::var, x, {}, {}}); }
inline nterm mk_lam(ident x, nterm body) { return std::make_shared<nnode>(nnode{nkind::lam, x, std::move(body), {}}); }
inline nterm mk_app(nterm f, nterm a) { return std::make_shared<nnode>(nnode{nkind::app, {}, std::move(f), std::move(a)}); }
inline nterm mk_nu(ident x, nterm body) { return std::make_shared<nnode>(nnode{nkind::nu, x, std::move(body), {}}); }
inline nterm mk_neg_app(nterm l, nterm r) { return std::make_shared<nnode>(nnode{nkind::neg_app, {}, std::move(l), std::move(r)}); }
inline nterm mk_mu(ident x, nterm body) { return std::make_shared<nnode>(nnode{nkind::mu, x, std::move(body), {}}); }

namespace detail {

class nlm_parser {
 public:
  explicit nlm_parser(const std::string& src) : toks_(lex::tokenize(src)) {}

  nterm parse() {
    nterm t = pterm();
    expect(lex::tok::end, "trailing input after term");
    return t;
  }

 private:
  const lex::token& peek(size_t k = 0) const {
    size_t i = pos_ + k;
    return toks_[i < toks_.size() ? i : toks_.size() - 1];
  }
  lex::token advance() { return toks_[pos_++]; }
  void expect(lex::tok k, const std::string& what) {
    if (peek().kind != k) throw parse_error(what, peek().pos);
    ++pos_;
  }

  nterm binder(nkind kind) {
    advance();
    if (peek().kind == lex::tok::name)
      throw parse_error("this dialect has no names; binders take variables", peek().pos);
    if (peek().kind != lex::tok::ident) throw parse_error("expected variable binder", peek().pos);
    std::string x = advance().text;
    expect(lex::tok::dot, "expected '.' after binder");
    ident b = env_.bind(ident_kind::var, x);
    nterm body = pterm();
    env_.unbind();
    return kind == nkind::lam ? mk_lam(b, body) : kind == nkind::nu ? mk_nu(b, body) : mk_mu(b, body);
  }

  nterm pterm() {
    switch (peek().kind) {
      case lex::tok::lambda: return binder(nkind::lam);
      case lex::tok::nu: return binder(nkind::nu);
      case lex::tok::mu: return binder(nkind::mu);
      default: {
        nterm t = patom();
        while (peek().kind == lex::tok::ident || peek().kind == lex::tok::lbrack ||
               peek().kind == lex::tok::lparen)
          t = mk_app(t, patom());
        return t;
      }
    }
  }

  nterm patom() {
    switch (peek().kind) {
      case lex::tok::ident:
        return nlm::mk_var(env_.resolve(ident_kind::var, advance().text));
      case lex::tok::name:
        throw parse_error("this dialect has no names", peek().pos);
      case lex::tok::lparen: {
        advance();
        nterm t = pterm();
        expect(lex::tok::rparen, "expected ')'");
        return t;
      }
      case lex::tok::lbrack: {
        advance();
        nterm l = pterm();
        expect(lex::tok::rbrack, "expected ']'");
        lex::tok k = peek().kind;
        if (k == lex::tok::lambda || k == lex::tok::mu || k == lex::tok::nu)
          return mk_neg_app(l, pterm());
        return mk_neg_app(l, patom());
      }
      default:
        throw parse_error("expected a term", peek().pos);
    }
  }

  std::vector<lex::token> toks_;
  size_t pos_ = 0;
  lamneg::detail::scope env_;
};

}  // namespace detail

inline nterm parse(const std::string& src) { return detail::nlm_parser(src).parse(); }

using nctx = std::map<ident, nt>;

struct ntyping {
  nctx ctx;
  nt t;
};

namespace detail {

inline std::optional<nsubst> unify_nctx(const nctx& g1, const nctx& g2) {
  nsubst s;
  for (const auto& [subj, t] : g1) {
    auto it = g2.find(subj);
    if (it == g2.end()) continue;
    auto u = unify(s(t), s(it->second));
    if (!u) return std::nullopt;
    s = compose(*u, s);
  }
  return s;
}

inline nctx apply_nctx(const nsubst& s, const nctx& g) {
  nctx out;
  for (const auto& [subj, t] : g) out.emplace(subj, s(t));
  return out;
}

}  // namespace detail

// Principal typing with the same unification discipline as the host
// calculus, except that bottom is an ordinary type here: binder bodies are
// unified with # instead of being pattern-matched against it.
inline std::optional<ntyping> typecheck(const nterm& t, std::string* why = nullptr) {
  using lamneg::detail::set_err;
  switch (t->kind) {
    case nkind::var: {
      nt v = mk_tvar(symbols::fresh_tyvar());
      return ntyping{{{t->x, v}}, v};
    }
    case nkind::lam: {
      auto body = typecheck(t->a, why);
      if (!body) return std::nullopt;
      auto it = body->ctx.find(t->x);
      if (it != body->ctx.end()) {
        nt dom = it->second;
        body->ctx.erase(it);
        return ntyping{std::move(body->ctx), mk_arrow(dom, body->t)};
      }
      return ntyping{std::move(body->ctx), mk_arrow(mk_tvar(symbols::fresh_tyvar()), body->t)};
    }
    case nkind::app: {
      auto f = typecheck(t->a, why);
      if (!f) return std::nullopt;
      auto arg = typecheck(t->b, why);
      if (!arg) return std::nullopt;
      nt v = mk_tvar(symbols::fresh_tyvar());
      auto s1 = unify(f->t, mk_arrow(arg->t, v));
      if (!s1) {
        set_err(why, "cannot apply " + print_ntype(f->t) + " to " + print_ntype(arg->t));
        return std::nullopt;
      }
      auto s2 = detail::unify_nctx(detail::apply_nctx(*s1, f->ctx), detail::apply_nctx(*s1, arg->ctx));
      if (!s2) {
        set_err(why, "contexts of function and argument do not unify");
        return std::nullopt;
      }
      nsubst s = compose(*s2, *s1);
      nctx out = detail::apply_nctx(s, f->ctx);
      for (const auto& [subj, typ] : detail::apply_nctx(s, arg->ctx)) out.emplace(subj, typ);
      return ntyping{std::move(out), s(v)};
    }
    case nkind::nu:
    case nkind::mu: {
      auto body = typecheck(t->a, why);
      if (!body) return std::nullopt;
      auto s0 = unify(body->t, mk_bot());
      if (!s0) {
        set_err(why, "binder body must conclude #, found " + print_ntype(body->t));
        return std::nullopt;
      }
      nctx g = detail::apply_nctx(*s0, body->ctx);
      auto it = g.find(t->x);
      if (t->kind == nkind::nu) {
        if (it != g.end()) {
          nt dom = it->second;
          g.erase(it);
          return ntyping{std::move(g), mk_neg(dom)};
        }
        return ntyping{std::move(g), mk_neg(mk_tvar(symbols::fresh_tyvar()))};
      }
      // mu x.M : A from x:~A |- M : #
      if (it != g.end()) {
        nt rec = it->second;
        g.erase(it);
        nt v = mk_tvar(symbols::fresh_tyvar());
        auto s1 = unify(rec, mk_neg(v));
        if (!s1) {
          set_err(why, "mu binder used at " + print_ntype(rec) + ", not a negated type");
          return std::nullopt;
        }
        return ntyping{detail::apply_nctx(*s1, g), (*s1)(v)};
      }
      return ntyping{std::move(g), mk_tvar(symbols::fresh_tyvar())};
    }
    case nkind::neg_app: {
      auto l = typecheck(t->a, why);
      if (!l) return std::nullopt;
      auto r = typecheck(t->b, why);
      if (!r) return std::nullopt;
      auto s1 = unify(l->t, mk_neg(r->t));
      if (!s1) {
        set_err(why, "left of [.]. must have a negated type; cannot unify " +
                         print_ntype(l->t) + " with ~" + print_ntype(r->t));
        return std::nullopt;
      }
      auto s2 = detail::unify_nctx(detail::apply_nctx(*s1, l->ctx), detail::apply_nctx(*s1, r->ctx));
      if (!s2) {
        set_err(why, "contexts of a negated application do not unify");
        return std::nullopt;
      }
      nsubst s = compose(*s2, *s1);
      nctx out = detail::apply_nctx(s, l->ctx);
      for (const auto& [subj, typ] : detail::apply_nctx(s, r->ctx)) out.emplace(subj, typ);
      return ntyping{std::move(out), mk_bot()};
    }
  }
  return std::nullopt;
}

inline std::string print(const nterm& t) {
  auto atom = [](const nterm& u) {
    return u->kind == nkind::var || u->kind == nkind::neg_app;
  };
  std::function<std::string(const nterm&, int)> go = [&](const nterm& u, int prec) -> std::string {
    // prec 0: term, 1: applicand, 2: atom
    switch (u->kind) {
      case nkind::var:
        return symbols::hint(u->x);
      case nkind::lam:
      case nkind::nu:
      case nkind::mu: {
        std::string head = u->kind == nkind::lam ? "\\" : u->kind == nkind::nu ? "nu " : "mu ";
        std::string s = head + symbols::hint(u->x) + "." + go(u->a, 0);
        return prec > 0 ? "(" + s + ")" : s;
      }
      case nkind::app: {
        std::string s = go(u->a, 1) + " " + go(u->b, 2);
        return prec > 1 ? "(" + s + ")" : s;
      }
      case nkind::neg_app: {
        const nterm& arg = u->b;
        std::string rhs = atom(arg) ? " " + go(arg, 2) : go(arg, 2);
        return "[" + go(u->a, 0) + "]" + rhs;
      }
    }
    return "?";
  };
  return go(t, 0);
}

// The variables bound by mu, each paired with a fresh host-calculus name.
using vmap = std::map<ident, ident>;

inline void ul_rec(const nterm& t, vmap& out) {
  if (!t) return;
  if (t->kind == nkind::mu)
    out.emplace(t->x, symbols::fresh(ident_kind::name, symbols::hint(t->x)));
  ul_rec(t->a, out);
  ul_rec(t->b, out);
}

inline vmap ul(const nterm& t) {
  vmap out;
  ul_rec(t, out);
  return out;
}

// The mapping into the host calculus: a mu-bound variable x becomes the name
// v[x]; each of its occurrences becomes the negation introduction nu z.['a]z.
inline term translate(const nterm& t, const vmap& v) {
  switch (t->kind) {
    case nkind::var: {
      auto it = v.find(t->x);
      if (it == v.end()) return lamneg::mk_var(t->x);
      ident z = symbols::fresh(ident_kind::var, symbols::hint(t->x));
      return lamneg::mk_nu(z, mk_naming(it->second, lamneg::mk_var(z)));
    }
    case nkind::lam: return lamneg::mk_lam(t->x, translate(t->a, v));
    case nkind::nu: return lamneg::mk_nu(t->x, translate(t->a, v));
    case nkind::mu: return lamneg::mk_mu(v.at(t->x), translate(t->a, v));
    case nkind::app: return lamneg::mk_app(translate(t->a, v), translate(t->b, v));
    case nkind::neg_app: return lamneg::mk_neg_app(translate(t->a, v), translate(t->b, v));
  }
  return {};
}

// Bottom-free types convert into the host grammar.
inline std::optional<ty> to_host_type(const nt& t) {
  switch (t->kind) {
    case nt_kind::bot: return std::nullopt;
    case nt_kind::tvar: return lamneg::mk_tvar(t->var);
    case nt_kind::arrow: {
      auto a = to_host_type(t->a);
      auto b = to_host_type(t->b);
      if (!a || !b) return std::nullopt;
      return lamneg::mk_arrow(*a, *b);
    }
    case nt_kind::neg: {
      auto a = to_host_type(t->a);
      if (!a) return std::nullopt;
      return lamneg::mk_neg(*a);
    }
  }
  return std::nullopt;
}

// x:A becomes 'a:A when 'a/x is in the map; other entries are untouched.
inline std::optional<typing_context> translate_context(const nctx& g, const vmap& v) {
  typing_context out;
  for (const auto& [subj, typ] : g) {
    auto host = to_host_type(typ);
    if (!host) return std::nullopt;
    auto it = v.find(subj);
    out.emplace(it != v.end() ? it->second : subj, *host);
  }
  return out;
}

inline ntyping canonicalize(const ntyping& j) {
  std::vector<uint32_t> order;
  std::function<void(const nt&)> collect = [&](const nt& t) {
    if (!t) return;
    if (t->kind == nt_kind::tvar) {
      for (uint32_t v : order)
        if (v == t->var) return;
      order.push_back(t->var);
      return;
    }
    collect(t->a);
    collect(t->b);
  };
  for (const auto& [subj, typ] : j.ctx) collect(typ);
  collect(j.t);
  nsubst s;
  uint32_t next = 1;
  for (uint32_t v : order) s.m.emplace(v, mk_tvar(next++));
  ntyping out;
  for (const auto& [subj, typ] : j.ctx) out.ctx.emplace(subj, s(typ));
  out.t = s(j.t);
  return out;
}

inline std::string print_judgement(const ntyping& j, const std::string& term_text) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [subj, typ] : j.ctx) {
    if (!first) os << ", ";
    first = false;
    os << symbols::hint(subj) << ":" << print_ntype(typ);
  }
  if (!first) os << " ";
  os << "⊢ " << term_text << " : " << print_ntype(j.t);
  return os.str();
}

}  // namespace nlm
}  // namespace lamneg
