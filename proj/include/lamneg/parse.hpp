#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syntax.hpp"
#include "types.hpp"

namespace lamneg {

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
  size_t position;
};

namespace lex {

enum class tok : uint8_t {
  lambda, mu, nu, dot, lparen, rparen, lbrack, rbrack,
  ident, name, arrow, tilde, hash, colon, comma, end
};

struct token {
  tok kind;
  std::string text;
  size_t pos;
};

inline bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9');
}

inline std::vector<token> tokenize(const std::string& src) {
  std::vector<token> out;
  size_t i = 0;
  const size_t n = src.size();
  auto match_utf8 = [&](const char* seq) {
    size_t len = std::char_traits<char>::length(seq);
    return src.compare(i, len, seq) == 0 ? len : 0;
  };
  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
    size_t start = i;
    if (c == '\\') { out.push_back({tok::lambda, "\\", start}); ++i; continue; }
    if (c == '.') { out.push_back({tok::dot, ".", start}); ++i; continue; }
    if (c == '(') { out.push_back({tok::lparen, "(", start}); ++i; continue; }
    if (c == ')') { out.push_back({tok::rparen, ")", start}); ++i; continue; }
    if (c == '[') { out.push_back({tok::lbrack, "[", start}); ++i; continue; }
    if (c == ']') { out.push_back({tok::rbrack, "]", start}); ++i; continue; }
    if (c == '~') { out.push_back({tok::tilde, "~", start}); ++i; continue; }
    if (c == '#') { out.push_back({tok::hash, "#", start}); ++i; continue; }
    if (c == ':') { out.push_back({tok::colon, ":", start}); ++i; continue; }
    if (c == ',') { out.push_back({tok::comma, ",", start}); ++i; continue; }
    if (c == '-' && i + 1 < n && src[i + 1] == '>') {
      out.push_back({tok::arrow, "->", start});
      i += 2;
      continue;
    }
    if (size_t len = match_utf8("\xce\xbb")) { out.push_back({tok::lambda, "λ", start}); i += len; continue; }
    if (size_t len = match_utf8("\xce\xbc")) { out.push_back({tok::mu, "μ", start}); i += len; continue; }
    if (size_t len = match_utf8("\xce\xbd")) { out.push_back({tok::nu, "ν", start}); i += len; continue; }
    if (c == '\'') {
      ++i;
      if (i >= n || !ident_start(src[i])) throw parse_error("expected identifier after '", start);
      size_t j = i;
      while (j < n && ident_char(src[j])) ++j;
      out.push_back({tok::name, src.substr(i, j - i), start});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < n && ident_char(src[j])) ++j;
      std::string word = src.substr(i, j - i);
      if (word == "lam") out.push_back({tok::lambda, word, start});
      else if (word == "mu") out.push_back({tok::mu, word, start});
      else if (word == "nu") out.push_back({tok::nu, word, start});
      else out.push_back({tok::ident, word, start});
      i = j;
      continue;
    }
    // "p1" style digits are only legal inside identifiers; a bare digit run
    // has no meaning in this grammar.
    throw parse_error(std::string("unexpected character '") + c + "'", start);
  }
  out.push_back({tok::end, "", n});
  return out;
}

}  // namespace lex

namespace detail {

// Scoped text -> ident environment; binders shadow, free occurrences intern.
class scope {
 public:
  ident bind(ident_kind k, const std::string& text) {
    ident fresh = symbols::fresh(k, text);
    stack_.push_back({k, text, fresh});
    return fresh;
  }
  void unbind() { stack_.pop_back(); }

  ident resolve(ident_kind k, const std::string& text) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
      if (it->kind == k && it->text == text) return it->id;
    return symbols::intern(k, text);
  }

 private:
  struct entry { ident_kind kind; std::string text; ident id; };
  std::vector<entry> stack_;
};

class term_parser {
 public:
  explicit term_parser(const std::string& src) : toks_(lex::tokenize(src)) {}

  term parse() {
    term t = pterm();
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

  term pterm() {
    switch (peek().kind) {
      case lex::tok::lambda: {
        advance();
        if (peek().kind == lex::tok::name)
          throw parse_error("a name cannot be bound by a lambda; expected a variable", peek().pos);
        if (peek().kind != lex::tok::ident) throw parse_error("expected variable after lambda", peek().pos);
        std::string x = advance().text;
        expect(lex::tok::dot, "expected '.' after binder");
        ident b = env_.bind(ident_kind::var, x);
        term body = pterm();
        env_.unbind();
        return mk_lam(b, body);
      }
      case lex::tok::nu: {
        advance();
        if (peek().kind == lex::tok::name)
          throw parse_error("a name cannot be bound by nu; expected a variable", peek().pos);
        if (peek().kind != lex::tok::ident) throw parse_error("expected variable after nu", peek().pos);
        std::string x = advance().text;
        expect(lex::tok::dot, "expected '.' after binder");
        ident b = env_.bind(ident_kind::var, x);
        term body = pterm();
        env_.unbind();
        return mk_nu(b, body);
      }
      case lex::tok::mu: {
        advance();
        if (peek().kind == lex::tok::ident)
          throw parse_error("mu binds a name; expected 'a-style name", peek().pos);
        if (peek().kind != lex::tok::name) throw parse_error("expected name after mu", peek().pos);
        std::string a = advance().text;
        expect(lex::tok::dot, "expected '.' after binder");
        ident b = env_.bind(ident_kind::name, a);
        term body = pterm();
        env_.unbind();
        return mk_mu(b, body);
      }
      default:
        return papp();
    }
  }

  bool atom_starts() const {
    lex::tok k = peek().kind;
    return k == lex::tok::ident || k == lex::tok::lbrack || k == lex::tok::lparen;
  }

  // The argument of ['a]M or [M]N: an atom, or a trailing binder that
  // extends as far to the right as possible ("['b]mu 'g.['g]x").
  term pbracket_arg() {
    lex::tok k = peek().kind;
    if (k == lex::tok::lambda || k == lex::tok::mu || k == lex::tok::nu) return pterm();
    return patom();
  }

  term papp() {
    term t = patom();
    while (atom_starts()) t = mk_app(t, patom());
    return t;
  }

  term patom() {
    switch (peek().kind) {
      case lex::tok::ident: {
        lex::token x = advance();
        return mk_var(env_.resolve(ident_kind::var, x.text));
      }
      case lex::tok::name:
        throw parse_error("a name is not a term", peek().pos);
      case lex::tok::lparen: {
        advance();
        term t = pterm();
        expect(lex::tok::rparen, "expected ')'");
        return t;
      }
      case lex::tok::lbrack: {
        advance();
        // A bracket holding a single name token is a naming; anything else is
        // a negated application.
        if (peek().kind == lex::tok::name && peek(1).kind == lex::tok::rbrack) {
          ident a = env_.resolve(ident_kind::name, advance().text);
          advance();  // ]
          return mk_naming(a, pbracket_arg());
        }
        term l = pterm();
        expect(lex::tok::rbrack, "expected ']'");
        return mk_neg_app(l, pbracket_arg());
      }
      default:
        throw parse_error("expected a term", peek().pos);
    }
  }

  std::vector<lex::token> toks_;
  size_t pos_ = 0;
  scope env_;
};

// type := ntype { "->" type } ; ntype := "~" ntype | tyvar | "(" type ")"
class type_parser {
 public:
  explicit type_parser(const std::string& src) : toks_(lex::tokenize(src)) {}

  ty parse_type() {
    ty t = ptype();
    expect(lex::tok::end, "trailing input after type");
    return t;
  }

  // "#" alone denotes bottom; it is not accepted inside a type.
  concl parse_conclusion() {
    if (peek().kind == lex::tok::hash) {
      advance();
      expect(lex::tok::end, "trailing input after #");
      return concl::bottom();
    }
    return concl::of(parse_type());
  }

  // entries := (ident | name) ":" type { "," entries }; names must carry
  // negated types.
  typing_context parse_context() {
    typing_context g;
    if (peek().kind == lex::tok::end) return g;
    while (true) {
      ident subj;
      if (peek().kind == lex::tok::ident) {
        subj = symbols::intern(ident_kind::var, advance().text);
      } else if (peek().kind == lex::tok::name) {
        subj = symbols::intern(ident_kind::name, advance().text);
      } else {
        throw parse_error("expected a variable or name in context", peek().pos);
      }
      expect(lex::tok::colon, "expected ':' in context entry");
      ty t = ptype();
      if (subj.kind == ident_kind::name && t->kind != ty_kind::neg)
        throw parse_error("a name must be given a negated type", peek().pos);
      if (!g.emplace(subj, t).second)
        throw parse_error("duplicate subject in context", peek().pos);
      if (peek().kind != lex::tok::comma) break;
      advance();
    }
    expect(lex::tok::end, "trailing input after context");
    return g;
  }

 private:
  const lex::token& peek() const { return toks_[pos_ < toks_.size() ? pos_ : toks_.size() - 1]; }
  lex::token advance() { return toks_[pos_++]; }
  void expect(lex::tok k, const std::string& what) {
    if (peek().kind != k) throw parse_error(what, peek().pos);
    ++pos_;
  }

  ty ptype() {
    ty l = pntype();
    if (peek().kind == lex::tok::arrow) {
      advance();
      return mk_arrow(l, ptype());
    }
    return l;
  }

  ty pntype() {
    switch (peek().kind) {
      case lex::tok::tilde:
        advance();
        return mk_neg(pntype());
      case lex::tok::ident:
        return mk_tvar(symbols::intern_tyvar(advance().text));
      case lex::tok::lparen: {
        advance();
        ty t = ptype();
        expect(lex::tok::rparen, "expected ')'");
        return t;
      }
      case lex::tok::hash:
        throw parse_error("bottom (#) is not a type", peek().pos);
      default:
        throw parse_error("expected a type", peek().pos);
    }
  }

  std::vector<lex::token> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

inline term parse_term(const std::string& src) { return detail::term_parser(src).parse(); }

inline ty parse_type(const std::string& src) { return detail::type_parser(src).parse_type(); }

inline concl parse_conclusion(const std::string& src) {
  return detail::type_parser(src).parse_conclusion();
}

inline typing_context parse_context(const std::string& src) {
  return detail::type_parser(src).parse_context();
}

}  // namespace lamneg
