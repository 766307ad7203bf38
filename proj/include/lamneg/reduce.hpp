#pragma once

#include <optional>
#include <random>
#include <json.hpp>

#include "print.hpp"
#include "subst.hpp"

namespace lamneg {

// The six reduction rules:
//   beta   (\x.M) N    ->  M[N/x]
//   nu     [nu x.M] N  ->  M[N/x]
//   mu     (mu 'a.M) N ->  mu 'g.M[N.'g/'a]   ('g fresh)
//   delta  [mu 'a.M] N ->  M[N/'a]
//   theta  mu 'a.['a]M ->  M                  ('a does not occur in M)
//   rho    ['b]mu 'g.M ->  M['b/'g]
enum class rule_tag : uint8_t { beta, nu_rule, mu_rule, delta, theta, rho };

inline constexpr rule_tag all_rule_tags[6] = {rule_tag::beta,  rule_tag::nu_rule,
                                              rule_tag::mu_rule, rule_tag::delta,
                                              rule_tag::theta, rule_tag::rho};

inline const char* rule_name(rule_tag r) {
  switch (r) {
    case rule_tag::beta: return "beta";
    case rule_tag::nu_rule: return "nu";
    case rule_tag::mu_rule: return "mu";
    case rule_tag::delta: return "delta";
    case rule_tag::theta: return "theta";
    case rule_tag::rho: return "rho";
  }
  return "?";
}

inline std::optional<rule_tag> rule_from_name(const std::string& s) {
  for (rule_tag r : all_rule_tags)
    if (s == rule_name(r)) return r;
  return std::nullopt;
}

struct rule_mask {
  uint8_t bits = 0x3f;
  bool has(rule_tag r) const { return bits & (1u << static_cast<int>(r)); }
  static rule_mask all() { return rule_mask{0x3f}; }
  static rule_mask without_theta() {
    return rule_mask{static_cast<uint8_t>(0x3f & ~(1u << static_cast<int>(rule_tag::theta)))};
  }
};

// Contractum of t under `rule` when t is a redex of that rule at the root.
inline std::optional<term> root_step(const term& t, rule_tag rule) {
  switch (rule) {
    case rule_tag::beta:
      if (t->kind == term_kind::app && t->a->kind == term_kind::lam)
        return subst_term(t->a->a, t->b, t->a->id);
      return std::nullopt;
    case rule_tag::nu_rule:
      if (t->kind == term_kind::neg_app && t->a->kind == term_kind::nu)
        return subst_term(t->a->a, t->b, t->a->id);
      return std::nullopt;
    case rule_tag::mu_rule:
      if (t->kind == term_kind::app && t->a->kind == term_kind::mu) {
        ident gamma = symbols::fresh(ident_kind::name, "g");
        return mk_mu(gamma, subst_struct(t->a->a, t->b, t->a->id, gamma));
      }
      return std::nullopt;
    case rule_tag::delta:
      if (t->kind == term_kind::neg_app && t->a->kind == term_kind::mu)
        return subst_insert(t->a->a, t->b, t->a->id);
      return std::nullopt;
    case rule_tag::theta:
      if (t->kind == term_kind::mu && t->a->kind == term_kind::naming &&
          t->a->id == t->id && !occurs(t->a->a, t->id))
        return t->a->a;
      return std::nullopt;
    case rule_tag::rho:
      if (t->kind == term_kind::naming && t->a->kind == term_kind::mu)
        return rename_name(t->a->a, t->id, t->a->id);
      return std::nullopt;
  }
  return std::nullopt;
}

using position = std::vector<int>;

struct reduction_step {
  rule_tag rule;
  position pos;
  term before, after;
};

namespace detail {

inline term replace_at(const term& t, const position& pos, size_t i, const term& repl) {
  if (i == pos.size()) return repl;
  int c = pos[i];
  term child = (c == 0) ? t->a : t->b;
  term nc = replace_at(child, pos, i + 1, repl);
  switch (t->kind) {
    case term_kind::lam: return mk_lam(t->id, nc);
    case term_kind::nu: return mk_nu(t->id, nc);
    case term_kind::mu: return mk_mu(t->id, nc);
    case term_kind::naming: return mk_naming(t->id, nc);
    case term_kind::app: return c == 0 ? mk_app(nc, t->b) : mk_app(t->a, nc);
    case term_kind::neg_app: return c == 0 ? mk_neg_app(nc, t->b) : mk_neg_app(t->a, nc);
    case term_kind::var: break;
  }
  return repl;
}

inline const term& subterm_at(const term& t, const position& pos, size_t i) {
  if (i == pos.size()) return t;
  return subterm_at(pos[i] == 0 ? t->a : t->b, pos, i + 1);
}

inline void enumerate_rec(const term& root, const term& t, position& path, rule_mask mask,
                          std::vector<reduction_step>& out) {
  for (rule_tag r : all_rule_tags) {
    if (!mask.has(r)) continue;
    if (auto contractum = root_step(t, r))
      out.push_back({r, path, root, replace_at(root, path, 0, *contractum)});
  }
  if (t->a) {
    path.push_back(0);
    enumerate_rec(root, t->a, path, mask, out);
    path.pop_back();
  }
  if (t->b) {
    path.push_back(1);
    enumerate_rec(root, t->b, path, mask, out);
    path.pop_back();
  }
}

}  // namespace detail

inline term subterm_at(const term& t, const position& pos) {
  return detail::subterm_at(t, pos, 0);
}

inline term replace_at(const term& t, const position& pos, const term& repl) {
  return detail::replace_at(t, pos, 0, repl);
}

// One entry per (position, rule) pair where a rule applies; evaluation
// contexts reach under every constructor, so this is a full tree scan.
inline std::vector<reduction_step> enumerate_redexes(const term& t,
                                                     rule_mask mask = rule_mask::all()) {
  std::vector<reduction_step> out;
  position path;
  detail::enumerate_rec(t, t, path, mask, out);
  return out;
}

// Re-applies step.rule at step.pos inside step.before; the step is valid iff
// the result is exactly step.after (fresh names aside, see replay_matches).
inline std::optional<term> replay(const reduction_step& step) {
  term sub = subterm_at(step.before, step.pos);
  auto contractum = root_step(sub, step.rule);
  if (!contractum) return std::nullopt;
  return replace_at(step.before, step.pos, *contractum);
}

enum class strategy : uint8_t { leftmost_outermost, rightmost_innermost, random_order };

inline std::optional<strategy> strategy_from_name(const std::string& s) {
  if (s == "lo") return strategy::leftmost_outermost;
  if (s == "ri") return strategy::rightmost_innermost;
  if (s == "random") return strategy::random_order;
  return std::nullopt;
}

struct normalize_options {
  strategy strat = strategy::leftmost_outermost;
  uint64_t seed = 0;
  int fuel = 10000;
  rule_mask rules = rule_mask::all();
};

struct trace {
  term initial;
  std::vector<reduction_step> steps;
  term final;
  bool fuel_exhausted = false;
};

namespace detail {

// Outer positions before inner ones, left children before right ones.
inline bool pos_lo_less(const position& a, const position& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

inline size_t select_redex(const std::vector<reduction_step>& rs, strategy st,
                           std::mt19937_64& rng) {
  size_t best = 0;
  switch (st) {
    case strategy::leftmost_outermost:
      for (size_t i = 1; i < rs.size(); ++i)
        if (pos_lo_less(rs[i].pos, rs[best].pos)) best = i;
      return best;
    case strategy::rightmost_innermost:
      for (size_t i = 1; i < rs.size(); ++i)
        if (pos_lo_less(rs[best].pos, rs[i].pos)) best = i;
      return best;
    case strategy::random_order:
      return std::uniform_int_distribution<size_t>(0, rs.size() - 1)(rng);
  }
  return best;
}

}  // namespace detail

inline trace normalize(const term& t, const normalize_options& opt = {}) {
  trace tr;
  tr.initial = t;
  tr.final = t;
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.fuel; ++i) {
    auto rs = enumerate_redexes(tr.final, opt.rules);
    if (rs.empty()) return tr;
    reduction_step step = rs[detail::select_redex(rs, opt.strat, rng)];
    tr.final = step.after;
    tr.steps.push_back(std::move(step));
  }
  tr.fuel_exhausted = !enumerate_redexes(tr.final, opt.rules).empty();
  return tr;
}

inline nlohmann::json to_json(const trace& tr) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : tr.steps)
    steps.push_back({{"rule", rule_name(s.rule)},
                     {"position", s.pos},
                     {"after", print_term(s.after)}});
  return {{"initial", print_term(tr.initial)},
          {"steps", std::move(steps)},
          {"final", print_term(tr.final)},
          {"fuel_exhausted", tr.fuel_exhausted}};
}

}  // namespace lamneg
