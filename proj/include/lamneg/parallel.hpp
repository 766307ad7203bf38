#pragma once

#include <unordered_map>
#include <unordered_set>

#include "reduce.hpp"

namespace lamneg {

// Generalised parallel reduction: simultaneous contraction where the redex
// head may itself be the result of a parallel step. The congruence rules
// traverse every constructor; the contraction rules fire when the function
// part reduces to an abstraction of the right shape. The erasure rule has no
// counterpart here.
//
//   (1) x => x                    (7) ['a]M => ['a]M'
//   (2) \x.M => \x.M'             (8) ['b]M => M''['b/'a]      if M => mu 'a.M''
//   (3) mu 'a.M => mu 'a.M'       (9) M N => M''[N'/x]         if M => \x.M''
//   (4) nu x.M => nu x.M'        (10) M N => mu 'g.M''[N'.'g/'a] if M => mu 'a.M''
//   (5) M N => M' N'             (11) [M]N => M''[N'/x]        if M => nu x.M''
//   (6) [M]N => [M']N'           (12) [M]N => M''[N'/'a]       if M => mu 'a.M''

// A derivation is a tree of rule numbers; congruence and head-contraction
// rules have one child per premise.
struct par_deriv {
  int rule = 1;
  std::vector<par_deriv> kids;
};

struct parallel_reduct {
  term source, target;
  par_deriv derivation;
};

// Re-runs a derivation tree against a source term; the result is the target
// up to alpha-equivalence (rule 10 draws its fresh name again).
inline std::optional<term> replay(const term& t, const par_deriv& d) {
  auto kid = [&](size_t i) -> const par_deriv& { return d.kids[i]; };
  switch (d.rule) {
    case 1:
      return t->kind == term_kind::var ? std::optional<term>(t) : std::nullopt;
    case 2:
    case 3:
    case 4: {
      term_kind want = d.rule == 2 ? term_kind::lam : d.rule == 3 ? term_kind::mu : term_kind::nu;
      if (t->kind != want || d.kids.size() != 1) return std::nullopt;
      auto body = replay(t->a, kid(0));
      if (!body) return std::nullopt;
      return d.rule == 2 ? mk_lam(t->id, *body)
           : d.rule == 3 ? mk_mu(t->id, *body)
                         : mk_nu(t->id, *body);
    }
    case 5:
    case 6: {
      term_kind want = d.rule == 5 ? term_kind::app : term_kind::neg_app;
      if (t->kind != want || d.kids.size() != 2) return std::nullopt;
      auto f = replay(t->a, kid(0));
      auto a = replay(t->b, kid(1));
      if (!f || !a) return std::nullopt;
      return d.rule == 5 ? mk_app(*f, *a) : mk_neg_app(*f, *a);
    }
    case 7: {
      if (t->kind != term_kind::naming || d.kids.size() != 1) return std::nullopt;
      auto body = replay(t->a, kid(0));
      if (!body) return std::nullopt;
      return mk_naming(t->id, *body);
    }
    case 8: {
      if (t->kind != term_kind::naming || d.kids.size() != 1) return std::nullopt;
      auto body = replay(t->a, kid(0));
      if (!body || (*body)->kind != term_kind::mu) return std::nullopt;
      return rename_name((*body)->a, t->id, (*body)->id);
    }
    case 9: {
      if (t->kind != term_kind::app || d.kids.size() != 2) return std::nullopt;
      auto f = replay(t->a, kid(0));
      auto a = replay(t->b, kid(1));
      if (!f || !a || (*f)->kind != term_kind::lam) return std::nullopt;
      return subst_term((*f)->a, *a, (*f)->id);
    }
    case 10: {
      if (t->kind != term_kind::app || d.kids.size() != 2) return std::nullopt;
      auto f = replay(t->a, kid(0));
      auto a = replay(t->b, kid(1));
      if (!f || !a || (*f)->kind != term_kind::mu) return std::nullopt;
      ident gamma = symbols::fresh(ident_kind::name, "g");
      return mk_mu(gamma, subst_struct((*f)->a, *a, (*f)->id, gamma));
    }
    case 11: {
      if (t->kind != term_kind::neg_app || d.kids.size() != 2) return std::nullopt;
      auto f = replay(t->a, kid(0));
      auto a = replay(t->b, kid(1));
      if (!f || !a || (*f)->kind != term_kind::nu) return std::nullopt;
      return subst_term((*f)->a, *a, (*f)->id);
    }
    case 12: {
      if (t->kind != term_kind::neg_app || d.kids.size() != 2) return std::nullopt;
      auto f = replay(t->a, kid(0));
      auto a = replay(t->b, kid(1));
      if (!f || !a || (*f)->kind != term_kind::mu) return std::nullopt;
      return subst_insert((*f)->a, *a, (*f)->id);
    }
    default:
      return std::nullopt;
  }
}

class parallel_enum {
 public:
  explicit parallel_enum(size_t cap = 10000) : cap_(cap) {}

  // All one-step parallel reducts with their derivations, deduplicated up to
  // alpha-equivalence; nullopt when the enumeration exceeds the cap.
  std::optional<std::vector<parallel_reduct>> reducts(const term& t) {
    exceeded_ = false;
    const std::vector<entry>& r = go(t);
    if (exceeded_) return std::nullopt;
    std::vector<parallel_reduct> out;
    out.reserve(r.size());
    for (const entry& e : r) out.push_back({t, e.target, e.d});
    return out;
  }

  bool exceeded() const { return exceeded_; }

 private:
  struct entry {
    term target;
    par_deriv d;
  };

  const std::vector<entry>& go(const term& t) {
    auto it = memo_.find(t.get());
    if (it != memo_.end()) return it->second;

    std::vector<entry> out;
    std::unordered_set<std::string> seen;
    auto add = [&](term u, par_deriv d) {
      if (out.size() >= cap_) { exceeded_ = true; return; }
      if (seen.insert(canon_key(u)).second) out.push_back({std::move(u), std::move(d)});
    };

    switch (t->kind) {
      case term_kind::var:
        add(t, {1, {}});
        break;
      case term_kind::lam:
      case term_kind::nu:
      case term_kind::mu: {
        int rule = t->kind == term_kind::lam ? 2 : t->kind == term_kind::mu ? 3 : 4;
        for (const entry& body : go(t->a)) {
          if (exceeded_) break;
          term u = t->kind == term_kind::lam ? mk_lam(t->id, body.target)
                 : t->kind == term_kind::nu  ? mk_nu(t->id, body.target)
                                             : mk_mu(t->id, body.target);
          add(std::move(u), {rule, {body.d}});
        }
        break;
      }
      case term_kind::naming:
        for (const entry& body : go(t->a)) {
          if (exceeded_) break;
          add(mk_naming(t->id, body.target), {7, {body.d}});
          if (body.target->kind == term_kind::mu)
            add(rename_name(body.target->a, t->id, body.target->id), {8, {body.d}});
        }
        break;
      case term_kind::app:
      case term_kind::neg_app: {
        const std::vector<entry>& fs = go(t->a);
        const std::vector<entry>& as = go(t->b);
        if (fs.size() * as.size() > cap_) { exceeded_ = true; break; }
        for (const entry& f : fs) {
          for (const entry& arg : as) {
            if (exceeded_) break;
            if (t->kind == term_kind::app) {
              add(mk_app(f.target, arg.target), {5, {f.d, arg.d}});
              if (f.target->kind == term_kind::lam)
                add(subst_term(f.target->a, arg.target, f.target->id), {9, {f.d, arg.d}});
              if (f.target->kind == term_kind::mu) {
                ident gamma = symbols::fresh(ident_kind::name, "g");
                add(mk_mu(gamma, subst_struct(f.target->a, arg.target, f.target->id, gamma)),
                    {10, {f.d, arg.d}});
              }
            } else {
              add(mk_neg_app(f.target, arg.target), {6, {f.d, arg.d}});
              if (f.target->kind == term_kind::nu)
                add(subst_term(f.target->a, arg.target, f.target->id), {11, {f.d, arg.d}});
              if (f.target->kind == term_kind::mu)
                add(subst_insert(f.target->a, arg.target, f.target->id), {12, {f.d, arg.d}});
            }
          }
        }
        break;
      }
    }
    return memo_.emplace(t.get(), std::move(out)).first->second;
  }

  size_t cap_;
  bool exceeded_ = false;
  std::unordered_map<const term_node*, std::vector<entry>> memo_;
};

inline std::optional<std::vector<parallel_reduct>> parallel_reducts_derived(const term& t,
                                                                            size_t cap = 10000) {
  parallel_enum e(cap);
  return e.reducts(t);
}

inline std::optional<std::vector<term>> parallel_reducts(const term& t, size_t cap = 10000) {
  auto derived = parallel_reducts_derived(t, cap);
  if (!derived) return std::nullopt;
  std::vector<term> out;
  out.reserve(derived->size());
  for (const auto& r : *derived) out.push_back(r.target);
  return out;
}

// Bounded breadth-first joinability search over parallel reduction from both
// sides; returns a common reduct up to alpha-equivalence, if one shows up
// within `depth` rounds.
inline std::optional<term> join(const term& t1, const term& t2, int depth, size_t cap = 10000) {
  using frontier = std::unordered_map<std::string, term>;
  frontier a{{canon_key(t1), t1}}, b{{canon_key(t2), t2}};
  auto common = [](const frontier& x, const frontier& y) -> std::optional<term> {
    for (const auto& [k, t] : x)
      if (y.count(k)) return t;
    return std::nullopt;
  };
  if (auto c = common(a, b)) return c;
  for (int round = 0; round < depth; ++round) {
    auto expand = [&](frontier& f) {
      frontier next = f;
      for (const auto& [k, t] : f) {
        auto rs = parallel_reducts(t, cap);
        if (!rs) continue;
        for (const term& u : *rs) next.emplace(canon_key(u), u);
      }
      f = std::move(next);
    };
    expand(a);
    expand(b);
    if (auto c = common(a, b)) return c;
  }
  return std::nullopt;
}

struct diamond_report {
  term input;
  size_t reduct_count = 0;
  size_t pairs_checked = 0;
  bool bound_exceeded = false;
  std::vector<std::pair<term, term>> violations;
  bool ok() const { return !bound_exceeded && violations.empty(); }
};

// For every pair of parallel reducts of t, a single parallel step from each
// side must meet in a common term. Inputs above the size bound are rejected
// as bound-exceeded up front; reduct sets grow exponentially in redex count.
inline diamond_report check_diamond(const term& t, size_t cap = 10000, int max_size = 64) {
  diamond_report rep;
  rep.input = t;
  if (term_size(t) > max_size) {
    rep.bound_exceeded = true;
    return rep;
  }
  auto reducts = parallel_reducts(t, cap);
  if (!reducts) {
    rep.bound_exceeded = true;
    return rep;
  }
  rep.reduct_count = reducts->size();

  // Reduct sets of alpha-equivalent terms agree up to alpha, so cache by key.
  std::unordered_map<std::string, std::optional<std::unordered_set<std::string>>> keysets;
  auto reduct_keys = [&](const term& u)
      -> const std::optional<std::unordered_set<std::string>>& {
    std::string k = canon_key(u);
    auto it = keysets.find(k);
    if (it != keysets.end()) return it->second;
    auto rs = parallel_reducts(u, cap);
    std::optional<std::unordered_set<std::string>> ks;
    if (rs) {
      ks.emplace();
      for (const term& v : *rs) ks->insert(canon_key(v));
    }
    return keysets.emplace(std::move(k), std::move(ks)).first->second;
  };

  for (size_t i = 0; i < reducts->size(); ++i) {
    for (size_t j = i + 1; j < reducts->size(); ++j) {
      const auto& ki = reduct_keys((*reducts)[i]);
      const auto& kj = reduct_keys((*reducts)[j]);
      if (!ki || !kj) {
        rep.bound_exceeded = true;
        return rep;
      }
      ++rep.pairs_checked;
      bool met = false;
      for (const std::string& k : *ki)
        if (kj->count(k)) { met = true; break; }
      if (!met) rep.violations.emplace_back((*reducts)[i], (*reducts)[j]);
    }
  }
  return rep;
}

inline nlohmann::json to_json(const diamond_report& rep) {
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& [a, b] : rep.violations)
    viol.push_back({{"left", print_term(a)}, {"right", print_term(b)}});
  return {{"term", print_term(rep.input)},
          {"reducts", rep.reduct_count},
          {"pairs_checked", rep.pairs_checked},
          {"bound_exceeded", rep.bound_exceeded},
          {"violations", std::move(viol)}};
}

}  // namespace lamneg
