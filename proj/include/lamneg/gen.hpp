#pragma once

#include <random>

#include "infer.hpp"
#include "lmu.hpp"
#include "nlm.hpp"

namespace lamneg {

// Rule weights for derivation-directed generation. While plenty of budget
// remains the leaf weights drop to 1 and the structural ones get a boost, so
// terms actually fill their size allowance.
struct gen_weights {
  int axiom = 3;       // reuse an assumption with the goal type
  int invent = 2;      // add a fresh free assumption
  int intro = 5;       // lambda / nu introduction on a matching goal
  int mu = 2;          // proof by contradiction
  int app = 2;         // arrow elimination
  int neg_elim_pct = 35;  // chance that a conflict goal uses negation elimination
};

struct gen_config {
  uint64_t seed = 1;
  int count = 100;
  int max_size = 30;
  gen_weights weights{};
};

// Same (seed, trial) always gives the same stream.
inline std::mt19937_64 trial_rng(uint64_t seed, uint64_t trial) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return std::mt19937_64(z ^ (z >> 31));
}

namespace detail {

inline int rand_below(std::mt19937_64& rng, int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

inline bool chance(std::mt19937_64& rng, int pct) { return rand_below(rng, 100) < pct; }

template <class T>
inline const T& pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[static_cast<size_t>(rand_below(rng, static_cast<int>(xs.size())))];
}

inline int pick_weighted(std::mt19937_64& rng, const std::vector<std::pair<int, int>>& options) {
  int total = 0;
  for (const auto& [id, w] : options) total += w;
  int r = rand_below(rng, total);
  for (const auto& [id, w] : options) {
    if (r < w) return id;
    r -= w;
  }
  return options.back().first;
}

}  // namespace detail

inline ty gen_small_type(std::mt19937_64& rng, int depth = 2) {
  int r = detail::rand_below(rng, 100);
  if (depth == 0 || r < 55) return mk_tvar(static_cast<uint32_t>(1 + detail::rand_below(rng, 3)));
  if (r < 80) return mk_arrow(gen_small_type(rng, depth - 1), gen_small_type(rng, depth - 1));
  return mk_neg(gen_small_type(rng, depth - 1));
}

struct typed_term {
  typing_context ctx;
  term t;
  concl c;
};

// Builds a random typing derivation top-down, so the result is well typed by
// construction. Free variables and names are invented on demand and reported
// in the context; names enter only with negated types, through the mu binder
// or by naming.
class typed_generator {
 public:
  explicit typed_generator(std::mt19937_64& rng, gen_weights w = {}) : rng_(rng), w_(w) {}

  typed_term generate(int max_size, bool allow_bottom_goal = true) {
    if (allow_bottom_goal && detail::chance(rng_, 15)) {
      term t = go_bot(std::max(2, max_size));
      return {invented_, t, concl::bottom()};
    }
    ty goal = gen_small_type(rng_);
    term t = go_ty(goal, std::max(1, max_size));
    return {invented_, t, concl::of(goal)};
  }

 private:
  enum opt { ax, invent, intro, mu_rule, app_rule, naming_rule, neg_elim };

  ident fresh_var() { return symbols::fresh(ident_kind::var, "x" + std::to_string(++var_n_)); }
  ident fresh_name() { return symbols::fresh(ident_kind::name, "a" + std::to_string(++name_n_)); }

  std::vector<ident> matches(const ty& goal) const {
    std::vector<ident> out;
    for (const auto& [subj, t] : scope_)
      if (subj.kind == ident_kind::var && ty_eq(t, goal)) out.push_back(subj);
    return out;
  }

  // Every construct spends one node and splits the rest over its children,
  // so the result never exceeds the requested size.
  term go_ty(const ty& goal, int budget) {
    auto ms = matches(goal);
    if (budget <= 2) {
      if (!ms.empty()) return mk_var(detail::pick(rng_, ms));
      return mk_var(invent_var(goal));
    }
    // leaves get cheap only once the budget runs low
    bool roomy = budget > 8;
    std::vector<std::pair<int, int>> options;
    if (!ms.empty()) options.push_back({ax, roomy ? 1 : w_.axiom});
    options.push_back({invent, roomy ? 1 : w_.invent});
    if (goal->kind == ty_kind::arrow) options.push_back({intro, w_.intro + (roomy ? 2 : 0)});
    if (goal->kind == ty_kind::neg && budget >= 3)
      options.push_back({intro, w_.intro + (roomy ? 2 : 0)});
    if (budget >= 3) options.push_back({mu_rule, w_.mu + (roomy ? 2 : 0)});
    if (budget >= 5) options.push_back({app_rule, w_.app + (roomy ? 5 : 0)});
    switch (detail::pick_weighted(rng_, options)) {
      case ax:
        return mk_var(detail::pick(rng_, ms));
      case invent:
        return mk_var(invent_var(goal));
      case intro: {
        // invented frees stay in scope, so binders are removed by position
        if (goal->kind == ty_kind::arrow) {
          ident x = fresh_var();
          size_t mark = scope_.size();
          scope_.push_back({x, goal->a});
          term body = go_ty(goal->b, budget - 1);
          scope_.erase(scope_.begin() + static_cast<long>(mark));
          return mk_lam(x, body);
        }
        ident x = fresh_var();
        size_t mark = scope_.size();
        scope_.push_back({x, goal->a});
        term body = go_bot(budget - 1);
        scope_.erase(scope_.begin() + static_cast<long>(mark));
        return mk_nu(x, body);
      }
      case mu_rule: {
        ident alpha = fresh_name();
        size_t mark = scope_.size();
        scope_.push_back({alpha, mk_neg(goal)});
        term body = go_bot(budget - 1);
        scope_.erase(scope_.begin() + static_cast<long>(mark));
        return mk_mu(alpha, body);
      }
      default: {
        ty b = gen_small_type(rng_);
        int left = 2 + detail::rand_below(rng_, budget - 3);  // both sides at least room for a leaf
        term f = go_ty(mk_arrow(b, goal), left);
        term arg = go_ty(b, budget - 1 - left);
        return mk_app(f, arg);
      }
    }
  }

  term go_bot(int budget) {
    if (budget >= 5 &&
        detail::chance(rng_, budget > 8 ? w_.neg_elim_pct + 20 : w_.neg_elim_pct)) {
      ty b = gen_small_type(rng_);
      int left = 2 + detail::rand_below(rng_, budget - 3);
      term l = go_ty(mk_neg(b), left);
      term r = go_ty(b, budget - 1 - left);
      return mk_neg_app(l, r);
    }
    std::vector<std::pair<ident, ty>> names;
    for (const auto& [subj, t] : scope_)
      if (subj.kind == ident_kind::name) names.push_back({subj, t});
    ident alpha;
    ty inner;
    if (!names.empty() && !detail::chance(rng_, 20)) {
      auto [a, t] = detail::pick(rng_, names);
      alpha = a;
      inner = t->a;
    } else {
      inner = gen_small_type(rng_, 1);
      alpha = invent_name(mk_neg(inner));
    }
    return mk_naming(alpha, go_ty(inner, budget - 1));
  }

  ident invent_var(const ty& t) {
    ident x = fresh_var();
    invented_.emplace(x, t);
    scope_.push_back({x, t});
    return x;
  }

  ident invent_name(const ty& neg_t) {
    ident a = fresh_name();
    invented_.emplace(a, neg_t);
    scope_.push_back({a, neg_t});
    return a;
  }

  std::mt19937_64& rng_;
  gen_weights w_;
  int var_n_ = 0, name_n_ = 0;
  typing_context invented_;
  std::vector<std::pair<ident, ty>> scope_;
};

inline typed_term gen_typed_term(std::mt19937_64& rng, int max_size, bool allow_bottom_goal = true,
                                 gen_weights w = {}) {
  typed_generator g(rng, w);
  return g.generate(max_size, allow_bottom_goal);
}

// ---- fragment generator: types are negation-free, judgements carry a
// separate co-context of alternative conclusions. -----------------------

struct lmu_typed {
  std::map<ident, ty> gamma, delta;
  lmu::lterm t;
  ty a;
};

class lmu_generator {
 public:
  explicit lmu_generator(std::mt19937_64& rng) : rng_(rng) {}

  lmu_typed generate(int max_size) {
    ty goal = arrow_type(2);
    lmu::lterm t = go(goal, std::max(1, max_size));
    return {gamma_inv_, delta_inv_, t, goal};
  }

 private:
  enum opt { ax, invent, lam_rule, app_rule, switch_rule };

  ty arrow_type(int depth) {
    int r = detail::rand_below(rng_, 100);
    if (depth == 0 || r < 60) return mk_tvar(static_cast<uint32_t>(1 + detail::rand_below(rng_, 3)));
    return mk_arrow(arrow_type(depth - 1), arrow_type(depth - 1));
  }

  lmu::lterm go(const ty& goal, int budget) {
    std::vector<ident> ms;
    for (const auto& [subj, t] : gamma_scope_)
      if (ty_eq(t, goal)) ms.push_back(subj);
    if (budget <= 2) {
      if (!ms.empty()) return lmu::mk_var(detail::pick(rng_, ms));
      return lmu::mk_var(invent_var(goal));
    }
    bool roomy = budget > 8;
    std::vector<std::pair<int, int>> options{{invent, roomy ? 1 : 2}, {switch_rule, roomy ? 4 : 3}};
    if (!ms.empty()) options.push_back({ax, roomy ? 1 : 3});
    if (goal->kind == ty_kind::arrow) options.push_back({lam_rule, roomy ? 7 : 5});
    if (budget >= 5) options.push_back({app_rule, roomy ? 7 : 2});
    switch (detail::pick_weighted(rng_, options)) {
      case ax:
        return lmu::mk_var(detail::pick(rng_, ms));
      case invent:
        return lmu::mk_var(invent_var(goal));
      case lam_rule: {
        ident x = symbols::fresh(ident_kind::var, "x" + std::to_string(++var_n_));
        size_t mark = gamma_scope_.size();
        gamma_scope_.push_back({x, goal->a});
        lmu::lterm body = go(goal->b, budget - 1);
        gamma_scope_.erase(gamma_scope_.begin() + static_cast<long>(mark));
        return lmu::mk_lam(x, body);
      }
      case switch_rule: {
        ident alpha = symbols::fresh(ident_kind::name, "a" + std::to_string(++name_n_));
        size_t mark = delta_scope_.size();
        delta_scope_.push_back({alpha, goal});
        ident beta;
        ty bty;
        if (!detail::chance(rng_, 25)) {
          auto [b, t] = detail::pick(rng_, delta_scope_);
          beta = b;
          bty = t;
        } else {
          beta = symbols::fresh(ident_kind::name, "a" + std::to_string(++name_n_));
          bty = arrow_type(1);
          delta_inv_.emplace(beta, bty);
          delta_scope_.push_back({beta, bty});
        }
        lmu::lterm body = go(bty, budget - 1);
        delta_scope_.erase(delta_scope_.begin() + static_cast<long>(mark));  // drop alpha, keep invented beta
        return lmu::mk_cswitch(alpha, beta, body);
      }
      default: {
        ty b = arrow_type(1);
        int left = 2 + detail::rand_below(rng_, budget - 3);
        lmu::lterm f = go(mk_arrow(b, goal), left);
        lmu::lterm arg = go(b, budget - 1 - left);
        return lmu::mk_app(f, arg);
      }
    }
  }

  ident invent_var(const ty& t) {
    ident x = symbols::fresh(ident_kind::var, "x" + std::to_string(++var_n_));
    gamma_inv_.emplace(x, t);
    gamma_scope_.push_back({x, t});
    return x;
  }

  std::mt19937_64& rng_;
  int var_n_ = 0, name_n_ = 0;
  std::map<ident, ty> gamma_inv_, delta_inv_;
  std::vector<std::pair<ident, ty>> gamma_scope_, delta_scope_;
};

inline lmu_typed gen_lmu_typed(std::mt19937_64& rng, int max_size) {
  lmu_generator g(rng);
  return g.generate(max_size);
}

// ---- single-class generator with bottom-free types, for the translation
// property. --------------------------------------------------------------

struct nlm_typed {
  nlm::nctx ctx;
  nlm::nterm t;
  nlm::nt a;
};

class nlm_generator {
 public:
  explicit nlm_generator(std::mt19937_64& rng) : rng_(rng) {}

  nlm_typed generate(int max_size) {
    nlm::nt goal = small(2);
    nlm::nterm t = go_ty(goal, std::max(1, max_size));
    return {invented_, t, goal};
  }

 private:
  enum opt { ax, invent, intro, mu_rule, app_rule };

  nlm::nt small(int depth) {
    int r = detail::rand_below(rng_, 100);
    if (depth == 0 || r < 55)
      return nlm::mk_tvar(static_cast<uint32_t>(1 + detail::rand_below(rng_, 3)));
    if (r < 80) return nlm::mk_arrow(small(depth - 1), small(depth - 1));
    return nlm::mk_neg(small(depth - 1));
  }

  nlm::nterm go_ty(const nlm::nt& goal, int budget) {
    std::vector<ident> ms;
    for (const auto& [subj, t] : scope_)
      if (nlm::nt_eq(t, goal)) ms.push_back(subj);
    if (budget <= 2) {
      if (!ms.empty()) return nlm::mk_var(detail::pick(rng_, ms));
      return nlm::mk_var(invent_var(goal));
    }
    bool roomy = budget > 8;
    std::vector<std::pair<int, int>> options{{invent, roomy ? 1 : 2}};
    if (!ms.empty()) options.push_back({ax, roomy ? 1 : 3});
    if (goal->kind == nlm::nt_kind::arrow) options.push_back({intro, roomy ? 7 : 5});
    if (goal->kind == nlm::nt_kind::neg && budget >= 4) options.push_back({intro, roomy ? 7 : 5});
    if (budget >= 4) options.push_back({mu_rule, roomy ? 4 : 2});
    if (budget >= 5) options.push_back({app_rule, roomy ? 7 : 2});
    switch (detail::pick_weighted(rng_, options)) {
      case ax:
        return nlm::mk_var(detail::pick(rng_, ms));
      case invent:
        return nlm::mk_var(invent_var(goal));
      case intro: {
        ident x = fresh_var();
        size_t mark = scope_.size();
        if (goal->kind == nlm::nt_kind::arrow) {
          scope_.push_back({x, goal->a});
          nlm::nterm body = go_ty(goal->b, budget - 1);
          scope_.erase(scope_.begin() + static_cast<long>(mark));
          return nlm::mk_lam(x, body);
        }
        scope_.push_back({x, goal->a});
        nlm::nterm body = go_bot(budget - 1);
        scope_.erase(scope_.begin() + static_cast<long>(mark));
        return nlm::mk_nu(x, body);
      }
      case mu_rule: {
        ident x = fresh_var();
        size_t mark = scope_.size();
        scope_.push_back({x, nlm::mk_neg(goal)});
        nlm::nterm body = go_bot(budget - 1);
        scope_.erase(scope_.begin() + static_cast<long>(mark));
        return nlm::mk_mu(x, body);
      }
      default: {
        nlm::nt b = small(1);
        int left = 2 + detail::rand_below(rng_, budget - 3);
        nlm::nterm f = go_ty(nlm::mk_arrow(b, goal), left);
        nlm::nterm arg = go_ty(b, budget - 1 - left);
        return nlm::mk_app(f, arg);
      }
    }
  }

  // Conflict can only come from negation elimination here.
  nlm::nterm go_bot(int budget) {
    nlm::nt b = small(1);
    int left = budget >= 5 ? 2 + detail::rand_below(rng_, budget - 3) : std::max(1, budget - 2);
    nlm::nterm l = go_ty(nlm::mk_neg(b), left);
    nlm::nterm r = go_ty(b, budget - 1 - left);
    return nlm::mk_neg_app(l, r);
  }

  ident fresh_var() { return symbols::fresh(ident_kind::var, "x" + std::to_string(++var_n_)); }

  ident invent_var(const nlm::nt& t) {
    ident x = fresh_var();
    invented_.emplace(x, t);
    scope_.push_back({x, t});
    return x;
  }

  std::mt19937_64& rng_;
  int var_n_ = 0;
  nlm::nctx invented_;
  std::vector<std::pair<ident, nlm::nt>> scope_;
};

inline nlm_typed gen_nlm_typed(std::mt19937_64& rng, int max_size) {
  nlm_generator g(rng);
  return g.generate(max_size);
}

// ---- grammar-directed raw terms (mostly untypeable), for syntax and
// substitution properties. ------------------------------------------------

class raw_generator {
 public:
  raw_generator(std::mt19937_64& rng, std::vector<ident> fvars, std::vector<ident> fnames)
      : rng_(rng), fvars_(std::move(fvars)), fnames_(std::move(fnames)) {}

  term generate(int size) { return go(size); }

 private:
  term go(int size) {
    if (size <= 1) return mk_var(any_var());
    switch (detail::rand_below(rng_, 14)) {
      case 0:
      case 1: {
        ident x = symbols::fresh(ident_kind::var, "b" + std::to_string(++bind_n_));
        bound_vars_.push_back(x);
        term body = go(size - 1);
        bound_vars_.pop_back();
        return mk_lam(x, body);
      }
      case 2: {
        ident x = symbols::fresh(ident_kind::var, "b" + std::to_string(++bind_n_));
        bound_vars_.push_back(x);
        term body = go(size - 1);
        bound_vars_.pop_back();
        return mk_nu(x, body);
      }
      case 3:
      case 4: {
        ident a = symbols::fresh(ident_kind::name, "c" + std::to_string(++bind_n_));
        bound_names_.push_back(a);
        term body = go(size - 1);
        bound_names_.pop_back();
        return mk_mu(a, body);
      }
      case 5:
      case 6:
      case 7:
        return mk_naming(any_name(), go(size - 1));
      case 8:
      case 9:
      case 10: {
        int ls = 1 + detail::rand_below(rng_, size - 1);
        return mk_app(go(ls), go(size - ls));
      }
      case 11:
      case 12: {
        int ls = 1 + detail::rand_below(rng_, size - 1);
        return mk_neg_app(go(ls), go(size - ls));
      }
      default:
        return mk_var(any_var());
    }
  }

  ident any_var() {
    if (!bound_vars_.empty() && detail::chance(rng_, 60)) return detail::pick(rng_, bound_vars_);
    return detail::pick(rng_, fvars_);
  }

  ident any_name() {
    if (!bound_names_.empty() && detail::chance(rng_, 60)) return detail::pick(rng_, bound_names_);
    return detail::pick(rng_, fnames_);
  }

  std::mt19937_64& rng_;
  std::vector<ident> fvars_, fnames_;
  std::vector<ident> bound_vars_, bound_names_;
  int bind_n_ = 0;
};

inline term gen_raw_term(std::mt19937_64& rng, int size, std::vector<ident> fvars,
                         std::vector<ident> fnames) {
  raw_generator g(rng, std::move(fvars), std::move(fnames));
  return g.generate(size);
}

}  // namespace lamneg
