#pragma once

#include <chrono>
#include <functional>

#include "gen.hpp"
#include "parallel.hpp"

namespace lamneg {

struct suite_failure {
  std::string input;
  std::string detail;
};

struct suite_report {
  std::string suite;
  std::string property;
  int trials = 0;
  std::vector<suite_failure> failures;
  double wall_ms = 0;
  bool ok() const { return failures.empty(); }
};

inline nlohmann::json to_json(const suite_report& r) {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : r.failures) fails.push_back({{"input", f.input}, {"detail", f.detail}});
  return {{"suite", r.suite},
          {"property", r.property},
          {"trials", r.trials},
          {"failures", std::move(fails)},
          {"wall_ms", r.wall_ms},
          {"ok", r.ok()}};
}

inline std::string report_table(const suite_report& r) {
  std::ostringstream os;
  os << r.suite << ": " << r.trials << " trials, " << r.failures.size() << " failures, "
     << static_cast<long>(r.wall_ms) << " ms  [" << r.property << "]\n";
  for (size_t i = 0; i < r.failures.size() && i < 5; ++i)
    os << "  FAIL " << r.failures[i].input << "\n       " << r.failures[i].detail << "\n";
  if (r.failures.size() > 5) os << "  ... " << (r.failures.size() - 5) << " more\n";
  return os.str();
}

namespace detail {

// Greedy subterm shrinking: keep descending into the first proper subterm on
// which the property still fails.
inline term shrink_term(term t, const std::function<bool(const term&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<term> subs;
    collect_subterms(t, subs);
    for (size_t i = 1; i < subs.size(); ++i) {
      if (fails(subs[i])) {
        t = subs[i];
        progress = true;
        break;
      }
    }
  }
  return t;
}

struct timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

}  // namespace detail

// --- subject reduction ----------------------------------------------------

inline suite_report run_subject_reduction(const gen_config& cfg) {
  suite_report rep;
  rep.suite = "subject-reduction";
  rep.property = "every single step from a well-typed term re-checks at the same judgement";
  detail::timer tm;
  auto fails_at_principal = [](const term& u) {
    auto j = principal_typing(u);
    if (!j) return false;
    for (const auto& step : enumerate_redexes(u))
      if (!check(j->ctx, step.after, j->c)) return true;
    return false;
  };
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed, static_cast<uint64_t>(i));
    typed_term tt = gen_typed_term(rng, cfg.max_size, true, cfg.weights);
    ++rep.trials;
    int budget = static_cast<int>(enumerate_redexes(tt.t).size());
    sr_report sr = subject_reduction_check(tt.ctx, tt.t, tt.c, budget);
    if (!sr.ok()) {
      term small = detail::shrink_term(tt.t, fails_at_principal);
      rep.failures.push_back(
          {print_term(small), "step " + std::string(rule_name(sr.violation->step.rule)) +
                                  " broke the judgement: " + sr.violation->why});
    }
  }
  rep.wall_ms = tm.ms();
  return rep;
}

// --- confluence -------------------------------------------------------------

inline suite_report run_confluence(const gen_config& cfg) {
  suite_report rep;
  rep.suite = "confluence";
  rep.property =
      "parallel reducts pairwise join in one step; strategies reach equal normal forms "
      "(erasure rule off)";
  detail::timer tm;
  auto diamond_fails = [](const term& u) {
    auto d = check_diamond(u);
    return !d.bound_exceeded && !d.violations.empty();
  };
  int small_size = std::min(cfg.max_size, 12);
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed, static_cast<uint64_t>(i));
    typed_term tt = gen_typed_term(rng, small_size, true, cfg.weights);
    ++rep.trials;
    diamond_report d = check_diamond(tt.t);
    if (d.bound_exceeded) continue;
    if (!d.violations.empty()) {
      term small = detail::shrink_term(tt.t, diamond_fails);
      rep.failures.push_back({print_term(small), "parallel reducts do not join in one step"});
    }
  }
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed ^ 0x5eedu, static_cast<uint64_t>(i));
    typed_term tt = gen_typed_term(rng, cfg.max_size, true, cfg.weights);
    ++rep.trials;
    normalize_options lo;
    lo.rules = rule_mask::without_theta();
    trace base = normalize(tt.t, lo);
    if (base.fuel_exhausted) {
      rep.failures.push_back({print_term(tt.t), "fuel exhausted under leftmost-outermost"});
      continue;
    }
    for (int k = 0; k < 5; ++k) {
      normalize_options ro;
      ro.strat = strategy::random_order;
      ro.seed = cfg.seed * 131 + static_cast<uint64_t>(i * 5 + k);
      ro.rules = rule_mask::without_theta();
      trace other = normalize(tt.t, ro);
      if (other.fuel_exhausted || !alpha_eq(base.final, other.final)) {
        rep.failures.push_back({print_term(tt.t),
                                "normal forms disagree: " + print_term(base.final) + " vs " +
                                    print_term(other.final)});
        break;
      }
    }
  }
  rep.wall_ms = tm.ms();
  return rep;
}

// --- strong normalisation ----------------------------------------------------

inline suite_report run_sn(const gen_config& cfg) {
  suite_report rep;
  rep.suite = "sn";
  rep.property = "well-typed terms reach a normal form within the fuel bound";
  detail::timer tm;
  auto fails = [](const term& u) {
    if (!principal_typing(u)) return false;
    return normalize(u).fuel_exhausted;
  };
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed, static_cast<uint64_t>(i));
    typed_term tt = gen_typed_term(rng, cfg.max_size, true, cfg.weights);
    ++rep.trials;
    normalize_options lo;
    trace tr = normalize(tt.t, lo);
    normalize_options ro;
    ro.strat = strategy::random_order;
    ro.seed = cfg.seed + static_cast<uint64_t>(i);
    trace rr = normalize(tt.t, ro);
    if (tr.fuel_exhausted || rr.fuel_exhausted) {
      term small = detail::shrink_term(tt.t, fails);
      rep.failures.push_back({print_term(small), "fuel exhausted"});
    }
  }
  rep.wall_ms = tm.ms();
  return rep;
}

// --- substitution commutation --------------------------------------------

// The sixteen reorderings of the four substitution operators. s1 targets x
// (term), 'b (structural with 'g / insertion / renaming to 'g); s2 targets y
// (term), 'a (structural with 'd / insertion / renaming to 'd).
inline int subst_commute_check(const term& m, const term& n, const term& p, ident x, ident y,
                               ident alpha, ident beta, ident gamma, ident gamma_ren,
                               ident delta) {
  auto s2 = [&](const term& t, int j) {
    switch (j) {
      case 0: return subst_term(t, p, y);
      case 1: return subst_struct(t, p, alpha, delta);
      case 2: return subst_insert(t, p, alpha);
      default: return rename_name(t, delta, alpha);
    }
  };
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      term lhs, rhs;
      switch (i) {
        case 0:
          lhs = s2(subst_term(m, n, x), j);
          rhs = subst_term(s2(m, j), s2(n, j), x);
          break;
        case 1:
          lhs = s2(subst_struct(m, n, beta, gamma), j);
          rhs = subst_struct(s2(m, j), s2(n, j), beta, gamma);
          break;
        case 2:
          lhs = s2(subst_insert(m, n, beta), j);
          rhs = subst_insert(s2(m, j), s2(n, j), beta);
          break;
        default:
          // renaming first: a term substitution afterwards commutes plainly;
          // the other three may re-introduce the renaming target, so they get
          // applied once more on the right.
          lhs = s2(rename_name(m, gamma_ren, beta), j);
          rhs = rename_name(s2(m, j), gamma_ren, beta);
          if (j != 0) rhs = s2(rhs, j);
          break;
      }
      if (!alpha_eq(lhs, rhs)) return i * 4 + j + 1;
    }
  }
  return 0;
}

inline suite_report run_subst_commute(const gen_config& cfg) {
  suite_report rep;
  rep.suite = "subst-commute";
  rep.property = "the four substitution operators commute in all sixteen orderings";
  detail::timer tm;
  ident x = symbols::intern(ident_kind::var, "x");
  ident y = symbols::intern(ident_kind::var, "y");
  ident u = symbols::intern(ident_kind::var, "u");
  ident v = symbols::intern(ident_kind::var, "v");
  ident w = symbols::intern(ident_kind::var, "w");
  ident alpha = symbols::intern(ident_kind::name, "a");
  ident beta = symbols::intern(ident_kind::name, "b");
  ident fm = symbols::intern(ident_kind::name, "m");
  ident fn = symbols::intern(ident_kind::name, "n");
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed, static_cast<uint64_t>(i));
    // The identifier a substitution replaces must not resurface in a later
    // payload, so p avoids x, 'a and 'b.
    term m = gen_raw_term(rng, 2 + detail::rand_below(rng, 8), {x, y, u}, {alpha, beta, fm});
    term n = gen_raw_term(rng, 1 + detail::rand_below(rng, 5), {y, u, v}, {alpha, fm});
    term p = gen_raw_term(rng, 1 + detail::rand_below(rng, 5), {y, u, v, w}, {fm, fn});
    ident gamma = symbols::fresh(ident_kind::name, "g");
    ident gamma_ren = detail::chance(rng, 25) ? alpha : gamma;
    ident delta = symbols::fresh(ident_kind::name, "d");
    ++rep.trials;
    int eq = subst_commute_check(m, n, p, x, y, alpha, beta, gamma, gamma_ren, delta);
    if (eq != 0)
      rep.failures.push_back({"M=" + print_term(m) + "  N=" + print_term(n) + "  P=" + print_term(p),
                              "equation " + std::to_string(eq) + " of 16 failed"});
  }
  rep.wall_ms = tm.ms();
  return rep;
}

// --- principal typing round trip -------------------------------------------

inline suite_report run_pt_roundtrip(const gen_config& cfg) {
  suite_report rep;
  rep.suite = "pt-roundtrip";
  rep.property = "principal typings re-check, and random instances of them are accepted";
  detail::timer tm;
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed, static_cast<uint64_t>(i));
    typed_term tt = gen_typed_term(rng, cfg.max_size, true, cfg.weights);
    ++rep.trials;
    std::string why;
    if (!check(tt.ctx, tt.t, tt.c, &why)) {
      rep.failures.push_back({print_term(tt.t), "generated judgement rejected: " + why});
      continue;
    }
    auto j = principal_typing(tt.t, &why);
    if (!j) {
      rep.failures.push_back({print_term(tt.t), "no principal typing: " + why});
      continue;
    }
    if (!check(j->ctx, tt.t, j->c, &why)) {
      rep.failures.push_back({print_term(tt.t), "principal typing does not re-check: " + why});
      continue;
    }
    // Instance: substitute a random subset of the inferred variables and
    // weaken with fresh assumptions.
    std::vector<uint32_t> order;
    for (const auto& [subj, t] : j->ctx) tvars_in_order(t, order);
    if (!j->c.is_bottom()) tvars_in_order(j->c.t, order);
    ty_subst s;
    for (uint32_t tv : order)
      if (detail::chance(rng, 70)) s.m.emplace(tv, gen_small_type(rng, 1));
    typing inst = apply_subst(s, *j);
    typing_context weakened = inst.ctx;
    weakened.emplace(symbols::fresh(ident_kind::var, "wk"), gen_small_type(rng, 1));
    weakened.emplace(symbols::fresh(ident_kind::name, "wk"), mk_neg(gen_small_type(rng, 1)));
    if (!check(weakened, tt.t, inst.c, &why))
      rep.failures.push_back({print_term(tt.t), "instance of principal typing rejected: " + why});
  }
  rep.wall_ms = tm.ms();
  return rep;
}

// --- bridges ------------------------------------------------------------------

inline suite_report run_translation(const gen_config& cfg) {
  suite_report rep;
  rep.suite = "translation";
  rep.property =
      "embedded fragment terms stay typeable with negated co-context; translated single-class "
      "terms check at the same type";
  detail::timer tm;
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed, static_cast<uint64_t>(i));
    lmu_typed g = gen_lmu_typed(rng, cfg.max_size);
    ++rep.trials;
    std::string why;
    if (!check(lmu::embed_context(g.gamma, g.delta), lmu::embed(g.t), concl::of(g.a), &why))
      rep.failures.push_back({lmu::print(g.t), "embedding lost the typing: " + why});
  }
  for (int i = 0; i < cfg.count; ++i) {
    auto rng = trial_rng(cfg.seed ^ 0xabcdu, static_cast<uint64_t>(i));
    nlm_typed g = gen_nlm_typed(rng, cfg.max_size);
    ++rep.trials;
    nlm::vmap v = nlm::ul(g.t);
    auto ctx = nlm::translate_context(g.ctx, v);
    auto a = nlm::to_host_type(g.a);
    if (!ctx || !a) {
      rep.failures.push_back({nlm::print(g.t), "generated judgement mentions # inside a type"});
      continue;
    }
    std::string why;
    if (!check(*ctx, nlm::translate(g.t, v), concl::of(*a), &why))
      rep.failures.push_back({nlm::print(g.t), "translation lost the typing: " + why});
  }
  rep.wall_ms = tm.ms();
  return rep;
}

inline std::optional<suite_report> run_suite(const std::string& name, const gen_config& cfg) {
  if (name == "subject-reduction") return run_subject_reduction(cfg);
  if (name == "confluence") return run_confluence(cfg);
  if (name == "sn") return run_sn(cfg);
  if (name == "subst-commute") return run_subst_commute(cfg);
  if (name == "pt-roundtrip") return run_pt_roundtrip(cfg);
  if (name == "translation") return run_translation(cfg);
  return std::nullopt;
}

inline const char* suite_names[] = {"subject-reduction", "confluence", "sn",
                                    "subst-commute", "pt-roundtrip", "translation"};

}  // namespace lamneg
