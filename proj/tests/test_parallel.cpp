#include <catch2/catch_amalgamated.hpp>

#include <lamneg/gen.hpp>
#include <lamneg/parallel.hpp>

using namespace lamneg;

namespace {

bool contains_alpha(const std::vector<term>& set, const term& t) {
  for (const term& u : set)
    if (alpha_eq(u, t)) return true;
  return false;
}

}  // namespace

TEST_CASE("parallel reduct sets on fixed terms") {
  SECTION("a variable only reduces to itself") {
    auto rs = parallel_reducts(parse_term("x"));
    REQUIRE(rs);
    REQUIRE(rs->size() == 1);
    CHECK(alpha_eq((*rs)[0], parse_term("x")));
  }

  SECTION("identity redex") {
    auto rs = parallel_reducts(parse_term("(\\x.x) y"));
    REQUIRE(rs);
    REQUIRE(rs->size() == 2);
    CHECK(contains_alpha(*rs, parse_term("(\\x.x) y")));
    CHECK(contains_alpha(*rs, parse_term("y")));
  }

  SECTION("the critical pair of nested namings under an applied mu") {
    term t = parse_term("(mu 'a.['a]mu 'b.['a]x) y");
    auto rs = parallel_reducts(t);
    REQUIRE(rs);
    // outer mu contraction keeps the inner naming
    term via_mu = parse_term("mu 'g.['g]((mu 'b.['g](x y)) y)");
    // the inner renaming first, then the mu contraction happens in one go
    term via_rename = parse_term("(mu 'a.['a]x) y");
    CHECK(contains_alpha(*rs, t));
    CHECK(contains_alpha(*rs, via_mu));
    CHECK(contains_alpha(*rs, via_rename));
    CHECK(contains_alpha(*rs, parse_term("mu 'g.['g](x y)")));
    REQUIRE(rs->size() == 4);

    SECTION("the diverging pair joins in a single step") {
      auto j = join(via_mu, via_rename, 1);
      REQUIRE(j);
      CHECK(alpha_eq(*j, parse_term("mu 'g.['g](x y)")));
    }
    CHECK(check_diamond(t).ok());
  }

  SECTION("join is reflexive and bounded") {
    auto j = join(parse_term("y"), parse_term("y"), 1);
    REQUIRE(j);
    CHECK(alpha_eq(*j, parse_term("y")));
    CHECK_FALSE(join(parse_term("x"), parse_term("y"), 3));
  }

  SECTION("both reducts of the identity redex join immediately") {
    auto j = join(parse_term("(\\x.x) y"), parse_term("y"), 1);
    REQUIRE(j);
    CHECK(alpha_eq(*j, parse_term("y")));
  }

  SECTION("the enumeration bound is reported distinctly") {
    // stacked redexes blow up the product cap
    std::string src = "(\\x.x x x x)((\\y.y y y y)((\\z.z z z z)((\\w.w w w w) v)))";
    CHECK_FALSE(parallel_reducts(parse_term(src), 8));
    CHECK(parallel_reducts(parse_term(src), 100000));
  }
}

TEST_CASE("derivations replay to their targets and use the right rules") {
  for (uint64_t i = 0; i < 120; ++i) {
    auto rng = trial_rng(0x6666, i);
    typed_term tt = gen_typed_term(rng, 12);
    auto derived = parallel_reducts_derived(tt.t);
    REQUIRE(derived);
    std::function<void(const par_deriv&)> rules_ok = [&](const par_deriv& d) {
      REQUIRE(d.rule >= 1);
      REQUIRE(d.rule <= 12);
      for (const auto& k : d.kids) rules_ok(k);
    };
    for (const auto& r : *derived) {
      REQUIRE(r.source.get() == tt.t.get());
      rules_ok(r.derivation);
      auto replayed = replay(r.source, r.derivation);
      INFO(print_term(r.source) << "  =>  " << print_term(r.target));
      REQUIRE(replayed);
      REQUIRE(alpha_eq(*replayed, r.target));
    }
    // dropping the derivations gives the plain reduct set
    auto plain = parallel_reducts(tt.t);
    REQUIRE(plain);
    REQUIRE(plain->size() == derived->size());
  }

  SECTION("a reflexive derivation is all congruence rules") {
    auto derived = parallel_reducts_derived(parse_term("\\x.['a]x"));
    REQUIRE(derived);
    REQUIRE(derived->size() == 1);
    const par_deriv& d = (*derived)[0].derivation;
    CHECK(d.rule == 2);
    REQUIRE(d.kids.size() == 1);
    CHECK(d.kids[0].rule == 7);
    CHECK(d.kids[0].kids[0].rule == 1);
  }

  SECTION("a mismatched derivation does not replay") {
    par_deriv beta{9, {{2, {{1, {}}}}, {1, {}}}};
    CHECK_FALSE(replay(parse_term("x y"), beta));
  }
}

TEST_CASE("reflexivity of parallel reduction") {
  for (uint64_t i = 0; i < 150; ++i) {
    auto rng = trial_rng(0x1111, i);
    typed_term tt = gen_typed_term(rng, 12);
    auto rs = parallel_reducts(tt.t);
    REQUIRE(rs);
    INFO(print_term(tt.t));
    REQUIRE(contains_alpha(*rs, tt.t));
  }
}

TEST_CASE("single steps embed into parallel reduction and back") {
  for (uint64_t i = 0; i < 120; ++i) {
    auto rng = trial_rng(0x2222, i);
    typed_term tt = gen_typed_term(rng, 10);
    auto rs = parallel_reducts(tt.t);
    REQUIRE(rs);

    // every plain step (erasure excluded) is a parallel step
    for (const auto& s : enumerate_redexes(tt.t, rule_mask::without_theta())) {
      INFO(print_term(tt.t) << " -> " << print_term(s.after));
      REQUIRE(contains_alpha(*rs, s.after));
    }

    // every parallel reduct is reachable by a sequence of plain steps
    std::unordered_map<std::string, term> reach{{canon_key(tt.t), tt.t}};
    std::vector<term> frontier{tt.t};
    for (int depth = 0; depth < 10 && !frontier.empty() && reach.size() < 4000; ++depth) {
      std::vector<term> next;
      for (const term& u : frontier)
        for (const auto& s : enumerate_redexes(u, rule_mask::without_theta()))
          if (reach.emplace(canon_key(s.after), s.after).second) next.push_back(s.after);
      frontier = std::move(next);
    }
    for (const term& r : *rs) {
      INFO(print_term(tt.t) << " =/=>* " << print_term(r));
      REQUIRE(reach.count(canon_key(r)) == 1);
    }
  }
}

TEST_CASE("parallel reduction respects the four substitutions") {
  ident z = symbols::intern(ident_kind::var, "subz");
  ident an = symbols::intern(ident_kind::name, "suba");
  for (uint64_t i = 0; i < 100; ++i) {
    auto rng = trial_rng(0x3333, i);
    term p = gen_raw_term(rng, 1 + lamneg::detail::rand_below(rng, 7), {z}, {an});
    term q = gen_raw_term(rng, 1 + lamneg::detail::rand_below(rng, 5), {z}, {an});
    auto rp = parallel_reducts(p);
    auto rq = parallel_reducts(q);
    if (!rp || !rq) continue;
    term p2 = (*rp)[lamneg::detail::rand_below(rng, static_cast<int>(rp->size()))];
    term q2 = (*rq)[lamneg::detail::rand_below(rng, static_cast<int>(rq->size()))];
    ident g = symbols::fresh(ident_kind::name, "g");
    ident b = symbols::intern(ident_kind::name, "subb");

    struct variant {
      term lhs, rhs;
      const char* what;
    };
    std::vector<variant> vs = {
        {subst_term(p, q, z), subst_term(p2, q2, z), "term"},
        {subst_struct(p, q, an, g), subst_struct(p2, q2, an, g), "structural"},
        {subst_insert(p, q, an), subst_insert(p2, q2, an), "insertion"},
        {rename_name(p, b, an), rename_name(p2, b, an), "renaming"},
    };
    for (const auto& v : vs) {
      auto rl = parallel_reducts(v.lhs, 200000);
      if (!rl) continue;
      INFO(v.what << ": " << print_term(v.lhs) << "  =>  " << print_term(v.rhs));
      REQUIRE(contains_alpha(*rl, v.rhs));
    }
  }
}

TEST_CASE("diamond property on generated terms") {
  for (uint64_t i = 0; i < 150; ++i) {
    auto rng = trial_rng(0x4444, i);
    typed_term tt = gen_typed_term(rng, 11);
    diamond_report rep = check_diamond(tt.t);
    if (rep.bound_exceeded) continue;
    INFO(print_term(tt.t));
    REQUIRE(rep.violations.empty());
  }
}

TEST_CASE("diamond report serializes") {
  diamond_report rep = check_diamond(parse_term("(\\x.x) y"));
  nlohmann::json j = to_json(rep);
  CHECK(j["reducts"] == 2);
  CHECK(j["pairs_checked"] == 1);
  CHECK(j["violations"].empty());
  CHECK(j["bound_exceeded"] == false);
}
