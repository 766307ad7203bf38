#include <catch2/catch_amalgamated.hpp>

#include <lamneg/gen.hpp>
#include <lamneg/parse.hpp>
#include <lamneg/types.hpp>

using namespace lamneg;

TEST_CASE("type parsing and printing") {
  CHECK(print_type(parse_type("~~p1 -> p1")) == "~~p1 -> p1");
  CHECK(print_type(parse_type("p1 -> p2 -> p3")) == "p1 -> p2 -> p3");
  CHECK(print_type(parse_type("(p1 -> p2) -> p3")) == "(p1 -> p2) -> p3");
  CHECK(print_type(parse_type("~(p1 -> p2)")) == "~(p1 -> p2)");
  CHECK(ty_eq(parse_type("p1->p2->p3"), parse_type("p1->(p2->p3)")));
  CHECK_FALSE(ty_eq(parse_type("p1"), parse_type("p2")));
  // negation binds stronger than the arrow
  CHECK(ty_eq(parse_type("~p1 -> p2"), mk_arrow(mk_neg(parse_type("p1")), parse_type("p2"))));

  SECTION("bottom is a conclusion, not a type") {
    CHECK(parse_conclusion("#").is_bottom());
    CHECK_FALSE(parse_conclusion("p1 -> p2").is_bottom());
    CHECK_THROWS_AS(parse_type("#"), parse_error);
    CHECK_THROWS_AS(parse_type("# -> p1"), parse_error);
    CHECK_THROWS_AS(parse_conclusion("~#"), parse_error);
  }

  SECTION("context parsing") {
    typing_context g = parse_context("x:p1, 'a:~p1");
    REQUIRE(g.size() == 2);
    CHECK(names_negated(g));
    CHECK(ty_eq(g.at(symbols::intern(ident_kind::var, "x")), parse_type("p1")));
    CHECK_THROWS_AS(parse_context("'a:p1"), parse_error);
    CHECK_THROWS_AS(parse_context("x:p1, x:p2"), parse_error);
    CHECK(parse_context("").empty());
  }
}

TEST_CASE("substitution application") {
  ty_subst s;
  s.m.emplace(parse_type("p1")->var, parse_type("p7"));
  CHECK(ty_eq(s(parse_type("p1")), parse_type("p7")));
  CHECK(ty_eq(s(parse_type("p2")), parse_type("p2")));

  ty_subst s2;
  s2.m.emplace(parse_type("p1")->var, parse_type("p2 -> p2"));
  CHECK(ty_eq(s2(parse_type("~p1")), parse_type("~(p2 -> p2)")));
  CHECK(s2(concl::bottom()).is_bottom());

  SECTION("composition applies right side first") {
    ty_subst a, b;
    a.m.emplace(parse_type("p2")->var, parse_type("p3"));
    b.m.emplace(parse_type("p1")->var, parse_type("p2"));
    ty_subst ab = compose(a, b);
    CHECK(ty_eq(ab(parse_type("p1")), parse_type("p3")));
    CHECK(ty_eq(ab(parse_type("p2")), parse_type("p3")));
  }
}

TEST_CASE("unification") {
  SECTION("a variable against itself is the identity") {
    auto s = unify(parse_type("p1"), parse_type("p1"));
    REQUIRE(s);
    CHECK(s->identity());
  }

  SECTION("occurs check") {
    CHECK_FALSE(unify(parse_type("p1"), parse_type("p1 -> p1")));
    CHECK_FALSE(unify(parse_type("p1 -> p1"), parse_type("p1")));
    CHECK(unify(parse_type("p1"), parse_type("p2 -> p2")));
  }

  SECTION("negations unify componentwise") {
    auto s = unify(parse_type("~p1"), parse_type("~(p2 -> p2)"));
    REQUIRE(s);
    REQUIRE(s->m.size() == 1);
    CHECK(ty_eq((*s)(parse_type("p1")), parse_type("p2 -> p2")));
  }

  SECTION("constructor clash") {
    CHECK_FALSE(unify(parse_type("p1 -> p2"), parse_type("~p3")));
    CHECK_FALSE(unify(parse_type("~p1"), parse_type("p2 -> p3")));
  }

  SECTION("a variable on the right flips") {
    auto s = unify(parse_type("p1 -> p2"), parse_type("p3"));
    REQUIRE(s);
    CHECK(ty_eq((*s)(parse_type("p3")), parse_type("p1 -> p2")));
  }

  SECTION("arrows thread the first result through the second") {
    auto s = unify(parse_type("p1 -> p1"), parse_type("(p2 -> p3) -> p4"));
    REQUIRE(s);
    CHECK(ty_eq((*s)(parse_type("p4")), parse_type("p2 -> p3")));
  }

  SECTION("unifiers really unify") {
    for (uint64_t i = 0; i < 300; ++i) {
      auto rng = trial_rng(0x7777, i);
      ty a = gen_small_type(rng, 3);
      ty b = gen_small_type(rng, 3);
      auto s = unify(a, b);
      if (s) {
        INFO(print_type(a) << "  =?  " << print_type(b));
        REQUIRE(ty_eq((*s)(a), (*s)(b)));
      }
    }
  }
}

TEST_CASE("context unification") {
  CHECK(unify_contexts({}, parse_context("x:p1, 'a:~p2"))->identity());
  CHECK(unify_contexts(parse_context("x:p1"), parse_context("y:p2"))->identity());

  auto s = unify_contexts(parse_context("x:p1"), parse_context("x:p2 -> p2"));
  REQUIRE(s);
  CHECK(ty_eq((*s)(parse_type("p1")), parse_type("p2 -> p2")));

  SECTION("names participate") {
    auto sn = unify_contexts(parse_context("'a:~p1"), parse_context("'a:~(p2 -> p3)"));
    REQUIRE(sn);
    CHECK(ty_eq((*sn)(parse_type("p1")), parse_type("p2 -> p3")));
  }

  SECTION("failure propagates") {
    CHECK_FALSE(unify_contexts(parse_context("x:p1 -> p1, y:p1"),
                               parse_context("x:p2 -> p3, y:~p2")));
  }
}

namespace {

// Two generalizations of a common type, with a recorded unifier for each.
struct gen_pair {
  ty a, b;
  ty_subst natural;
};

gen_pair generalize_twice(std::mt19937_64& rng, uint32_t& fresh) {
  ty base = gen_small_type(rng, 3);
  auto generalize = [&](const ty& t, auto&& self) -> std::pair<ty, std::vector<std::pair<uint32_t, ty>>> {
    if (lamneg::detail::chance(rng, 30)) {
      uint32_t v = fresh++;
      return {mk_tvar(v), {{v, t}}};
    }
    switch (t->kind) {
      case ty_kind::arrow: {
        auto [l, ml] = self(t->a, self);
        auto [r, mr] = self(t->b, self);
        ml.insert(ml.end(), mr.begin(), mr.end());
        return {mk_arrow(l, r), ml};
      }
      case ty_kind::neg: {
        auto [l, ml] = self(t->a, self);
        return {mk_neg(l), ml};
      }
      default:
        return {t, {}};
    }
  };
  auto [a, ma] = generalize(base, generalize);
  auto [b, mb] = generalize(base, generalize);
  gen_pair out{a, b, {}};
  for (auto& [v, t] : ma) out.natural.m.emplace(v, t);
  for (auto& [v, t] : mb) out.natural.m.emplace(v, t);
  return out;
}

}  // namespace

TEST_CASE("most general unifier: independent unifiers factor through") {
  uint32_t fresh = 5000;  // user-range variables, distinct from p1..p3
  for (uint64_t i = 0; i < 300; ++i) {
    auto rng = trial_rng(0x8888, i);
    gen_pair p = generalize_twice(rng, fresh);
    REQUIRE(ty_eq(p.natural(p.a), p.natural(p.b)));
    auto u = unify(p.a, p.b);
    INFO(print_type(p.a) << "  =?  " << print_type(p.b));
    REQUIRE(u);
    REQUIRE(ty_eq((*u)(p.a), (*u)(p.b)));

    // find s3 with s3 . u == natural on the variables of both sides
    std::vector<uint32_t> vars;
    tvars_in_order(p.a, vars);
    tvars_in_order(p.b, vars);
    std::map<uint32_t, ty> binding;
    std::function<bool(const ty&, const ty&)> match = [&](const ty& pat, const ty& con) -> bool {
      if (pat->kind == ty_kind::tvar) {
        auto it = binding.find(pat->var);
        if (it != binding.end()) return ty_eq(it->second, con);
        binding.emplace(pat->var, con);
        return true;
      }
      if (pat->kind != con->kind) return false;
      if (pat->kind == ty_kind::arrow) return match(pat->a, con->a) && match(pat->b, con->b);
      return match(pat->a, con->a);
    };
    bool factored = true;
    for (uint32_t v : vars)
      factored = factored && match((*u)(mk_tvar(v)), p.natural(mk_tvar(v)));
    REQUIRE(factored);
    ty_subst s3;
    s3.m = binding;
    for (uint32_t v : vars) REQUIRE(ty_eq(s3((*u)(mk_tvar(v))), p.natural(mk_tvar(v))));
  }
}

TEST_CASE("canonicalization and alpha equality of types") {
  ty t = parse_type("p9 -> ~p9 -> p4");
  CHECK(print_type(canonicalize(t)) == "p1 -> ~p1 -> p2");
  CHECK(ty_alpha_eq(parse_type("p3 -> p4"), parse_type("p1 -> p2")));
  CHECK_FALSE(ty_alpha_eq(parse_type("p3 -> p3"), parse_type("p1 -> p2")));
  CHECK_FALSE(ty_alpha_eq(parse_type("p1 -> p2"), parse_type("p1 -> p1")));
}
