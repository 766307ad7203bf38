#include <catch2/catch_amalgamated.hpp>

#include <lamneg/gen.hpp>
#include <lamneg/infer.hpp>

using namespace lamneg;

namespace {

std::string principal_str(const char* src) {
  term t = parse_term(src);
  auto j = principal_typing(t);
  if (!j) return "untypeable";
  typing c = canonicalize(*j);
  return print_judgement(c.ctx, print_term(t), c.c);
}

bool types_to(const char* src, const char* want_type) {
  auto j = principal_typing(parse_term(src));
  if (!j || j->c.is_bottom()) return false;
  return ty_alpha_eq(j->c.t, parse_type(want_type));
}

}  // namespace

TEST_CASE("principal typings of the flagship terms") {
  CHECK(principal_str("x") == "x:p1 ⊢ x : p1");

  SECTION("double negation elimination") {
    term dne = parse_term("\\y.mu 'a.[y](nu x.['a]x)");
    auto j = principal_typing(dne);
    REQUIRE(j);
    CHECK(j->ctx.empty());
    CHECK(ty_alpha_eq(j->c.t, parse_type("~~p1 -> p1")));
    CHECK(is_closed(dne));
  }

  SECTION("the axiom-three witness") {
    CHECK(types_to("\\x.\\y.mu 'a.[x (nu z.['a]z)](y (nu z.['a]z))",
                   "(~p2 -> ~p1) -> (~p2 -> p1) -> p2"));
  }

  SECTION("the embedded Peirce term") {
    term peirce = parse_term("\\x.mu 'a.['a](x (\\y.mu 'b.['a]y))");
    auto j = principal_typing(peirce);
    REQUIRE(j);
    CHECK(j->ctx.empty());  // no free names either
    CHECK(ty_alpha_eq(j->c.t, parse_type("((p1 -> p2) -> p1) -> p1")));
  }

  SECTION("contraposition and its converse") {
    CHECK(types_to("\\x.\\y.nu z.[y](x z)", "(p1 -> p2) -> ~p2 -> ~p1"));
    CHECK(types_to("\\x.\\y.mu 'a.[x (nu z.['a]z)]y", "(~p1 -> ~p2) -> p2 -> p1"));
  }

  SECTION("naming concludes bottom and records the name") {
    term t = parse_term("['a]x");
    auto j = principal_typing(t);
    REQUIRE(j);
    CHECK(j->c.is_bottom());
    REQUIRE(j->ctx.size() == 2);
    ty at = j->ctx.at(symbols::intern(ident_kind::name, "a"));
    CHECK(at->kind == ty_kind::neg);
    CHECK(names_negated(j->ctx));
  }
}

TEST_CASE("untypeable shapes are rejected with reasons") {
  const char* rejected[] = {
      "[\\x.x] y",        // negated application of an arrow
      "mu 'a.\\x.x",      // mu body concludes a type
      "nu y.\\x.x",       // nu body concludes a type
      "mu 'a.(x y)",      // an application never concludes #
      "mu 'a.nu x.['a]x", // nu under mu concludes a negated type
      "x x",              // occurs check
  };
  for (const char* src : rejected) {
    std::string why;
    INFO(src);
    CHECK_FALSE(principal_typing(parse_term(src), &why));
    CHECK_FALSE(why.empty());
  }

  SECTION("a name recorded at two incompatible types") {
    // 'a is used once against a doubly negated type and once against an arrow
    std::string why;
    CHECK_FALSE(principal_typing(parse_term("[nu u.['a]u] (nu w.['a](\\y.y))"), &why));
    CHECK_FALSE(why.empty());
  }
}

TEST_CASE("check decides judgements by instance matching") {
  CHECK(check(parse_context("x:p1"), parse_term("x"), parse_conclusion("p1")));
  CHECK_FALSE(check(parse_context("x:p1"), parse_term("x"), parse_conclusion("p2")));
  CHECK_FALSE(check(parse_context(""), parse_term("x"), parse_conclusion("p1")));

  term dne = parse_term("\\y.mu 'a.[y](nu x.['a]x)");
  CHECK(check({}, dne, parse_conclusion("~~p1 -> p1")));
  CHECK(check({}, dne, parse_conclusion("~~(p1 -> p2) -> p1 -> p2")));
  CHECK(check({}, dne, parse_conclusion("~~(~p3) -> ~p3")));
  // not an instance: the two sides must agree
  CHECK_FALSE(check({}, dne, parse_conclusion("~~p1 -> p2")));
  CHECK_FALSE(check({}, parse_term("mu 'a.\\x.x"), parse_conclusion("p1")));

  SECTION("weakening is the context inclusion") {
    CHECK(check(parse_context("x:p1, y:p2, 'b:~p3"), parse_term("x"), parse_conclusion("p1")));
  }

  SECTION("bottom conclusions") {
    CHECK(check(parse_context("'a:~p1, x:p1"), parse_term("['a]x"), parse_conclusion("#")));
    CHECK_FALSE(check(parse_context("'a:~p1, x:p2"), parse_term("['a]x"), parse_conclusion("#")));
    CHECK_FALSE(check(parse_context("'a:~p1, x:p1"), parse_term("['a]x"), parse_conclusion("p1")));
  }
}

TEST_CASE("soundness of substitution on random judgements") {
  for (uint64_t i = 0; i < 200; ++i) {
    auto rng = trial_rng(0x9999, i);
    typed_term tt = gen_typed_term(rng, 16);
    ty_subst s;
    for (uint32_t v = 1; v <= 3; ++v)
      if (lamneg::detail::chance(rng, 60)) s.m.emplace(v, gen_small_type(rng, 1));
    typing_context sg = apply_subst(s, tt.ctx);
    concl sc = s(tt.c);
    INFO(print_term(tt.t));
    REQUIRE(check(sg, tt.t, sc));
  }
}

TEST_CASE("subject reduction on hand-built judgements") {
  SECTION("identity application") {
    sr_report rep = subject_reduction_check(parse_context("y:p1"), parse_term("(\\x.x) y"),
                                            parse_conclusion("p1"), 100);
    CHECK(rep.ok());
    CHECK(rep.steps_checked >= 1);
  }

  SECTION("the delta-nu chain preserves bottom") {
    sr_report rep = subject_reduction_check(parse_context("'b:~p1, z:p1"),
                                            parse_term("[mu 'a.['a](nu x.['b]x)] z"),
                                            parse_conclusion("#"), 100);
    CHECK(rep.ok());
    CHECK(rep.steps_checked >= 2);
  }

  SECTION("structural contraction under a context switch") {
    // (mu 'a.['b](mu 'd.['a]x)) y steps by the structural rule
    term t = parse_term("(mu 'a.['b](mu 'd.['a]x)) y");
    auto j = principal_typing(t);
    REQUIRE(j);
    sr_report rep = subject_reduction_check(j->ctx, t, j->c, 200);
    CHECK(rep.ok());
    CHECK(rep.steps_checked >= 1);
  }
}

TEST_CASE("judgement serialization") {
  term t = parse_term("['a]x");
  auto j = principal_typing(t);
  REQUIRE(j);
  typing c = canonicalize(*j);
  nlohmann::json js = judgement_json(c.ctx, print_term(t), c.c);
  CHECK(js["conclusion"] == "#");
  CHECK(js["context"]["vars"]["x"] == "p1");
  CHECK(js["context"]["names"]["a"] == "~p1");
  CHECK(js["term"] == "['a]x");
}
