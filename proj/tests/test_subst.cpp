#include <catch2/catch_amalgamated.hpp>

#include <lamneg/gen.hpp>
#include <lamneg/subst.hpp>
#include <lamneg/parse.hpp>
#include <lamneg/print.hpp>
#include <lamneg/suites.hpp>

#include "oracles.hpp"

using namespace lamneg;

namespace {
ident v(const char* s) { return symbols::intern(ident_kind::var, s); }
ident nm(const char* s) { return symbols::intern(ident_kind::name, s); }
}  // namespace

TEST_CASE("term substitution") {
  CHECK(alpha_eq(subst_term(parse_term("x"), parse_term("y z"), v("x")), parse_term("y z")));
  CHECK(alpha_eq(subst_term(parse_term("\\y.x"), parse_term("z"), v("x")), parse_term("\\y.z")));

  SECTION("capture is avoided by renaming the binder") {
    term m = parse_term("\\y.x");
    term n = parse_term("y");
    term got = subst_term(m, n, v("x"));
    CHECK(alpha_eq(got, parse_term("\\w.y")));
    CHECK_FALSE(alpha_eq(got, parse_term("\\y.y")));
    // against the nameless reference
    CHECK(oracle::db_eq(oracle::to_db(got), oracle::subst_term(oracle::to_db(m), v("x"),
                                                               oracle::to_db(n))));
  }

  SECTION("substituting for an identifier that is not free is the identity") {
    term m = parse_term("\\y.y ['a]u");
    CHECK(alpha_eq(subst_term(m, parse_term("z"), v("q")), m));
  }
}

TEST_CASE("structural substitution") {
  term got = subst_struct(parse_term("['a]x"), parse_term("z"), nm("a"), nm("g"));
  CHECK(alpha_eq(got, parse_term("['g](x z)")));

  CHECK(alpha_eq(subst_struct(parse_term("['b]x"), parse_term("z"), nm("a"), nm("g")),
                 parse_term("['b]x")));

  SECTION("recurses below the renamed naming") {
    term m = parse_term("['a](mu 'b.['a]x)");
    term want = parse_term("['g]((mu 'b.['g](x z)) z)");
    CHECK(alpha_eq(subst_struct(m, parse_term("z"), nm("a"), nm("g")), want));
  }

  SECTION("bound namings are untouched") {
    term m = parse_term("mu 'a.['a]x");
    CHECK(alpha_eq(subst_struct(m, parse_term("z"), nm("a"), nm("g")), m));
  }
}

TEST_CASE("insertion") {
  CHECK(alpha_eq(subst_insert(parse_term("['a]x"), parse_term("z"), nm("a")), parse_term("[x]z")));
  CHECK(alpha_eq(subst_insert(parse_term("['b]x"), parse_term("z"), nm("a")), parse_term("['b]x")));

  SECTION("recursive descent into the named term") {
    term m = parse_term("['a](mu 'b.['a]y)");
    term want = parse_term("[mu 'b.[y]z] z");
    CHECK(alpha_eq(subst_insert(m, parse_term("z"), nm("a")), want));
  }
}

TEST_CASE("renaming") {
  CHECK(alpha_eq(rename_name(parse_term("['a]x"), nm("b"), nm("a")), parse_term("['b]x")));
  term bound = parse_term("mu 'a.['a]x");
  CHECK(alpha_eq(rename_name(bound, nm("b"), nm("a")), bound));
  CHECK(alpha_eq(rename_name(parse_term("['g]mu 'd.['g]x"), nm("b"), nm("g")),
                 parse_term("['b]mu 'd.['b]x")));
}

static std::vector<ident> pool_vars() { return {v("x"), v("y"), v("z")}; }
static std::vector<ident> pool_names() { return {nm("a"), nm("b")}; }

TEST_CASE("agreement with the nameless reference on random terms") {
  for (uint64_t i = 0; i < 400; ++i) {
    auto rng = trial_rng(0x5eed5, i);
    term m = gen_raw_term(rng, 1 + lamneg::detail::rand_below(rng, 12), pool_vars(), pool_names());
    term n = gen_raw_term(rng, 1 + lamneg::detail::rand_below(rng, 6), pool_vars(), pool_names());
    ident gamma = symbols::fresh(ident_kind::name, "g");
    INFO("M = " << print_term(m) << "   N = " << print_term(n));

    CHECK(oracle::db_eq(oracle::to_db(subst_term(m, n, v("x"))),
                        oracle::subst_term(oracle::to_db(m), v("x"), oracle::to_db(n))));
    CHECK(oracle::db_eq(oracle::to_db(subst_struct(m, n, nm("a"), gamma)),
                        oracle::subst_struct(oracle::to_db(m), nm("a"), oracle::to_db(n), gamma)));
    CHECK(oracle::db_eq(oracle::to_db(subst_insert(m, n, nm("a"))),
                        oracle::subst_insert(oracle::to_db(m), nm("a"), oracle::to_db(n))));
    CHECK(oracle::db_eq(oracle::to_db(rename_name(m, nm("b"), nm("a"))),
                        oracle::rename_name(oracle::to_db(m), nm("b"), nm("a"))));
  }
}

TEST_CASE("free names of a structural substitution") {
  for (uint64_t i = 0; i < 200; ++i) {
    auto rng = trial_rng(0xfade, i);
    term m = gen_raw_term(rng, 1 + lamneg::detail::rand_below(rng, 10), pool_vars(), pool_names());
    term n = gen_raw_term(rng, 1 + lamneg::detail::rand_below(rng, 6), pool_vars(), pool_names());
    ident gamma = symbols::fresh(ident_kind::name, "g");
    std::set<ident> allowed = free_names(m);
    allowed.erase(nm("a"));
    for (ident x : free_names(n)) allowed.insert(x);
    allowed.insert(gamma);
    for (ident x : free_names(subst_struct(m, n, nm("a"), gamma))) {
      INFO(print_term(m) << " | " << print_term(n));
      REQUIRE(allowed.count(x) == 1);
    }
  }
}

TEST_CASE("the sixteen commutation equations hold on random triples") {
  gen_config cfg;
  cfg.seed = 99;
  cfg.count = 200;
  suite_report rep = run_subst_commute(cfg);
  for (const auto& f : rep.failures) {
    INFO(f.input << " : " << f.detail);
    CHECK(false);
  }
  REQUIRE(rep.ok());
}
