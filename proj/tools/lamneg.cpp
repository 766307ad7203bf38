#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <lamneg/lamneg.hpp>

namespace {

// Exit codes: 0 ok, 1 property/type failure, 2 usage or parse error.
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string dialect_of(const std::string& flag, const std::string& path) {
  if (!flag.empty()) return flag;
  auto ends_with = [&](const char* suf) {
    size_t n = std::char_traits<char>::length(suf);
    return path.size() >= n && path.compare(path.size() - n, n, suf) == 0;
  };
  if (ends_with(".lmu")) return "lmu";
  if (ends_with(".nlm")) return "nlm";
  return "l";
}

int cmd_infer(const std::string& src, const std::string& dialect, bool json) {
  std::string why;
  if (dialect == "l") {
    lamneg::term t = lamneg::parse_term(src);
    auto j = lamneg::principal_typing(t, &why);
    if (!j) {
      std::cout << "untypeable: " << why << "\n";
      return kFail;
    }
    lamneg::typing c = lamneg::canonicalize(*j);
    if (json)
      std::cout << lamneg::judgement_json(c.ctx, lamneg::print_term(t), c.c).dump() << "\n";
    else
      std::cout << lamneg::print_judgement(c.ctx, lamneg::print_term(t), c.c) << "\n";
    return kOk;
  }
  if (dialect == "lmu") {
    lamneg::lmu::lterm t = lamneg::lmu::parse(src);
    auto j = lamneg::lmu::infer(t, &why);
    if (!j) {
      std::cout << "untypeable: " << why << "\n";
      return kFail;
    }
    // canonical display through the embedding
    auto host = lamneg::principal_typing(lamneg::lmu::embed(t));
    lamneg::typing c = lamneg::canonicalize(*host);
    lamneg::lmu::judgement shown;
    shown.a = c.c.t;
    for (const auto& [subj, typ] : c.ctx) {
      if (subj.kind == lamneg::ident_kind::var)
        shown.gamma.emplace(subj, typ);
      else
        shown.delta.emplace(subj, typ->a);
    }
    if (json)
      std::cout << lamneg::judgement_json(c.ctx, lamneg::lmu::print(t), c.c).dump() << "\n";
    else
      std::cout << lamneg::lmu::print_judgement(shown, lamneg::lmu::print(t)) << "\n";
    return kOk;
  }
  lamneg::nlm::nterm t = lamneg::nlm::parse(src);
  auto j = lamneg::nlm::typecheck(t, &why);
  if (!j) {
    std::cout << "untypeable: " << why << "\n";
    return kFail;
  }
  lamneg::nlm::ntyping c = lamneg::nlm::canonicalize(*j);
  if (json) {
    nlohmann::json vars = nlohmann::json::object();
    for (const auto& [subj, typ] : c.ctx)
      vars[lamneg::symbols::hint(subj)] = lamneg::nlm::print_ntype(typ);
    std::cout << nlohmann::json{{"context", {{"vars", vars}, {"names", nlohmann::json::object()}}},
                                {"term", lamneg::nlm::print(t)},
                                {"conclusion", lamneg::nlm::print_ntype(c.t)}}
                     .dump()
              << "\n";
  } else {
    std::cout << lamneg::nlm::print_judgement(c, lamneg::nlm::print(t)) << "\n";
  }
  return kOk;
}

int cmd_reduce(const std::string& src, const std::string& dialect, const std::string& strat,
               int fuel, uint64_t seed, bool trace_json, bool no_theta) {
  lamneg::term t;
  if (dialect == "lmu")
    t = lamneg::lmu::embed(lamneg::lmu::parse(src));
  else if (dialect == "nlm")
    throw CLI::ValidationError("reduce", "the nlm dialect has no reduction; translate first");
  else
    t = lamneg::parse_term(src);
  lamneg::normalize_options opt;
  auto st = lamneg::strategy_from_name(strat);
  if (!st) throw CLI::ValidationError("--strategy", "expected lo, ri or random");
  opt.strat = *st;
  opt.fuel = fuel;
  opt.seed = seed;
  if (no_theta) opt.rules = lamneg::rule_mask::without_theta();
  lamneg::trace tr = lamneg::normalize(t, opt);
  if (trace_json)
    std::cout << lamneg::to_json(tr).dump(2) << "\n";
  else
    std::cout << lamneg::print_term(tr.final) << "\n";
  return tr.fuel_exhausted ? kFail : kOk;
}

int cmd_translate(const std::string& src, bool json) {
  lamneg::nlm::nterm t = lamneg::nlm::parse(src);
  std::string why;
  auto j = lamneg::nlm::typecheck(t, &why);
  if (!j) {
    std::cout << "refused: untypeable input: " << why << "\n";
    return kFail;
  }
  lamneg::nlm::vmap v = lamneg::nlm::ul(t);
  auto ctx = lamneg::nlm::translate_context(j->ctx, v);
  bool conclusion_ok = !lamneg::nlm::mentions_bot(j->t) || j->t->kind == lamneg::nlm::nt_kind::bot;
  if (!ctx || !conclusion_ok) {
    std::cout << "refused: the typing mentions # inside a type, which the target cannot express\n";
    return kFail;
  }
  lamneg::term out = lamneg::nlm::translate(t, v);
  if (json)
    std::cout << nlohmann::json{{"term", lamneg::print_term(out)}}.dump() << "\n";
  else
    std::cout << lamneg::print_term(out) << "\n";
  return kOk;
}

int cmd_check(const std::string& src, const std::string& dialect, const std::string& ctx_text,
              const std::string& type_text) {
  lamneg::term t;
  if (dialect == "lmu")
    t = lamneg::lmu::embed(lamneg::lmu::parse(src));
  else if (dialect == "nlm")
    throw CLI::ValidationError("check", "use the l or lmu dialect");
  else
    t = lamneg::parse_term(src);
  lamneg::typing_context g = lamneg::parse_context(ctx_text);
  lamneg::concl expected = lamneg::parse_conclusion(type_text);
  std::string why;
  if (lamneg::check(g, t, expected, &why)) {
    std::cout << "ok\n";
    return kOk;
  }
  std::cout << "fail: " << why << "\n";
  return kFail;
}

int cmd_fuzz(const std::string& suite, uint64_t seed, int n, int max_size, bool json) {
  lamneg::gen_config cfg;
  cfg.seed = seed;
  cfg.count = n;
  cfg.max_size = max_size;
  auto rep = lamneg::run_suite(suite, cfg);
  if (!rep) throw CLI::ValidationError("suite", "unknown suite " + suite);
  if (json)
    std::cout << lamneg::to_json(*rep).dump(2) << "\n";
  else
    std::cout << lamneg::report_table(*rep);
  return rep->ok() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lamneg: a lambda-mu calculus with first-class negation"};
  app.require_subcommand(1);

  std::string file, dialect_flag, strat = "lo", ctx_text, type_text, suite;
  int fuel = 10000, n = 100, max_size = 30;
  uint64_t seed = 1;
  bool json = false, trace_json = false, no_theta = false;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("file", file, "input file; '-' or absent reads stdin");
    sub->add_option("--dialect", dialect_flag, "l, lmu or nlm (default: by extension)");
  };

  CLI::App* infer = app.add_subcommand("infer", "print the principal typing");
  add_input(infer);
  infer->add_flag("--json", json, "emit JSON");

  CLI::App* reduce = app.add_subcommand("reduce", "normalise a term");
  add_input(reduce);
  reduce->add_option("--strategy", strat, "lo, ri or random");
  reduce->add_option("--fuel", fuel, "step bound (default 10000)");
  reduce->add_option("--seed", seed, "seed for the random strategy");
  reduce->add_flag("--trace", trace_json, "emit the full trace as JSON");
  reduce->add_flag("--no-theta", no_theta, "disable the erasure rule");

  CLI::App* translate = app.add_subcommand("translate", "map an nlm term into the core calculus");
  translate->add_option("file", file, "input file; '-' or absent reads stdin");
  translate->add_flag("--json", json, "emit JSON");

  CLI::App* chk = app.add_subcommand("check", "check a term against a judgement");
  add_input(chk);
  chk->add_option("--context", ctx_text, "e.g. \"x:p1, 'a:~p1\"");
  chk->add_option("--type", type_text, "expected conclusion; # for bottom")->required();

  CLI::App* fuzz = app.add_subcommand("fuzz", "run a property suite");
  fuzz->add_option("suite", suite,
                   "subject-reduction | confluence | sn | subst-commute | pt-roundtrip | translation")
      ->required();
  fuzz->add_option("--seed", seed, "corpus seed");
  fuzz->add_option("--n", n, "trials per phase");
  fuzz->add_option("--max-size", max_size, "term size bound");
  fuzz->add_flag("--json", json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (infer->parsed()) return cmd_infer(read_input(file), dialect_of(dialect_flag, file), json);
    if (reduce->parsed())
      return cmd_reduce(read_input(file), dialect_of(dialect_flag, file), strat, fuel, seed,
                        trace_json, no_theta);
    if (translate->parsed()) return cmd_translate(read_input(file), json);
    if (chk->parsed())
      return cmd_check(read_input(file), dialect_of(dialect_flag, file), ctx_text, type_text);
    if (fuzz->parsed()) return cmd_fuzz(suite, seed, n, max_size, json);
  } catch (const lamneg::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
