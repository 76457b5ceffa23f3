#include <doctest.h>

#include <json.hpp>

#include "golden_runner.hpp"
#include "odf/rewrite.hpp"
#include "term_gen.hpp"

using namespace odf;
using namespace odf::test;

namespace {

const std::string golden_dir = ODF_GOLDEN_DIR;

std::string input(const std::string& name) { return golden_dir + "/inputs/" + name; }

// stdout of a successful text-mode run, without the trailing newline.
std::string text_of(const std::vector<std::string>& args) {
  CliRun r = run_cli(args);
  CHECK_MESSAGE(r.exit_code == 0, r.err);
  if (!r.out.empty() && r.out.back() == '\n') r.out.pop_back();
  return r.out;
}

}  // namespace

TEST_CASE("golden files, text and structured modes") {
  auto outcomes = run_goldens(golden_dir);
  CHECK(outcomes.size() >= 100);
  for (const auto& o : outcomes) CHECK_MESSAGE(o.ok, o.name << ": " << o.detail);
}

TEST_CASE("documented examples") {
  CHECK(text_of({"rewrite", "d(d(x)*x+3)"}) == "x''*x + x'^2, m=2");
  CHECK(text_of({"rewrite", "d(1/x)"}) == "-x'/x^2, m=1");
  CHECK(text_of({"theta", "min", "[2,0] [1,1] [2,2]"}) == "[2,0] [1,1]");
  CHECK(text_of({"delta-dim", "1,0"}) == "type (0), dim 0");
  CHECK(text_of({"delta-dim", "1,1;1,1"}) == "type (1,1), dim 2");
  CHECK(text_of({"delta-dim", "1,0;1,1"}) == "type (0,1), dim 1");
  CHECK(text_of({"singer", "solve", "--deg", "6", "-f", input("exp.singer")}) ==
        "1, 1, 1/2, 1/6, 1/24, 1/120, 1/720");
  CHECK(text_of({"coherence", "check", "-f", input("exp.cond")}) == "coherent");
  CHECK(text_of({"coherence", "check", "-f", input("conflict.cond")}) ==
        "conflict at [1,1]: via [1,0] gives 1, via [0,1] gives 0");
  CHECK(text_of({"decide1", "x^2 - 2 > 0, x > 0, x < 2"}) == "SAT, witness 3/2");
  CHECK(text_of({"decide1", "x^2 + 1 = 0"}) == "UNSAT");
  CHECK(text_of({"decide1", "x^3 = 0, x > 0"}) == "UNSAT");
  CHECK(text_of({"witness-box", "(0,1) (2,3)"}) == "a = 5/2*t + 1/2");
  CHECK(text_of({"witness-box", "(-1,1)"}) == "a = 0");
  CHECK(text_of({"witness-box", "(0,1) (0,1) (0,1)"}) == "a = 1/4*t^2 + 1/2*t + 1/2");
  CHECK(text_of({"rank", "(1,0) (0,1) (1,1)"}) == "rank 2");
  CHECK(text_of({"rank", "(1,0) (0,1) | (1,0) (0,1)"}) == "rank 0");
  CHECK(text_of({"rank", "t1^2 | t1"}) == "rank 0");
}

TEST_CASE("exponential condition: the listing is 1/(i! j!) by monomial") {
  std::string out = text_of({"coherence", "solve", "-f", input("exp.cond"), "--deg", "3"});
  std::istringstream lines(out);
  std::string line;
  int seen = 0;
  auto fact = [](unsigned n) {
    long f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
  };
  while (std::getline(lines, line)) {
    if (line == "verified") continue;
    unsigned i = 0, j = 0;
    char rest[32] = {};
    REQUIRE(std::sscanf(line.c_str(), "[%u,%u] %31s", &i, &j, rest) == 3);
    CHECK(Rational(rest) == make_rational(1, fact(i) * fact(j)));
    ++seen;
  }
  CHECK(seen == 10);
  CHECK(out.substr(out.size() - 8) == "verified");
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"rewrite", "d(x^"}).exit_code == cli::kInputError);
  CHECK(run_cli({"no-such-command"}).exit_code == cli::kInputError);
  CHECK(run_cli({"theta", "cmp", "[1,0]"}).exit_code == cli::kInputError);
  CHECK(run_cli({"rewrite", "x", "-f", input("exp.cond")}).exit_code == cli::kInputError);
  CHECK(run_cli({"coherence", "solve", "-f", input("conflict.cond")}).exit_code == cli::kMathError);
  CHECK(run_cli({"singer", "solve", "-f", input("nonzero.singer")}).exit_code == cli::kMathError);
  CHECK(run_cli({"singer", "check", "-f", input("nonzero.singer")}).exit_code == cli::kSuccess);
  CHECK(run_cli({"--help"}).exit_code == cli::kSuccess);

  CliRun r = run_cli({"--json", "coherence", "check", "-f", input("syntax.cond")});
  CHECK(r.exit_code == cli::kInputError);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["ok"] == false);
  CHECK(j["error"]["code"] == "ParseError");
  CHECK(j["error"]["line"] == 3);
  CHECK(r.err.empty());
}

TEST_CASE("structured output carries the envelope") {
  CliRun r = run_cli({"theta", "enum", "--p", "2", "--ord", "1", "--json"});
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "theta enum");
  CHECK(j["ok"] == true);
  CHECK(j["result"]["elements"] == nlohmann::json::parse("[[0,0],[0,1],[1,0]]"));
}

TEST_CASE("term round trip through render and the rewrite command") {
  Random rng(1009);
  TermShape shape;
  shape.derivations = 2;
  shape.jet_leaves = true;
  for (int round = 0; round < 200; ++round) {
    TermPtr t = random_term(rng, shape, shape.max_depth);
    std::string text = render(t);
    TermPtr back = parse_term(text);
    CHECK_MESSAGE(term_equal(back, t), text);
    CHECK(render(back) == text);
    // The command reports the normal form of the very same term, or the
    // same division failure.
    CliRun r = run_cli({"rewrite", "--", text});
    try {
      JetTerm j = rewrite_term(t);
      std::string expect = j.value.render(std::max<std::size_t>(1, term_derivations(t))) + ", m=" +
                           std::to_string(j.max_depth) + "\n";
      CHECK_MESSAGE(r.out == expect, text);
    } catch (const Error& e) {
      CHECK(r.exit_code == cli::kMathError);
      CHECK(r.err.find(std::string(to_string(e.code()))) != std::string::npos);
    }
  }
}
