#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <random>

#include "formring/report.hpp"
#include "support.hpp"

using namespace formring;

namespace {

const char* kFamily = "char 32003; vars x,y,z; ideal I = x^2, x*y, x*z - y^3, y^4, x*z^2; check cor41 I;";

std::string parse_error_message(std::string_view text) {
  try {
    parse_session(text);
  } catch (const ParseError& e) {
    return e.message();
  }
  return "";
}

std::string text_of(std::string_view src, RunOptions opts = {}) { return to_text(run_session(parse_session(src), opts)); }

}  // namespace

TEST(Parser, ValidSession) {
  auto s = parse_session(kFamily);
  ASSERT_EQ(s.statements.size(), 4u);
  EXPECT_EQ(std::get<CharDecl>(s.statements[0]).value, 32003);
  EXPECT_EQ(std::get<VarsDecl>(s.statements[1]).names, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(std::get<IdealDecl>(s.statements[2]).generators.size(), 5u);
  const auto& c = std::get<Command>(s.statements[3]);
  EXPECT_TRUE(c.check);
  EXPECT_EQ(c.verb, "cor41");
  EXPECT_EQ(c.target, "I");
}

TEST(Parser, Diagnostics) {
  EXPECT_EQ(parse_error_message("vars x; ideal I = x^2; table I imax=0;"), "characteristic not declared");
  EXPECT_EQ(parse_error_message("char 4; vars x;"), "4 is not prime");
  EXPECT_EQ(parse_error_message("char 7; vars x; ideal I = x*w;"), "undeclared name 'w'");
  EXPECT_EQ(parse_error_message("char 7; vars x; table J;"), "undeclared name 'J'");
  EXPECT_NE(parse_error_message("char 7; vars x; ideal I = x^;"), "");
  EXPECT_NE(parse_error_message("char 7; vars x; ideal I = x"), "");
  EXPECT_NE(parse_error_message("char 7; vars x; ideal I = x; ideal I = x^2;"), "");
  EXPECT_NE(parse_error_message("char 7; vars x; ideal I = x; frobnicate I;"), "");
}

TEST(Parser, ReportsLineAndColumn) {
  try {
    parse_session("char 7;\nvars x;\nideal I = x + q;\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 15);
  }
}

TEST(Parser, DefaultCharacteristic) {
  auto s = parse_session("vars x; ideal I = x^2;", {7});
  EXPECT_EQ(s.statements.size(), 2u);
}

TEST(Parser, ParametersAndOptions) {
  auto s = parse_session("char 5; vars x, y; param r = 2..4; ideal I = x^r, y^(r + 1) - x*y; table I window=-3..4 imax=1;");
  const auto& p = std::get<ParamDecl>(s.statements[2]);
  EXPECT_EQ(p.lo, 2);
  EXPECT_EQ(p.hi, 4);
  const auto& c = std::get<Command>(s.statements[4]);
  ASSERT_TRUE(c.option("window"));
  EXPECT_EQ(c.option("window")->lo, -3);
  EXPECT_EQ(c.option("window")->hi, 4);
  EXPECT_EQ(c.option("imax")->lo, 1);
}

TEST(Parser, RoundTrip) {
  const std::vector<std::string> inputs = {
      kFamily,
      "char 5; vars x, y; param r = 2..4; ideal I = -x^r + 3*(x - y)^(2*r - 1), x*y; table I window=-3..4 imax=1;",
      "synthetic_table T = {(1, 2): 10, (2, 0): 1}; gap T t=5; diag T t=5;",
      "char 2; vars a; ideal J = a*a*a - (a + 1)^2 + 0; localh0 J;",
  };
  for (const auto& in : inputs) {
    auto s = parse_session(in);
    auto printed = pretty_print(s);
    EXPECT_EQ(parse_session(printed), s) << printed;
    EXPECT_EQ(pretty_print(parse_session(printed)), printed);
  }
}

TEST(Parser, CorpusRoundTrips) {
  std::ifstream f(FORMRING_CORPUS);
  std::string text((std::istreambuf_iterator<char>(f)), {});
  auto s = parse_session(text);
  EXPECT_EQ(parse_session(pretty_print(s)), s);
}

TEST(Parser, FuzzNeverPanics) {
  std::mt19937 gen(2024);
  const std::string alphabet = "xyz0123456789+-*^()=,;.:{}# \n\tcharvsidelmpgt_";
  const std::vector<std::string> seeds = {kFamily, "synthetic_table T = {(1,2):10,(2,0):1}; gap T t=5;",
                                          "char 5; vars x, y; param r = 2..4; ideal I = x^r, y^(r+1); table I imax=1;"};
  int parsed = 0, rejected = 0;
  for (int c = 0; c < 3000; ++c) {
    std::string text;
    if (c % 2) {
      std::uniform_int_distribution<int> len(0, 80), pick(0, static_cast<int>(alphabet.size()) - 1);
      for (int k = len(gen); k > 0; --k) text += alphabet[pick(gen)];
    } else {
      text = seeds[c % seeds.size()];
      std::uniform_int_distribution<int> edits(1, 4);
      for (int k = edits(gen); k > 0; --k) {
        std::uniform_int_distribution<std::size_t> at(0, text.size());
        std::uniform_int_distribution<int> pick(0, static_cast<int>(alphabet.size()) - 1), op(0, 2);
        std::size_t pos = at(gen);
        switch (op(gen)) {
          case 0: text.insert(pos, 1, alphabet[pick(gen)]); break;
          case 1: if (pos < text.size()) text.erase(pos, 1); break;
          default: if (pos < text.size()) text[pos] = alphabet[pick(gen)];
        }
      }
    }
    try {
      auto s = parse_session(text);
      ++parsed;
      EXPECT_EQ(parse_session(pretty_print(s)), s) << text;
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  EXPECT_GT(parsed, 0);
  EXPECT_GT(rejected, 0);
}

TEST(Parser, DeepNestingIsRejectedNotOverflowed) {
  std::string deep = "char 7; vars x; ideal I = " + std::string(100000, '(') + "x" + std::string(100000, ')') + ";";
  EXPECT_THROW(parse_session(deep), ParseError);
}

TEST(Eval, ExponentGuard) {
  auto s = parse_session("char 7; vars x; ideal I = x^100000;");
  auto ring = Ring::make({"x"}, 7);
  EXPECT_THROW(eval_polynomial(std::get<IdealDecl>(s.statements[2]).generators[0], ring, {}), GuardExceeded);
}

TEST(Runner, FamilyReport) {
  auto text = text_of(kFamily);
  EXPECT_NE(text.find("G_buchsbaum: yes"), std::string::npos);
  EXPECT_NE(text.find("A_buchsbaum: no"), std::string::npos);
  EXPECT_NE(text.find("thm12_admissible_k: []"), std::string::npos);
  EXPECT_NE(text.find("lengths.higher_i: not checked"), std::string::npos);
}

TEST(Runner, SyntheticGap) {
  auto rep = run_session(parse_session("synthetic_table T = {(1,2):10,(2,0):1}; gap T t=5;"));
  ASSERT_EQ(rep.results.size(), 2u);
  const auto& gap = rep.results[1];
  EXPECT_EQ(gap.command, "gap");
  EXPECT_EQ(gap.data["thm13_gap_hypothesis"], "no");
  EXPECT_EQ(gap.data["violations"].dump(), "[[1,2,3,2]]");
  EXPECT_EQ(rep.exit_code(), 0);
}

TEST(Runner, EmptySession) {
  auto rep = run_session(parse_session("# nothing\n"));
  EXPECT_TRUE(rep.results.empty());
  EXPECT_EQ(rep.exit_code(), 0);
  EXPECT_EQ(to_json(rep)["results"].dump(), "[]");
}

TEST(Runner, ParameterExpansion) {
  auto rep = run_session(parse_session("char 32003; vars x; param r = 2..4; ideal I = x^r; localh0 I;"));
  ASSERT_EQ(rep.results.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(rep.results[k].data["params"]["r"], k + 2);
    EXPECT_EQ(rep.results[k].data["length"], k + 2);
  }
}

TEST(Runner, ErrorsDoNotAbortLaterCommands) {
  auto rep = run_session(parse_session("char 7; vars x, y; ideal U = 1 + x; ideal F = x^2, x*y; localh0 U; localh0 F;"));
  ASSERT_EQ(rep.results.size(), 2u);
  EXPECT_EQ(rep.results[0].status, "error");
  EXPECT_EQ(rep.results[1].status, "ok");
  EXPECT_EQ(rep.exit_code(), 1);
}

TEST(Runner, UnstableResultIsAGuard) {
  RunOptions opts;
  opts.t_max = 2;
  auto rep = run_session(parse_session(kFamily), opts);
  EXPECT_EQ(rep.exit_code(), 2);
}

TEST(Runner, Deterministic) {
  std::ifstream f(FORMRING_CORPUS);
  std::string text((std::istreambuf_iterator<char>(f)), {});
  auto s = parse_session(text);
  auto a = to_json(run_session(s)).dump(2), b = to_json(run_session(s)).dump(2);
  EXPECT_EQ(a, b);
}
