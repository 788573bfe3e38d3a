#include "sc/textio.hpp"

#include <random>

#include "doctest.h"

using namespace sc;
using textio::Expr;

TEST_CASE("word grammar round trips") {
  Alphabet a({"a", "x", "b", "y"});
  auto rt = [&](const std::string& s) {
    RleWord w = textio::parse_word(s, a);
    return textio::format_word(w, a);
  };
  CHECK(rt("a") == "a");
  CHECK(rt("a^2 x^-3 b y^10") == "a^2 x^-3 b y^10");
  CHECK(rt("e") == "e");
  CHECK(rt("a a a") == "a^3");
  CHECK(rt("a x x^-1 a^-1") == "e");
  CHECK(rt("a^0 x") == "x");
  CHECK(rt("  a   x  ") == "a x");
  // canonical output parses back to the same word
  RleWord w = textio::parse_word("a^5 x^-2 a^5 x^-2 a^5 x^-2", a);
  CHECK(textio::parse_word(textio::format_word(w, a), a) == w);
}

TEST_CASE("word grammar rejects junk") {
  Alphabet a({"a", "x"});
  CHECK_THROWS_AS(textio::parse_word("", a), error);
  CHECK_THROWS_AS(textio::parse_word("   ", a), error);
  CHECK_THROWS_AS(textio::parse_word("z", a), error);
  CHECK_THROWS_AS(textio::parse_word("a^", a), error);
  CHECK_THROWS_AS(textio::parse_word("a^two", a), error);
}

TEST_CASE("random words round trip bit-exactly") {
  Alphabet a({"a", "x", "b"});
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> nr(1, 8), sym(0, 2), sgn(0, 1), ex(1, 5);
  for (int t = 0; t < 300; ++t) {
    std::vector<Run> runs;
    int n = nr(rng);
    for (int i = 0; i < n; ++i)
      runs.push_back({sym(rng), sgn(rng) ? 1 : -1, ex(rng)});
    RleWord w = RleWord::from_runs(runs);
    std::string s = textio::format_word(w, a);
    CHECK(textio::parse_word(s, a) == w);
    CHECK(textio::format_word(textio::parse_word(s, a), a) == s);
  }
}

TEST_CASE("expression evaluation") {
  auto ev = [](const std::string& s, std::map<std::string, Int> vars = {}) {
    return Expr::parse(s).eval(vars);
  };
  CHECK(ev("1+2*3") == 7);
  CHECK(ev("(1+2)*3") == 9);
  CHECK(ev("2^10") == 1024);
  CHECK(ev("2^3^2") == 512);  // right-associative
  CHECK(ev("7-2-3") == 2);
  CHECK(ev("-j^2", {{"j", 3}}) == -9);
  CHECK(ev("m*(j+2)^2", {{"m", 3}, {"j", 1}}) == 27);
  CHECK(ev("n^2*(j+3)^2", {{"n", 2}, {"j", 0}}) == 36);
  CHECK(ev("c*(j+3)^4", {{"c", 2}, {"j", 0}}) == 162);
  CHECK(ev("14^(i+1)", {{"i", 0}}) == 14);
  CHECK(ev("k^(i+1)", {{"k", 14}, {"i", 3}}) == Int("38416"));
  CHECK_THROWS_AS(ev("j+1"), error);        // unbound variable
  CHECK_THROWS_AS(ev("1+"), error);         // truncated
  CHECK_THROWS_AS(ev("2 3"), error);        // trailing input
  CHECK_THROWS_AS(ev("2^-1"), error);       // negative exponent
  CHECK(Expr::parse(" m * ( j + 2 ) ^ 2 ").text() == " m * ( j + 2 ) ^ 2 ");
  CHECK(Expr().empty());
  CHECK(!Expr::parse("1").empty());
}

TEST_CASE("rationals") {
  CHECK(textio::parse_rat("1/13") == Rat(1, 13));
  CHECK(textio::parse_rat("2/26") == Rat(1, 13));
  CHECK(textio::format_rat(Rat(1, 13)) == "1/13");
  CHECK(textio::format_rat(Rat(3)) == "3");
  CHECK(textio::parse_rat("-1/6") == Rat(-1, 6));
  CHECK_THROWS_AS(textio::parse_rat("nope"), error);
}
