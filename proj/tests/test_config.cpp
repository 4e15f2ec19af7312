#include <doctest.h>

#include "toml_lite.hpp"

TEST_CASE("toml subset round-trips") {
  toml_lite::Table t{{"model", "yhk"},   {"n", "2000"},      {"normality", "true"},
                     {"seed", "42"},     {"seed_tree", "((1,2),3);"}};
  std::string s = toml_lite::serialize(t);
  CHECK(toml_lite::parse(s) == t);
  CHECK(toml_lite::serialize(toml_lite::parse(s)) == s);
}

TEST_CASE("parsing tolerates comments and blank lines") {
  auto t = toml_lite::parse("# campaign\n\nmodel = \"pda\"  # which process\nn = 500\n");
  CHECK(t.at("model") == "pda");
  CHECK(t.at("n") == "500");
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(toml_lite::parse("model pda\n"), urnphylo::ParseError);
  CHECK_THROWS_AS(toml_lite::parse("model = \"pda\nn = 1\n"), urnphylo::ParseError);
  CHECK_THROWS_AS(toml_lite::parse("n = 12x\n"), urnphylo::ParseError);
}

TEST_CASE("config hash is stable and order-insensitive") {
  toml_lite::Table a{{"x", "1"}, {"y", "2"}};
  toml_lite::Table b{{"y", "2"}, {"x", "1"}};
  CHECK(toml_lite::fnv1a_hex(toml_lite::serialize(a)) ==
        toml_lite::fnv1a_hex(toml_lite::serialize(b)));
  CHECK(toml_lite::fnv1a_hex("a") != toml_lite::fnv1a_hex("b"));
}
