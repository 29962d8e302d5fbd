#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "saea/config.hpp"

using namespace saea;

TEST_CASE("empty and comment-only files parse to nothing") {
  CHECK(parse_config("", "cfg").empty());
  CHECK(parse_config("\n\n  \t\n", "cfg").empty());
  CHECK(parse_config("# all comments\n  # indented\n", "cfg").empty());
}

TEST_CASE("key=value lines with whitespace and comments") {
  const auto entries = parse_config(
      "function = leadingones\n"
      "\n"
      "# canonical setup\n"
      "s=4\n"
      "  budget-evals =  100000\n",
      "cfg");
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].key == "function");
  CHECK(entries[0].value == "leadingones");
  CHECK(entries[0].line == 1);
  CHECK(entries[1].key == "s");
  CHECK(entries[1].value == "4");
  CHECK(entries[1].line == 4);
  CHECK(entries[2].key == "budget-evals");
  CHECK(entries[2].value == "100000");
  CHECK(entries[2].line == 5);
}

TEST_CASE("malformed lines report the line number") {
  CHECK_THROWS_WITH(parse_config("a=1\nnot a pair\n", "my.cfg"),
                    "my.cfg:2: expected key=value");
  CHECK_THROWS_WITH(parse_config("=5\n", "my.cfg"), "my.cfg:1: missing key before '='");
  CHECK_THROWS_WITH(parse_config("x=\n", "my.cfg"),
                    "my.cfg:1: missing value for key 'x'");
}

TEST_CASE("missing file is an error") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/saea.cfg"), std::invalid_argument);
}
