// Text round-trips for pc presentations.
#include "doctest.h"
#include "helpers.hpp"
#include "sigma3/serialize.hpp"

using namespace sigma3;
using namespace sigma3::testing;

TEST_CASE("print then parse reproduces the presentation") {
  for (auto g : {make_c9xc3(), make_heis3(), make_extra9(), make_c27xc3(), make_q8()}) {
    std::string text = print_pcgroup(*g);
    auto back = parse_pcgroup(text);
    CHECK(back->prime == g->prime);
    CHECK(back->n == g->n);
    CHECK(print_pcgroup(*back) == text);
    for (int i = 0; i < g->n; ++i) CHECK(back->power[i] == g->power[i]);
    for (int j = 1; j < g->n; ++j)
      for (int i = 0; i < j; ++i)
        CHECK(back->commutator_word(j, i) == g->commutator_word(j, i));
  }
}

TEST_CASE("word syntax") {
  CHECK(word_to_string({}) == "1");
  Word w = parse_word("a3^2*a5", 6);
  REQUIRE(w.size() == 2);
  CHECK(w[0].gen == 2);
  CHECK(w[0].exp == 2);
  CHECK(w[1].gen == 4);
  CHECK(w[1].exp == 1);
  CHECK(word_to_string(w) == "a3^2*a5");
  CHECK(parse_word("1", 3).empty());
  CHECK(parse_word(" a1 ^ 2 * a2 ", 3).size() == 2);
}

TEST_CASE("parser reports malformed input") {
  CHECK_THROWS_AS(parse_word("b2", 4), UsageError);
  CHECK_THROWS_AS(parse_word("a9", 4), UsageError);
  CHECK_THROWS_AS(parse_word("a1 a2", 4), UsageError);
  CHECK_THROWS_AS(parse_pcgroup("nonsense"), UsageError);
  CHECK_THROWS_AS(parse_pcgroup("pcgroup p=3 n=2\na1^3 = a1"), UsageError);
  CHECK_THROWS_AS(parse_pcgroup("pcgroup p=3 n=3\n[a2,a1] = a2"), UsageError);
  CHECK_THROWS_AS(parse_pcgroup("pcgroup p=3 n=2\na1^2 = a2"), UsageError);
  // comments and blank lines are fine
  auto g = parse_pcgroup("# header\npcgroup p=3 n=2\n\na1^3 = a2\n");
  CHECK(g->n == 2);
  CHECK(g->element_order_vec(g->gen_vec(0)) == 9);
}
