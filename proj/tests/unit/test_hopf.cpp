#include "doctest.h"
#include "dyson/hopf.hpp"

using namespace dyson;
using namespace dyson::hopf;

namespace {

Forest F(const char* code) { return Forest(parse_tree(code)); }
Forest F2(const char* a, const char* b) { return Forest({parse_tree(a), parse_tree(b)}); }

}  // namespace

TEST_SUITE("hopf") {
  TEST_CASE("canonical encoding") {
    CHECK(parse_tree("1(1(1),2)").encoding() == "1(2,1(1))");
    CHECK(parse_tree("1(1(1),2)") == parse_tree("1(2,1(1))"));
    CHECK(parse_tree("1(1,2(1))").node_count() == 4);
    CHECK_THROWS_AS(parse_tree("1(2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_tree("1)"), std::invalid_argument);
    CHECK(Forest{}.encoding() == "I");
  }

  TEST_CASE("coproduct examples") {
    const Forest unit{};
    TensorElement one;
    one.add(unit, unit, 1);
    CHECK(coproduct(unit) == one);

    TensorElement dot;
    dot.add(F("1"), unit, 1);
    dot.add(unit, F("1"), 1);
    CHECK(coproduct(F("1")) == dot);

    TensorElement chain;
    chain.add(F("1(1)"), unit, 1);
    chain.add(unit, F("1(1)"), 1);
    chain.add(F("1"), F("1"), 1);
    CHECK(coproduct(F("1(1)")) == chain);

    // Cherry: two single cuts giving 2 (.⊗l2) and the double cut (..⊗.).
    const auto cherry = coproduct(F("1(1,1)"));
    CHECK(cherry.coefficient(F("1"), F("1(1)")) == 2);
    CHECK(cherry.coefficient(F2("1", "1"), F("1")) == 1);
    CHECK(cherry.terms().size() == 4);
  }

  TEST_CASE("antipode examples") {
    CHECK(antipode(Forest{}) == HopfElement::unit());
    CHECK(antipode(F("1")) == HopfElement(F("1"), -1));
    HopfElement expected(F("1(1)"), -1);
    expected.add(F2("1", "1"), 1);
    CHECK(antipode(F("1(1)")) == expected);
  }

  TEST_CASE("grafting") {
    CHECK(b_plus(Forest{}, 1) == parse_tree("1"));
    CHECK(b_plus(F2("1", "1"), 1) == parse_tree("1(1,1)"));
    CHECK(b_plus(Forest(b_plus(F("1"), 1)), 1) == parse_tree("1(1(1))"));
  }

  TEST_CASE("cocycle on small forests") {
    CHECK(check_cocycle(Forest{}));
    CHECK(check_cocycle(F("1")));
    CHECK(check_cocycle(F2("1(2)", "2"), 2));
  }

  TEST_CASE("forest enumeration counts") {
    // Undecorated rooted forests with n nodes: 1, 1, 2, 4, 9, 20.
    const auto f = enumerate_forests(5, {1});
    std::vector<int> by_size(6, 0);
    for (const auto& x : f) by_size[static_cast<std::size_t>(x.node_count())]++;
    CHECK(by_size == std::vector<int>{1, 1, 2, 4, 9, 20});
  }

  TEST_CASE("axioms hold and serial equals parallel") {
    const auto f = enumerate_forests(4, {1, 2});
    const auto serial = check_axioms_serial(f);
    CHECK(serial.ok());
    CHECK(serial.forests == f.size());
    CHECK(check_axioms_parallel(f) == serial);
  }

  TEST_CASE("combinatorial equation") {
    const auto x = combinatorial_dse(2, 2);
    CHECK(x[0] == HopfElement::unit());
    CHECK(x[1] == HopfElement(F("1"), -1));
    CHECK(x[2].coefficient(F("1(1)")) == -1);
    CHECK(x[2].coefficient(F("2")) == -1);
    for (int s : {1, 2, 3, -1})
      for (int k = 0; k <= 4; ++k) CHECK(check_breaking_apart(s, k));
  }
}
