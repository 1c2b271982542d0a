#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kcomplete/recursion_engine.hpp"

using namespace kcomplete;
using testutil::make;
using testutil::rat;

TEST_CASE("essential rows by the matching criterion") {
  CHECK(essential_matching_rows(make(2, {{"0", "1"}, {"1", "1"}})) == std::vector<int>{0});
  CHECK(essential_matching_rows(make(3, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "1"}})) ==
        std::vector<int>{0, 1});
  CHECK(essential_matching_rows(make(3, {{"0", "1", "1"}, {"1", "0", "1"}, {"0", "1", "1"}})) ==
        std::vector<int>{1});
}

TEST_CASE("essential rows demand the exact hypothesis and a normalized matrix") {
  CHECK_THROWS_AS(essential_matching_rows(make(1, {{"0", "1"}, {"1", "1"}})), HypothesisError);
  CHECK_THROWS_AS(essential_matching_rows(make(2, {{"1", "1"}, {"1", "1"}})), HypothesisError);
  CHECK_THROWS_AS(essential_matching_rows(make(2, {{"0", "0"}, {"1", "1"}})), HypothesisError);
}

TEST_CASE("recursive expectation reproduces the known values") {
  CHECK(expectation_recursive(make(2, {{"0", "1"}, {"1", "1"}})) == rat("3/4"));
  CHECK(expectation_recursive(make(2, {{"0", "1"}, {"2", "3"}})) == rat("3/10"));
  CHECK(expectation_recursive(make(3, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "1"}})) == rat("11/18"));
  CHECK(expectation_recursive(make(2, {{"1", "0", "1"}, {"1", "1", "1"}})) == rat("5/12"));
  CHECK(expectation_recursive(make(1, {{"0", "1"}, {"1", "1"}})) == 0);
  CHECK(expectation_recursive(make(1, {{"1", "1"}, {"1", "1"}})) == rat("1/4"));
  CHECK_THROWS_AS(expectation_recursive(make(2, {{"1", "1"}, {"1", "1"}})), HypothesisError);
}

TEST_CASE("forced rows are removed before conditioning") {
  CHECK(expectation_recursive(make(2, {{"0", "0"}, {"1", "1"}})) == rat("1/2"));
  CHECK(expectation_recursive(make(3, {{"0", "0", "1"}, {"1", "1", "0"}, {"1", "1", "1"}})) == rat("5/12"));
}

TEST_CASE("recursive transform reproduces the known functions") {
  auto x = Polynomial::x();

  auto unit = laplace_recursive(make(2, {{"0", "1"}, {"1", "1"}}));
  CHECK(unit == RationalFunction(x + Polynomial(4), (x + Polynomial(2)) * (x + Polynomial(2))));

  auto generic = laplace_recursive(make(2, {{"0", "1"}, {"2", "3"}}));
  CHECK(generic == RationalFunction(x * Polynomial(3) + Polynomial(20),
                                    (x + Polynomial(4)) * (x + Polynomial(5))));

  CHECK(laplace_recursive(make(1, {{"0", "1"}, {"1", "1"}})) == RationalFunction(1));
  CHECK(laplace_recursive(make(1, {{"1", "1"}, {"1", "1"}})) ==
        RationalFunction(Polynomial(4), x + Polynomial(4)));
  CHECK_THROWS_AS(laplace_recursive(make(2, {{"1", "1"}, {"1", "1"}})), HypothesisError);
}

TEST_CASE("transform derivatives at zero give the moments") {
  for (auto m : {make(2, {{"0", "1"}, {"1", "1"}}), make(2, {{"0", "1"}, {"2", "3"}}),
                 make(3, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "1"}})}) {
    auto rf = laplace_recursive(m);
    CHECK(rf.eval(Rat(0)) == 1);
    CHECK(-derivative(rf).eval(Rat(0)) == expectation_recursive(m));
    Rat e = expectation_recursive(m);
    CHECK(derivative(derivative(rf)).eval(Rat(0)) - e * e >= 0);
  }
}

TEST_CASE("step count bounds the denominator degree") {
  CHECK(recursion_step_count(make(2, {{"0", "1"}, {"1", "1"}})) == 2);
  CHECK(recursion_step_count(make(3, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "1"}})) == 5);
  CHECK(recursion_step_count(make(1, {{"0", "1"}, {"1", "1"}})) == 0);
  for (auto m : {make(2, {{"0", "1"}, {"2", "3"}}),
                 make(3, {{"0", "2", "3"}, {"4", "0", "5"}, {"6", "7", "8"}})}) {
    CHECK(laplace_recursive(m).den().degree() <= recursion_step_count(m));
  }
}

TEST_CASE("mixture transform rebuilds the rational function") {
  ExpMixture mix{{{Rat(-1), Rat(5), -1}, {Rat(2), Rat(4), -1}}};
  auto x = Polynomial::x();
  CHECK(mixture_transform(mix) == RationalFunction(x * Polynomial(3) + Polynomial(20),
                                                   (x + Polynomial(4)) * (x + Polynomial(5))));
}

TEST_CASE("partial fractions recover the mixture") {
  auto x = Polynomial::x();
  auto mix = partial_fractions(RationalFunction(x * Polynomial(3) + Polynomial(20),
                                                (x + Polynomial(4)) * (x + Polynomial(5))));
  REQUIRE(mix.terms.size() == 2);
  CHECK(mix.terms[0].rate == 4);
  CHECK(mix.terms[0].coeff == 2);
  CHECK(mix.terms[1].rate == 5);
  CHECK(mix.terms[1].coeff == -1);

  auto single = partial_fractions(RationalFunction(Polynomial(7), x + Polynomial(7)));
  REQUIRE(single.terms.size() == 1);
  CHECK(single.terms[0].coeff == 1);
  CHECK(single.terms[0].rate == 7);
}

TEST_CASE("partial fractions report repeated poles by rate") {
  auto x = Polynomial::x();
  auto rf = RationalFunction(x + Polynomial(4), (x + Polynomial(2)) * (x + Polynomial(2)));
  try {
    partial_fractions(rf);
    FAIL("expected RepeatedPoleError");
  } catch (const RepeatedPoleError& e) {
    CHECK(e.rate == 2);
  }
}

TEST_CASE("partial fractions reject non-transforms") {
  auto x = Polynomial::x();
  CHECK_THROWS_AS(partial_fractions(RationalFunction(x, Polynomial(1))), std::domain_error);
  CHECK_THROWS_AS(partial_fractions(RationalFunction(Polynomial(3), x + Polynomial(7))), std::domain_error);
}

TEST_CASE("rational roots handle multiplicity and fractions") {
  auto x = Polynomial::x();
  auto p = (x - Polynomial(Rat(1, 2))) * (x - Polynomial(Rat(1, 2))) * (x + Polynomial(3));
  auto roots = detail::rational_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == -3);
  CHECK(roots[1] == rat("1/2"));
  CHECK(roots[2] == rat("1/2"));
  CHECK(detail::rational_roots(x * (x - Polynomial(5))) == std::vector<Rat>{Rat(0), Rat(5)});
}
