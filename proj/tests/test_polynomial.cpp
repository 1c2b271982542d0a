#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kcomplete/polynomial.hpp"

using namespace kcomplete;
using testutil::rat;

TEST_CASE("polynomial basics") {
  Polynomial zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  CHECK_THROWS_AS(zero.leading(), std::logic_error);

  Polynomial p(std::vector<Rat>{Rat(1), Rat(2), Rat(0)});
  CHECK(p.degree() == 1);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(7) == 0);
  CHECK(p.eval(Rat(3)) == 7);
  CHECK(Polynomial::x().degree() == 1);
  CHECK(Polynomial(Rat(5, 2)).degree() == 0);
}

TEST_CASE("polynomial arithmetic") {
  auto x = Polynomial::x();
  auto p = (x + Polynomial(1)) * (x + Polynomial(1));
  CHECK(p.coeffs() == std::vector<Rat>{Rat(1), Rat(2), Rat(1)});
  CHECK((p - p).is_zero());
  CHECK((x * x * x - Polynomial(1)).eval(Rat(1)) == 0);
}

TEST_CASE("long division returns quotient and remainder") {
  auto x = Polynomial::x();
  auto [q, r] = divmod(x * x * x - Polynomial(1), x - Polynomial(1));
  CHECK(q.coeffs() == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
  CHECK(r.is_zero());

  auto [q2, r2] = divmod(x * x + Polynomial(1), x - Polynomial(2));
  CHECK(q2.coeffs() == std::vector<Rat>{Rat(2), Rat(1)});
  CHECK(r2.coeffs() == std::vector<Rat>{Rat(5)});
}

TEST_CASE("derivative and gcd") {
  auto x = Polynomial::x();
  auto p = x * x * Polynomial(Rat(3)) + x * Polynomial(2) + Polynomial(7);
  CHECK(derivative(p).coeffs() == std::vector<Rat>{Rat(2), Rat(6)});

  auto a = (x - Polynomial(1)) * (x - Polynomial(2));
  auto b = (x - Polynomial(1)) * (x - Polynomial(3));
  CHECK(poly_gcd(a, b).coeffs() == std::vector<Rat>{Rat(-1), Rat(1)});
  CHECK(poly_gcd(a, Polynomial()) == a);
}

TEST_CASE("rational functions normalize to lowest terms with monic denominator") {
  auto x = Polynomial::x();
  RationalFunction f(x * Polynomial(2) + Polynomial(2), x * x * Polynomial(2) + x * Polynomial(2));
  CHECK(f.num().coeffs() == std::vector<Rat>{Rat(1)});
  CHECK(f.den().coeffs() == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(f == RationalFunction(Polynomial(1), x));

  RationalFunction zero(Polynomial(), x);
  CHECK(zero.num().is_zero());
  CHECK(zero.den().coeffs() == std::vector<Rat>{Rat(1)});
}

TEST_CASE("rational function arithmetic and evaluation") {
  auto x = Polynomial::x();
  RationalFunction f(Polynomial(1), x + Polynomial(1));
  RationalFunction g(Polynomial(1), x + Polynomial(2));
  auto s = f + g;
  CHECK(s.eval(Rat(0)) == rat("3/2"));
  CHECK((f * g).eval(Rat(1)) == rat("1/6"));
  CHECK((f - f).num().is_zero());
  CHECK((f / g).eval(Rat(0)) == 2);
  CHECK_THROWS_AS(f / RationalFunction(0), std::domain_error);
  CHECK_THROWS_AS(f.eval(Rat(-1)), std::domain_error);
}

TEST_CASE("rational function derivative follows the quotient rule") {
  auto x = Polynomial::x();
  RationalFunction f(Polynomial(1), x + Polynomial(1));
  auto d = derivative(f);
  CHECK(d.eval(Rat(0)) == -1);
  CHECK(d == RationalFunction(Polynomial(-1), (x + Polynomial(1)) * (x + Polynomial(1))));
}
