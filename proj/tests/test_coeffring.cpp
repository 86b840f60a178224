#include "maasslab/coeffring.hpp"

#include <catch_amalgamated.hpp>

using namespace maasslab;

TEST_CASE("rational parsing canonicalizes and rejects junk") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-10/5") == Rational(-2));
    CHECK_THROWS_AS(parse_rational("1/0"), MathError);
    CHECK_THROWS_AS(parse_rational("x"), MathError);
    CHECK_THROWS_AS(parse_rational(""), MathError);
}

TEST_CASE("gaussian rational arithmetic") {
    Coefficient a = Coefficient::rational(Rational(1, 2), 1), b = Coefficient::rational(2, -1);
    CHECK(a * b == Coefficient::rational(2, Rational(3, 2)));
    CHECK((a - a).is_exact_zero());
    CHECK(a.conj() == Coefficient::rational(Rational(1, 2), -1));
    CHECK(i_power(1) * i_power(1) == Coefficient::integer(-1));
    for (long e = -5; e <= 5; ++e) CHECK(i_power(e) * i_power(-e) == Coefficient::integer(1));
}

TEST_CASE("symbol monomials merge and cancel") {
    Coefficient p2 = Coefficient::pi_power(2), pm2 = Coefficient::pi_power(-2);
    CHECK(p2 * pm2 == Coefficient::integer(1));
    Coefficient s = Coefficient::pi_power(1) + Coefficient::pi_power(1).scaled(Rational(2));
    CHECK(s == Coefficient::pi_power(1).scaled(Rational(3)));
    CHECK(s.is_single_monomial());
    CHECK((s - Coefficient::pi_power(1).scaled(Rational(3))).is_exact_zero());
    Coefficient mixed = Coefficient::pi_power(1) + Coefficient::symbol(Symbol::log(7));
    CHECK_FALSE(mixed.is_single_monomial());
    CHECK_FALSE(mixed.as_gauss().has_value());
}

TEST_CASE("even zeta values are rational multiples of pi powers") {
    CHECK(zeta_value(2) == Coefficient::pi_power(2).scaled(Rational(1, 6)));
    CHECK(zeta_value(4) == Coefficient::pi_power(4).scaled(Rational(1, 90)));
    CHECK(zeta_value(6) == Coefficient::pi_power(6).scaled(Rational(1, 945)));
    CHECK(zeta_value(3) == Coefficient::symbol(Symbol::zeta(3)));
    CHECK_THROWS_AS(zeta_value(1), MathError);
}

TEST_CASE("Bernoulli numbers") {
    auto B = bernoulli_numbers(12);
    CHECK(B[0] == 1);
    CHECK(B[1] == Rational(-1, 2));
    CHECK(B[2] == Rational(1, 6));
    CHECK(B[3] == 0);
    CHECK(B[4] == Rational(-1, 30));
    CHECK(B[12] == Rational(-691, 2730));
}

TEST_CASE("factorials, binomials, powers") {
    CHECK(factorial(12) == Rational(479001600));
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
    CHECK(rational_pow(Rational(-2, 3), 3) == Rational(-8, 27));
    CHECK(rational_pow(Rational(2), -2) == Rational(1, 4));
    CHECK_THROWS_AS(rational_pow(Rational(0), -1), MathError);
}

TEST_CASE("float conversion evaluates symbols") {
    PrecisionScope scope(256);
    Coefficient z3 = Coefficient::symbol(Symbol::zeta(3)).scaled(Rational(2));
    Real ref;
    mpfr_zeta_ui(ref.backend().data(), 3, MPFR_RNDN);
    Complex v = z3.to_float({}, 256).value();
    CHECK(abs(v.re - 2 * ref) < Real("1e-70"));
    Coefficient pi_i = Coefficient::pi_power(1) * Coefficient::imag_unit();
    Complex w = pi_i.to_float({}, 256).value();
    CHECK(abs(w.im - real_pi()) < Real("1e-70"));
    CHECK(abs(w.re) == 0);
    Real l7 = Coefficient::symbol(Symbol::log(7)).to_float({}, 256).value().re;
    CHECK(abs(exp(l7) - 7) < Real("1e-70"));
}

TEST_CASE("lambda ratio needs an explicit binding") {
    Coefficient c = Coefficient::symbol(Symbol::lambda_ratio(7));
    CHECK_THROWS_AS(c.to_float({}, 128), MathError);
    SymbolBindings b;
    b.values["Lambda_ratio_7"] = Real("0.25");
    CHECK(c.to_float(b, 128).value().re == Real("0.25"));
}

TEST_CASE("mode mixing is rejected") {
    Coefficient e = Coefficient::integer(1);
    Coefficient f = Coefficient::floating(Complex(Real(1)), 128);
    CHECK_THROWS_AS(e + f, MathError);
    CHECK(coerce(e, Mode::Float, 128).mode() == Mode::Float);
}

TEST_CASE("zero tests") {
    CHECK(Coefficient::integer(0).is_exact_zero());
    CHECK(Coefficient::integer(0).is_zero().certainty == Certainty::Exact);
    Coefficient tiny = Coefficient::floating(Complex(Real("1e-40")), 128);
    auto t = tiny.is_zero(Real("1e-30"));
    CHECK(t.zero);
    CHECK(t.certainty == Certainty::Numeric);
    CHECK_FALSE(Coefficient::floating(Complex(Real("1e-3")), 128).is_zero(Real("1e-30")).zero);
}

TEST_CASE("inverse of a monomial") {
    Coefficient c = Coefficient::pi_power(3).scaled(Rational(2, 5)) * Coefficient::imag_unit();
    CHECK(c * c.inverse_monomial() == Coefficient::integer(1));
    CHECK_THROWS_AS((Coefficient::pi_power(1) + Coefficient::integer(1)).inverse_monomial(), MathError);
}
