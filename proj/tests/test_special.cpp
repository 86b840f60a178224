#include "maasslab/special.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace maasslab;
using namespace maasslab::special;

namespace {

constexpr unsigned kP = 256;

// Ei(y) = gamma + log y + sum y^n / (n n!)
Real ei_series(const Real& y) {
    Real euler;
    mpfr_const_euler(euler.backend().data(), MPFR_RNDN);
    Real term(1), sum(0);
    for (long n = 1; n < 2000; ++n) {
        term *= y / n;
        Real t = term / n;
        sum += t;
        if (abs(t) < Real("1e-90") * abs(sum)) break;
    }
    return euler + log(y) + sum;
}

Real second_difference(const std::function<Real(const Real&)>& f, const Real& x, const Real& h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

}  // namespace

TEST_CASE("upper incomplete gamma against its integral") {
    PrecisionScope scope(kP);
    for (const char* s : {"2.5", "0.5", "-1.5", "3", "0"})
        for (const char* x : {"0.3", "1.7", "6"}) {
            Real S(s), X(x);
            Real ref = oracle::integrate_half_line([&](const Real& y) { return pow(X + y, S - 1) * exp(-X - y); }, kP);
            INFO("s=" << s << " x=" << x);
            CHECK(abs(incomplete_gamma(S, X) - ref) < Real("1e-60") * abs(ref));
        }
    CHECK_THROWS_AS(incomplete_gamma(Real(1), Real(0)), MathError);
}

TEST_CASE("real part of Gamma(s, x) at negative x") {
    PrecisionScope scope(kP);
    for (const char* y : {"0.4", "2.5", "11"}) {
        Real Y(y);
        // Re Gamma(0, -y) = -Ei(y)
        CHECK(abs(re_incomplete_gamma_int(0, -Y) + ei_series(Y)) < Real("1e-60") * abs(ei_series(Y)));
        // Gamma(3, x) = 2 e^{-x} (1 + x + x^2/2) holds for every x
        Real x = -Y;
        Real g3 = 2 * exp(-x) * (1 + x + x * x / 2);
        CHECK(abs(re_incomplete_gamma_int(3, x) - g3) < Real("1e-60") * abs(g3));
    }
}

TEST_CASE("W_k satisfies its differential equation") {
    PrecisionScope scope(kP);
    // W_k'(x) = 2 (-2x)^{-k} e^{2x}
    const Real h("1e-15");
    for (long k : {-6L, -2L, 0L, 2L, 12L})
        for (const char* x : {"-1.3", "-0.2", "0.35", "2.1"}) {
            Real X(x);
            Real d = (8 * (W(k, X + h) - W(k, X - h)) - (W(k, X + 2 * h) - W(k, X - 2 * h))) / (12 * h);
            Real want = 2 * pow(-2 * X, Real(-k)) * exp(2 * X);
            INFO("k=" << k << " x=" << x);
            CHECK(abs(d - want) < Real("1e-40") * (1 + abs(want)));
        }
    CHECK_THROWS_AS(W(2, Real(0)), MathError);
    CHECK(beta(4, Real(-3)) == W(4, Real("1.5")));
}

TEST_CASE("1F1 closed forms") {
    PrecisionScope scope(kP);
    for (const char* x : {"-3.5", "0.25", "7"}) {
        Real X(x);
        CHECK(abs(hyp1f1(Real("1.7"), Real("1.7"), X) - exp(X)) < Real("1e-65") * exp(X));
        Real ref = (exp(X) - 1) / X;
        CHECK(abs(hyp1f1(Real(1), Real(2), X) - ref) < Real("1e-65") * abs(ref));
        Real lag = 1 - 2 * X + X * X / 2;
        CHECK(abs(hyp1f1(Real(-2), Real(1), X) - lag) < Real("1e-65") * (1 + abs(lag)));
    }
    CHECK_THROWS_AS(hyp1f1(Real(1), Real(-2), Real(1)), MathError);
}

TEST_CASE("Whittaker M solves the Whittaker equation") {
    PrecisionScope scope(kP);
    const Real h("1e-12");
    for (auto [kappa, mu] : {std::pair{"0.5", "1.5"}, std::pair{"-2", "0.25"}, std::pair{"3", "2.5"}})
        for (const char* y : {"0.6", "3.2"}) {
            Real K(kappa), Mu(mu), Y(y);
            auto f = [&](const Real& t) { return whittaker_M(K, Mu, t); };
            Real res = second_difference(f, Y, h) + (Real(-1) / 4 + K / Y + (Real(1) / 4 - Mu * Mu) / (Y * Y)) * f(Y);
            CHECK(abs(res) < Real("1e-30") * (1 + abs(f(Y))));
        }
}

TEST_CASE("Psi against its integral representation and closed forms") {
    PrecisionScope scope(kP);
    const Real tol = pow(Real(2), -static_cast<int>(kP) / 4);
    for (auto [a, b] : {std::pair{"1.5", "0.3"}, std::pair{"2.25", "4"}, std::pair{"1", "-1.5"}})
        for (const char* z : {"0.4", "3.3"}) {
            Real A(a), B(b), Z(z);
            Real ref = oracle::integrate_half_line(
                           [&](const Real& t) { return exp(-Z * t) * pow(t, A - 1) * pow(1 + t, B - A - 1); }, kP) /
                       gamma(A);
            INFO("a=" << a << " b=" << b << " z=" << z);
            CHECK(abs(psi_chf(A, B, Z) - ref) < tol * abs(ref));
        }
    for (const char* z : {"0.4", "3.3", "12"}) {
        Real Z(z);
        // U(-1, b, z) = z - b,  U(-2, b, z) = z^2 - 2(b+1) z + b(b+1),  U(a, a+1, z) = z^{-a}
        CHECK(abs(psi_chf(Real(-1), Real("0.7"), Z) - (Z - Real("0.7"))) < tol);
        Real b("-0.4");
        Real u2 = Z * Z - 2 * (b + 1) * Z + b * (b + 1);
        CHECK(abs(psi_chf(Real(-2), b, Z) - u2) < tol * (1 + abs(u2)));
        Real a("-1.3");
        CHECK(abs(psi_chf(a, a + 1, Z) - pow(Z, -a)) < tol * pow(Z, -a));
        CHECK(psi_chf(Real(0), Real(3), Z) == 1);
    }
    PsiJet j = psi_chf_jet(Real("0.6"), Real("1.1"), Real(2));
    const Real h("1e-10");
    Real d1 = (psi_chf(Real("0.6"), Real("1.1"), 2 + h) - psi_chf(Real("0.6"), Real("1.1"), 2 - h)) / (2 * h);
    CHECK(abs(j.d1 - d1) < Real("1e-15"));
    CHECK_THROWS_AS(psi_chf(Real(1), Real(1), Real(0)), MathError);
}

TEST_CASE("Hurwitz zeta") {
    PrecisionScope scope(kP);
    for (const char* s : {"2", "3.5", "7"}) {
        Real S(s);
        CHECK(abs(hurwitz_zeta(S, Real(1)) - zeta(S)) < Real("1e-70"));
        CHECK(abs(hurwitz_zeta(S, Real("0.5")) - (pow(Real(2), S) - 1) * zeta(S)) < Real("1e-68"));
        Real a("0.37");
        CHECK(abs(hurwitz_zeta(S, a) - hurwitz_zeta(S, a + 1) - pow(a, -S)) < Real("1e-65") * pow(a, -S));
    }
    CHECK_THROWS_AS(hurwitz_zeta(Real(1), Real(1)), MathError);
    CHECK_THROWS_AS(hurwitz_zeta(Real(2), Real(0)), MathError);
}

TEST_CASE("real divisor sums and gamma") {
    PrecisionScope scope(kP);
    CHECK(sigma_real(6, Real(2)) == 50);
    CHECK(abs(sigma_real(12, Real(-1)) - Real(28) / 12) < Real("1e-70"));
    CHECK(abs(gamma(Real("0.5")) - sqrt(real_pi())) < Real("1e-70"));
    CHECK(rgamma(Real(-3)) == 0);
}
