#include "maasslab/catalog.hpp"
#include "maasslab/eval.hpp"
#include "maasslab/mfexp.hpp"

#include <catch_amalgamated.hpp>

using namespace maasslab;

TEST_CASE("add_term merges, cancels and drops beyond the truncation") {
    MFExpansion f(4, Mode::Exact, Rational(3));
    f.add_term(TermKey::q(Rational(1)), Coefficient::integer(2));
    f.add_term(TermKey::q(Rational(1)), Coefficient::integer(-2));
    CHECK(f.empty());
    f.add_term(TermKey::q(Rational(5)), Coefficient::integer(1));
    CHECK(f.empty());
    f.add_term(TermKey::q(Rational(-3)), Coefficient::integer(1));
    CHECK(f.size() == 1);
}

TEST_CASE("frequencies must lie in (1/N)Z") {
    MFExpansion f(0);
    CHECK_THROWS_AS(f.add_term(TermKey::q(Rational(1, 3)), Coefficient::integer(1)), MathError);
    MFExpansion g(0, Mode::Exact, std::nullopt, 3);
    CHECK_NOTHROW(g.add_term(TermKey::q(Rational(1, 3)), Coefficient::integer(1)));
    CHECK_THROWS_AS(MFExpansion(0, Mode::Exact, std::nullopt, 0), MathError);
}

TEST_CASE("mode mismatch is rejected") {
    MFExpansion f(0);
    CHECK_THROWS_AS(f.add_term(TermKey{}, Coefficient::floating(Complex(Real(1)), 128)), MathError);
    MFExpansion g(0, Mode::Float, std::nullopt, 1, 128);
    CHECK_THROWS_AS(f + g, MathError);
    CHECK_THROWS_AS(MFExpansion(2) + MFExpansion(4), MathError);
}

TEST_CASE("gamma atoms with s != 0 are rewritten into a unique normal form") {
    // Gamma(1, 4 pi v) = e^{-4 pi v}
    MFExpansion a(0), b(0);
    TermKey g;
    g.gamma = GammaAtom{1, Rational(1)};
    a.add_term(g, Coefficient::integer(1));
    TermKey e;
    e.v_decay = 2;
    b.add_term(e, Coefficient::integer(1));
    CHECK(a == b);

    // Gamma(2, x) = e^{-x} (1 + x), x = 4 pi v
    MFExpansion c(0), d(0);
    g.gamma = GammaAtom{2, Rational(1)};
    c.add_term(g, Coefficient::integer(1));
    d.add_term(e, Coefficient::integer(1));
    TermKey ev = e;
    ev.v_pow = 1;
    d.add_term(ev, Coefficient::pi_power(1).scaled(Rational(4)));
    CHECK(c == d);
}

TEST_CASE("negative-order gamma atoms agree with the incomplete gamma function") {
    PrecisionScope scope(256);
    for (int s : {-3, -1, 0, 2}) {
        MFExpansion f(0);
        TermKey g;
        g.gamma = GammaAtom{s, Rational(1, 2)};
        f.add_term(g, Coefficient::integer(1));
        EvalContext ctx;
        ctx.v = Real("0.7");
        Complex z = eval_expansion(to_float(f, {}, 256), ctx).value;
        Real ref;
        Real x = 4 * real_pi() * Real("0.5") * ctx.v;
        Real sr(s);
        mpfr_gamma_inc(ref.backend().data(), sr.backend().data(), x.backend().data(), MPFR_RNDN);
        CHECK(abs(z.re - ref) < Real("1e-70") * (1 + abs(ref)));
    }
}

TEST_CASE("mul uses the sound truncation bound") {
    MFExpansion a(2, Mode::Exact, Rational(10));
    a.add_term(TermKey::q(Rational(1)), Coefficient::integer(1));
    MFExpansion b(0);
    b.add_term(TermKey::q(Rational(-2)), Coefficient::integer(1));
    MFExpansion c = mul(a, b);
    REQUIRE(c.trunc());
    CHECK(*c.trunc() == 8);
    CHECK(c.coeff(TermKey::q(Rational(-1))) == Coefficient::integer(1));
    CHECK_THROWS_AS(mul(a, a), MathError);
}

TEST_CASE("Delta times its inverse is one below the known range") {
    MFExpansion d(12);
    const MFExpansion src = delta(13);
    for (const auto& [k, c] : src.terms()) d.add_term(k, c);
    MFExpansion p = mul(d, inv_delta(13));
    for (long n = 0; n <= 11; ++n)
        CHECK(p.coeff(TermKey::q(Rational(n))) == Coefficient::integer(n == 0 ? 1 : 0));
}

TEST_CASE("decompose reads off holomorphic and nonholomorphic parts") {
    Decomposition d = decompose(inv_delta(5));
    REQUIRE(d.harmonic_shape);
    CHECK(d.space == Space::Hk);
    CHECK(d.principal.coeffs.size() == 1);
    CHECK(d.c_plus.at(Rational(0)) == Coefficient::integer(24));
    CHECK(d.c_minus.empty());

    Decomposition e = decompose(e2star(5));
    REQUIRE(e.harmonic_shape);
    CHECK(e.c_minus.at(Rational(0)) == Coefficient::pi_power(-1).scaled(Rational(-3)));
    CHECK_FALSE(e.in_Hk);

    Decomposition h = decompose(harmonic_eis(2, 5));
    REQUIRE(h.harmonic_shape);
    CHECK(h.in_Hsharp);
    CHECK(h.c_minus.size() == 6);

    Decomposition k = decompose(kronecker_phi(3));
    CHECK_FALSE(k.harmonic_shape);
}

TEST_CASE("decompose and build_harmonic are inverse") {
    for (MFExpansion f : {inv_delta(6), e2star(6), harmonic_eis(2, 6), harmonic_eis(4, 4), incoherent(7, 6),
                          j_invariant(6), coherent(23, 6)}) {
        Decomposition d = decompose(f);
        REQUIRE(d.harmonic_shape);
        MFExpansion g = build_harmonic(f.weight(), d.c_plus, d.c_minus, f.trunc());
        CHECK((g - f).empty());
    }
}

TEST_CASE("Delta(i) matches the Chowla-Selberg value") {
    PrecisionScope scope(256);
    EvalContext ctx;
    ctx.v = 1;
    EvalResult r = eval_expansion(to_float(delta(40), {}, 256), ctx);
    // Delta(i) = Gamma(1/4)^24 / (2^24 pi^18)
    Real g = special::gamma(Real(1) / 4);
    Real ref = pow(g, 24) / (pow(Real(2), 24) * pow(real_pi(), 18));
    CHECK(abs(r.value.re - ref) < Real("1e-60"));
    CHECK(abs(r.value.im) < Real("1e-60"));
}

TEST_CASE("canonicalize is idempotent and truncated respects the tighter bound") {
    MFExpansion f = j_invariant(10);
    CHECK(canonicalize(f) == f);
    MFExpansion g = f.truncated(Rational(4));
    CHECK(*g.trunc() == 4);
    CHECK(g.size() == 6);
    CHECK(f.truncated(Rational(20)).trunc() == f.trunc());
}
