#pragma once

#include "maasslab/mfexp.hpp"

#include <map>
#include <string>
#include <vector>

namespace maasslab {

// sigma_e(n) = sum_{d | n} d^e for any integer e.
inline Rational sigma(long n, long e) {
    Rational s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += rational_pow(Rational(d), e);
    return s;
}

namespace series {

using Poly = std::vector<Rational>;  // coefficients of q^0 .. q^N

inline Poly mul(const Poly& a, const Poly& b, std::size_t N) {
    Poly c(N + 1, Rational(0));
    for (std::size_t i = 0; i < a.size() && i <= N; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= N; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

inline Poly inverse(const Poly& a, std::size_t N) {
    if (a.empty() || a[0] == 0) throw MathError("series inverse needs nonzero constant term");
    Poly b(N + 1, Rational(0));
    b[0] = 1 / a[0];
    for (std::size_t n = 1; n <= N; ++n) {
        Rational s = 0;
        for (std::size_t i = 1; i <= n && i < a.size(); ++i) s += a[i] * b[n - i];
        b[n] = -s / a[0];
    }
    return b;
}

// prod_{n>=1} (1 - q^n)^24 up to q^N
inline Poly eta24_product(std::size_t N) {
    Poly p(N + 1, Rational(0));
    p[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) {
        for (int rep = 0; rep < 24; ++rep)
            for (std::size_t i = N; i >= n; --i) p[i] -= p[i - n];
    }
    return p;
}

inline Poly eisenstein(int k, std::size_t N) {
    auto B = bernoulli_numbers(k);
    Rational f = -2 * Rational(k) / B[k];
    Poly e(N + 1, Rational(0));
    e[0] = 1;
    for (std::size_t n = 1; n <= N; ++n) e[n] = f * sigma(static_cast<long>(n), k - 1);
    return e;
}

}  // namespace series

inline long trunc_floor(const Rational& M) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), M.get_num_mpz_t(), M.get_den_mpz_t());
    return f.get_si();
}

inline MFExpansion from_q_series(int weight, const series::Poly& p, long shift, const Rational& M) {
    MFExpansion f(weight, Mode::Exact, M);
    for (std::size_t i = 0; i < p.size(); ++i) f.add_term(TermKey::q(Rational(static_cast<long>(i) + shift)),
                                                          Coefficient::rational(p[i]));
    return f;
}

inline MFExpansion delta(long M) {
    if (M < 1) throw MathError("truncation must be >= 1");
    auto p = series::eta24_product(static_cast<std::size_t>(M - 1));
    return from_q_series(12, p, 1, Rational(M));
}

inline MFExpansion inv_delta(long M) {
    if (M < 1) throw MathError("truncation must be >= 1");
    auto N = static_cast<std::size_t>(M + 1);
    auto p = series::inverse(series::eta24_product(N), N);
    return from_q_series(-12, p, -1, Rational(M));
}

inline MFExpansion eis_hol(int k, long M) {
    if (k < 4 || k % 2 != 0) throw MathError("eis_hol needs even k >= 4");
    if (M < 1) throw MathError("truncation must be >= 1");
    return from_q_series(k, series::eisenstein(k, static_cast<std::size_t>(M)), 0, Rational(M));
}

inline MFExpansion j_invariant(long M) {
    if (M < 1) throw MathError("truncation must be >= 1");
    auto N = static_cast<std::size_t>(M + 1);
    auto e4 = series::eisenstein(4, N);
    auto num = series::mul(series::mul(e4, e4, N), e4, N);
    auto p = series::mul(num, series::inverse(series::eta24_product(N), N), N);
    return from_q_series(0, p, -1, Rational(M));
}

// 1 - 24 sum sigma_1(n) q^n - (3/pi) v^{-1}
inline MFExpansion e2star(long M) {
    if (M < 1) throw MathError("truncation must be >= 1");
    MFExpansion f(2, Mode::Exact, Rational(M));
    f.add_term(TermKey{}, Coefficient::integer(1));
    for (long n = 1; n <= M; ++n) f.add_term(TermKey::q(Rational(n)), Coefficient::rational(-24 * sigma(n, 1)));
    f.add_term(TermKey::vpow(-1), Coefficient::pi_power(-1).scaled(Rational(-3)));
    return f;
}

// E_{k,1-k} at k = -l: the harmonic Eisenstein series of weight -l.
inline MFExpansion harmonic_eis(int l, long M) {
    if (l < 2 || l % 2 != 0) throw MathError("harmonic_eis needs even l >= 2");
    if (M < 1) throw MathError("truncation must be >= 1");
    // A = 2 pi 2^{-l-1} i^l / zeta(l+2)
    Coefficient A = Coefficient::pi_power(1).scaled(2 * rational_pow(Rational(2), -l - 1)) * i_power(l) *
                    zeta_value(l + 2).inverse_monomial();
    MFExpansion f(-l, Mode::Exact, Rational(M));
    f.add_term(TermKey::vpow(l + 1), Coefficient::integer(1));
    f.add_term(TermKey{}, A * zeta_value(l + 1));
    Coefficient B = A.scaled(1 / factorial(l));
    for (long m = 1; m <= M; ++m) {
        Rational s = sigma(m, -l - 1);
        f.add_term(TermKey::q(Rational(m)), A.scaled(s));
        TermKey g = TermKey::q(Rational(-m));
        g.gamma = GammaAtom{l + 1, Rational(m)};
        f.add_term(g, B.scaled(s));
    }
    return f;
}

// ---- imaginary quadratic data ----------------------------------------------

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void check_disc(long D) {
    if (D <= 3 || D % 4 != 3 || !is_prime(D)) throw MathError("D must be a prime > 3 with D = 3 mod 4");
}

// Kronecker symbol (-D / d)
inline int chi_minus_D(long D, long d) {
    mpz_class b(d);
    return mpz_si_kronecker(-D, b.get_mpz_t());
}

// number of integral ideals of norm n in Q(sqrt(-D))
inline long ideal_count(long D, long n) {
    check_disc(D);
    if (n < 1) return 0;
    long r = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) r += chi_minus_D(D, d);
    return r;
}

// reduced forms (a,b,c) of discriminant -D: |b| <= a <= c, b >= 0 if |b| = a or a = c
inline long class_number(long D) {
    check_disc(D);
    long h = 0;
    for (long a = 1; 3 * a * a <= D; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b + D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++h;
        }
    }
    return h;
}

inline MFExpansion coherent(long D, long M) {
    check_disc(D);
    MFExpansion f(1, Mode::Exact, Rational(M));
    f.add_term(TermKey{}, Coefficient::integer(class_number(D)));
    for (long n = 1; n <= M; ++n) f.add_term(TermKey::q(Rational(n)), Coefficient::integer(2 * ideal_count(D, n)));
    return f;
}

inline int p_adic_order(long n, long p) {
    int k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

inline MFExpansion incoherent(long D, long M) {
    check_disc(D);
    const long h = class_number(D);
    MFExpansion f(1, Mode::Exact, Rational(M));
    const Coefficient logD = Coefficient::symbol(Symbol::log(D));
    f.add_term(TermKey{}, logD.scaled(Rational(h)) +
                              Coefficient::symbol(Symbol::lambda_ratio(D)).scaled(Rational(h) / 2));
    f.add_term(TermKey::log_v(), Coefficient::integer(h));
    for (long n = 1; n <= M; ++n) {
        Coefficient a = logD.scaled(Rational(-2 * (p_adic_order(n, D) + 1) * ideal_count(D, n)));
        for (long p = 2; p <= n; ++p) {
            if (p == D || !is_prime(p) || n % p != 0) continue;
            long rho = ideal_count(D, n / p);
            if (rho != 0)
                a += Coefficient::symbol(Symbol::log(p)).scaled(Rational(-2 * (p_adic_order(n, p) + 1) * rho));
        }
        f.add_term(TermKey::q(Rational(n)), a);
        TermKey g = TermKey::q(Rational(-n));
        g.gamma = GammaAtom{0, Rational(n)};
        f.add_term(g, Coefficient::integer(-2 * ideal_count(D, n)));
    }
    return f;
}

// -(1/6) log(|Delta|^2 v^12) = (2 pi/3) v + 4 sum sigma_{-1}(n) (q^n + qbar^n) - 2 log v
inline MFExpansion kronecker_phi(long M) {
    if (M < 1) throw MathError("truncation must be >= 1");
    MFExpansion f(0, Mode::Exact, Rational(M));
    f.add_term(TermKey::vpow(1), Coefficient::pi_power(1).scaled(Rational(2, 3)));
    f.add_term(TermKey::log_v(), Coefficient::integer(-2));
    for (long n = 1; n <= M; ++n) {
        Coefficient c = Coefficient::rational(4 * sigma(n, -1));
        f.add_term(TermKey::q(Rational(n)), c);
        f.add_term(TermKey::qbar(Rational(n)), c);
    }
    return f;
}

// ---- registry --------------------------------------------------------------

struct FormSpec {
    std::string name;
    std::map<std::string, long> params;
    long trunc = 20;
};

inline long param(const FormSpec& s, const std::string& key) {
    auto it = s.params.find(key);
    if (it == s.params.end()) throw MathError("form '" + s.name + "' needs parameter '" + key + "'");
    return it->second;
}

inline std::vector<std::string> catalog_names() {
    return {"delta", "inv_delta", "j", "eis_hol", "e2star", "harmonic_eis", "coherent", "incoherent", "kronecker_phi"};
}

inline MFExpansion build_form(const FormSpec& s) {
    const long M = s.trunc;
    if (s.name == "delta") return delta(M);
    if (s.name == "inv_delta") return inv_delta(M);
    if (s.name == "j") return j_invariant(M);
    if (s.name == "eis_hol") return eis_hol(static_cast<int>(param(s, "k")), M);
    if (s.name == "e2star") return e2star(M);
    if (s.name == "harmonic_eis") return harmonic_eis(static_cast<int>(param(s, "l")), M);
    if (s.name == "coherent") return coherent(param(s, "D"), M);
    if (s.name == "incoherent") return incoherent(param(s, "D"), M);
    if (s.name == "kronecker_phi") return kronecker_phi(M);
    throw MathError("unknown form '" + s.name + "'");
}

}  // namespace maasslab
