#pragma once

#include "maasslab/eval.hpp"
#include "maasslab/maassops.hpp"

#include <functional>
#include <numeric>
#include <utility>

namespace maasslab {

// Seed functions are real-analytic functions of (u, v) on the upper half plane.
using Seed = std::function<Complex(const Real& u, const Real& v)>;

struct PoincareResult {
    Complex value;
    Real tail{0};  // shell sum at max(|c|,|d|) = C scaled by C / (p - 2)
    long terms = 0;
};

inline long mod_inverse(long d, long c) {
    long t = 0, nt = 1, r = c, nr = ((d % c) + c) % c;
    while (nr != 0) {
        long q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    return t < 0 ? t + c : t;
}

// P_k(seed)(tau) over max(|c|,|d|) <= C; decay is the exponent p with |term| ~ |c tau + d|^{-p}.
inline PoincareResult poincare_sum(long k, const Seed& seed, const Real& u, const Real& v, long C, double decay) {
    if (v <= 0) throw MathError("evaluation needs v > 0");
    if (C < 1) throw MathError("coset cutoff must be >= 1");
    PoincareResult res;
    res.value = seed(u, v);
    res.terms = 1;
    Real shell(0);
    for (long c = 1; c <= C; ++c) {
        for (long d = -C; d <= C; ++d) {
            if (std::gcd(c, d < 0 ? -d : d) != 1) continue;
            const long a = c == 1 ? 0 : mod_inverse(d, c);
            Complex w(c * u + d, c * v);
            Real n2 = norm(w);
            Real gu = Real(a) / c - w.re / (c * n2);
            Real gv = v / n2;
            Complex t = pow(w, -k) * seed(gu, gv);
            res.value += t;
            ++res.terms;
            if (c == C || d == C || d == -C) shell += abs(t);
        }
    }
    res.tail = shell * C / (decay - 2);
    return res;
}

// phi_{k,m} = ((-sgn m)^{1-k} / (1-k)!) y^{-k/2} M_{sgn(m) k/2, (1-k)/2}(y) e(mu), y = 4 pi |m| v
inline Seed whittaker_seed(long k, long m) {
    if (k >= 0) throw MathError("F_{k,m} needs k < 0");
    if (m == 0) throw MathError("F_{k,m} needs m != 0");
    return [k, m](const Real& u, const Real& v) {
        const long am = m < 0 ? -m : m;
        const Real y = 4 * real_pi() * am * v;
        const Real kappa = Real(m > 0 ? k : -k) / 2;
        const Real mu = Real(1 - k) / 2;
        Real sign = (m > 0 && (1 - k) % 2 != 0) ? Real(-1) : Real(1);
        Real val = sign / to_real(factorial(1 - k)) * pow(y, Real(-k) / 2) * special::whittaker_M(kappa, mu, y);
        return expi2pi(m * u) * val;
    };
}

// The same seed as an exact expansion: q^m - Gamma(1-k, -4 pi m v) q^m / (-k)!  (m != 0).
inline MFExpansion whittaker_seed_exact(long k, long m) {
    if (k >= 0) throw MathError("F_{k,m} needs k < 0");
    if (m == 0) throw MathError("F_{k,m} needs m != 0");
    const int kk = static_cast<int>(k);
    MFExpansion f(kk, Mode::Exact);
    f.add_term(TermKey::q(Rational(m)), Coefficient::integer(1));
    auto g = gamma_template(kk, 1 - kk, Rational(m), Mode::Exact, 1, kDefaultPrecisionBits);
    if (!g) throw MathError("gamma template not representable");
    f -= g->scaled(1 / factorial(-k));
    return f;
}

inline PoincareResult poincare_eval(long k, long m, const EvalContext& ctx) {
    PrecisionScope scope(ctx.prec);
    return poincare_sum(k, whittaker_seed(k, m), ctx.u, ctx.v, ctx.cutoff, static_cast<double>(2 - k));
}

// ---- sesquiharmonic seeds --------------------------------------------------

// S_k(y) = sum_{n>=1} y^n / (n (k)_n)
inline Real sesqui_series(long k, const Real& y) {
    const Real eps = real_epsilon();
    Real term(1), sum(0);
    for (long n = 1; n < 100000; ++n) {
        term *= y / (k + n - 1);
        Real t = term / n;
        sum += t;
        if (Real(n) > y && t < eps * abs(sum)) break;
    }
    return sum;
}

// L^j psi_{k,m} = q^m H_j(v) for m > 0:
//   H_0 = log(4 pi m v) + S_k(4 pi m v),
//   H_j = (j-1)! v^j + sum_n b_n (n)_j v^{n+j},  b_n = (4 pi m)^n / (n (k)_n).
inline Real sesqui_profile(long k, long m, int j, const Real& v) {
    const Real lam = 4 * real_pi() * m;
    if (j == 0) return log(lam * v) + sesqui_series(k, lam * v);
    const Real eps = real_epsilon();
    Real h = to_real(factorial(j - 1)) * pow(v, Real(j));
    Real b(1);  // (lam v)^n / (k)_n
    Real sum(0);
    for (long n = 1; n < 100000; ++n) {
        b *= lam * v / (k + n - 1);
        Real rising(1);
        for (int i = 0; i < j; ++i) rising *= n + i;
        Real t = b / n * rising;
        sum += t;
        if (Real(n) > lam * v + j && t < eps * abs(sum)) break;
    }
    return h + pow(v, Real(j)) * sum;
}

inline Seed sesqui_seed(long k, long m, int lowerings = 0) {
    if (m <= 0) throw MathError("sesquiharmonic seed implemented for m > 0");
    return [k, m, lowerings](const Real& u, const Real& v) {
        Real decay = exp(-2 * real_pi() * m * v);
        return expi2pi(m * u) * (decay * sesqui_profile(k, m, lowerings, v));
    };
}

// M_{k,s}(y) = y^{-k/2} M_{k/2, s-1/2}(y) for y > 0
inline Real whittaker_script_M(long k, const Real& s, const Real& y) {
    return pow(y, Real(-k) / 2) * special::whittaker_M(Real(k) / 2, s - Real(0.5), y);
}

// psi_{k,m} through a central difference in s with step h = 2^{-P/4}, fourth order.
inline Seed sesqui_seed_fd(long k, long m) {
    if (m <= 0) throw MathError("sesquiharmonic seed implemented for m > 0");
    return [k, m](const Real& u, const Real& v) {
        const Real y = 4 * real_pi() * m * v;
        const Real s0 = Real(k) / 2;
        const Real h = ldexp(Real(1), -static_cast<int>(current_precision_bits() / 4));
        Real d = (8 * (whittaker_script_M(k, s0 + h, y) - whittaker_script_M(k, s0 - h, y)) -
                  (whittaker_script_M(k, s0 + 2 * h, y) - whittaker_script_M(k, s0 - 2 * h, y))) /
                 (12 * h);
        return expi2pi(m * u) * d;
    };
}

// xi_k psi_{k,m} = v^{k-2} conj(L psi) = v^k conj(q^m) H_1(v)
inline Seed sesqui_xi_seed(long k, long m) {
    return [k, m](const Real& u, const Real& v) {
        Real decay = exp(-2 * real_pi() * m * v);
        return expi2pi(-m * u) * (pow(v, Real(k - 2)) * decay * sesqui_profile(k, m, 1, v));
    };
}

inline PoincareResult sesqui_poincare_eval(long k, long m, const EvalContext& ctx, bool finite_difference = false) {
    PrecisionScope scope(ctx.prec);
    Seed s = finite_difference ? sesqui_seed_fd(k, m) : sesqui_seed(k, m);
    return poincare_sum(k, s, ctx.u, ctx.v, ctx.cutoff, static_cast<double>(k));
}

// L^j F_{k,m} = P_{k-2j}(L^j psi_{k,m}) for j >= 1.
inline PoincareResult sesqui_lowered_eval(long k, long m, int j, const EvalContext& ctx) {
    if (j < 1) throw MathError("lowering count must be >= 1");
    PrecisionScope scope(ctx.prec);
    const long w = k - 2 * j;
    return poincare_sum(w, sesqui_seed(k, m, j), ctx.u, ctx.v, ctx.cutoff, static_cast<double>(w + 2 * j));
}

inline PoincareResult sesqui_xi_eval(long k, long m, const EvalContext& ctx) {
    PrecisionScope scope(ctx.prec);
    const long w = 2 - k;
    return poincare_sum(w, sesqui_xi_seed(k, m), ctx.u, ctx.v, ctx.cutoff, static_cast<double>(k));
}

// Numeric weight-k Laplacian of g at (u, v) by 5-point stencils in u and v.
template <class G>
Complex numeric_laplacian(long k, G&& g, const Real& u, const Real& v, const Real& h) {
    auto d1 = [&](auto f) { return (Real(8) * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12 * h); };
    auto d2 = [&](auto f) {
        return (Real(16) * (f(h) + f(-h)) - (f(2 * h) + f(-2 * h)) - Real(30) * f(Real(0))) / (12 * h * h);
    };
    auto along_u = [&](const Real& t) { return g(u + t, v); };
    auto along_v = [&](const Real& t) { return g(u, v + t); };
    Complex fu = d1(along_u), fv = d1(along_v), fuu = d2(along_u), fvv = d2(along_v);
    Complex ik(Real(0), Real(k));
    return -(v * v) * (fuu + fvv) + ik * v * (fu + Complex::I() * fv);
}

}  // namespace maasslab
