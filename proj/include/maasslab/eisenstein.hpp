#pragma once

#include "maasslab/eval.hpp"

#include <numeric>

namespace maasslab {

// E_{r,s}(tau) = sum over Gamma_inf \ SL2(Z) of (c tau + d)^{-r} Im(gamma tau)^beta,
// alpha = (s+1+r)/2, beta = (s+1-r)/2.
struct EisParams {
    long r;
    Real s, alpha, beta;
};

inline EisParams eis_params(long r, const Real& s) {
    if (r % 2 != 0) throw MathError("E_{r,s} needs even r");
    if (s <= 1) throw MathError("E_{r,s} needs Re(s) > 1");
    return {r, s, (s + 1 + r) / 2, (s + 1 - r) / 2};
}

inline Real sign_i_power(long r) { return (r / 2) % 2 == 0 ? Real(1) : Real(-1); }

struct ModeJet {
    Real g{0}, d1{0}, d2{0};
};

namespace detail {

inline ModeJet jet_mul(const ModeJet& a, const ModeJet& b) {
    return {a.g * b.g, a.d1 * b.g + a.g * b.d1, a.d2 * b.g + 2 * a.d1 * b.d1 + a.g * b.d2};
}

inline ModeJet vpow_jet(const Real& p, const Real& v) {
    Real x = pow(v, p);
    return {x, p * x / v, p * (p - 1) * x / (v * v)};
}

}  // namespace detail

// Coefficient function G_m(v) of e(mu) in the Fourier expansion of E_{r,s}, with two v-derivatives.
//   m = 0: v^beta + c(s) v^{beta-s}
//   m > 0: i^r (2pi)^{s+1} / (Gamma(alpha) zeta(s+1)) sigma_s(m) v^beta Psi(beta, s+1; 4 pi m v) e^{-2 pi m v}
//   m < 0: same with 1/Gamma(beta) and Psi(alpha, ...)
inline ModeJet eis_mode(long r, const Real& s, long m, const Real& v) {
    const EisParams P = eis_params(r, s);
    const Real pi = real_pi();
    const Real zs1 = special::zeta(s + 1);
    if (m == 0) {
        Real c = 2 * pi * sign_i_power(r) * pow(Real(2), -s) * special::gamma(s) * special::zeta(s) *
                 special::rgamma(P.alpha) * special::rgamma(P.beta) / zs1;
        ModeJet a = detail::vpow_jet(P.beta, v), b = detail::vpow_jet(P.beta - s, v);
        return {a.g + c * b.g, a.d1 + c * b.d1, a.d2 + c * b.d2};
    }
    const long am = m < 0 ? -m : m;
    const Real& a = m > 0 ? P.beta : P.alpha;
    const Real K = sign_i_power(r) * pow(2 * pi, s + 1) * special::rgamma(m > 0 ? P.alpha : P.beta) / zs1 *
                   special::sigma_real(am, s);
    if (K == 0) return {};
    const Real lam = 4 * pi * am;
    ModeJet psi;
    if (a == 0) {
        psi = {Real(1), Real(0), Real(0)};
    } else {
        auto J = special::psi_chf_jet(a, s + 1, lam * v);
        psi = {J.value, lam * J.d1, lam * lam * J.d2};
    }
    const Real e = exp(-lam * v / 2);
    ModeJet dec{e, -lam / 2 * e, lam * lam / 4 * e};
    ModeJet g = detail::jet_mul(detail::jet_mul(detail::vpow_jet(P.beta, v), psi), dec);
    return {K * g.g, K * g.d1, K * g.d2};
}

inline EvalResult eis_fourier_eval(long r, const Real& s, const EvalContext& ctx) {
    PrecisionScope scope(ctx.prec);
    if (ctx.v <= 0) throw MathError("evaluation needs v > 0");
    EvalResult res;
    res.value = Complex(eis_mode(r, s, 0, ctx.v).g);
    Real last(0);
    for (long m = 1; m <= ctx.trunc; ++m) {
        Real gp = eis_mode(r, s, m, ctx.v).g, gm = eis_mode(r, s, -m, ctx.v).g;
        Complex e = expi2pi(m * ctx.u);
        res.value += e * gp + conj(e) * gm;
        last = abs(gp) + abs(gm);
    }
    Real x = exp(-2 * real_pi() * ctx.v);
    res.tail = last * x / (1 - x);
    return res;
}

// ---- coset sum -------------------------------------------------------------

struct CosetResult {
    Complex value;       // box rows completed in d, plus the c > C rows
    Complex box;         // plain sum over max(|c|,|d|) <= C
    Real tail{0};        // estimate of what the completed value still misses
    long pairs = 0;
};

namespace detail {

struct ArithTables {
    std::vector<int> mu;
    std::vector<long> phi;
    explicit ArithTables(long n) : mu(n + 1, 1), phi(n + 1) {
        std::iota(phi.begin(), phi.end(), 0L);
        std::vector<bool> composite(n + 1, false);
        for (long p = 2; p <= n; ++p) {
            if (composite[p]) continue;
            for (long q = p; q <= n; q += p) {
                if (q > p) composite[q] = true;
                mu[q] = -mu[q];
                phi[q] -= phi[q] / p;
            }
            for (long q = p * p; q <= n; q += p * p) mu[q] = 0;
        }
    }
};

// c_c(n) = sum_{e | gcd(c, n)} mu(c/e) e
inline long ramanujan_sum(long c, long n, const ArithTables& T) {
    long g = std::gcd(c, n < 0 ? -n : n);
    if (n == 0) g = c;
    long s = 0;
    for (long e = 1; e <= g; ++e)
        if (g % e == 0) s += T.mu[c / e] * e;
    return s;
}

// sum_{t >= N} t^{-sigma-j} for even j <= J and 1 <= N <= Nmax
class HurwitzTable {
public:
    HurwitzTable(const Real& sigma, int J, long Nmax) : J_(J), Nmax_(Nmax), h_((J / 2 + 1) * (Nmax + 1)) {
        for (int j = 0; j <= J; j += 2) at(j, Nmax) = special::hurwitz_zeta(sigma + j, Real(Nmax));
        for (long N = Nmax - 1; N >= 1; --N) {
            Real p = pow(Real(N), -sigma);
            const Real inv2 = Real(1) / (Real(N) * N);
            for (int j = 0; j <= J; j += 2) {
                at(j, N) = at(j, N + 1) + p;
                p *= inv2;
            }
        }
    }
    const Real& operator()(int j, long N) const { return h_[(j / 2) * (Nmax_ + 1) + N]; }
    int max_j() const { return J_; }
    long max_n() const { return Nmax_; }

private:
    Real& at(int j, long N) { return h_[(j / 2) * (Nmax_ + 1) + N]; }
    int J_;
    long Nmax_;
    std::vector<Real> h_;
};

// Homogeneous kernel F(w) = w^{-r} |w|^{-2 beta}.
class EisKernel {
public:
    EisKernel(long r, const Real& beta) : r_(r), beta_(beta) {
        Real b2 = 2 * beta;
        half_integral_ = b2 == floor(b2) && b2 >= 0;
        if (half_integral_) twice_ = static_cast<long>(b2);
    }

    Complex operator()(const Complex& w) const {
        Real n2 = norm(w);
        Real m;
        if (half_integral_) {
            m = Real(1);
            for (long i = 0; i < twice_ / 2; ++i) m *= n2;
            if (twice_ % 2) m *= sqrt(n2);
            m = 1 / m;
        } else {
            m = exp(-beta_ * log(n2));
        }
        if (r_ == 0) return Complex(m);
        return pow(w, -r_) * m;
    }

private:
    long r_;
    Real beta_;
    bool half_integral_ = false;
    long twice_ = 0;
};

// sum_{|t| >= N} F(z + t) for |z| < N/2 via the binomial expansion of (1+zy)^{-r-beta}(1+zbar y)^{-beta}.
inline Complex two_sided_tail(const Complex& z, long N, long r, const Real& beta, const HurwitzTable& H,
                              const Real& tol) {
    const Real a = r + beta, b = beta;
    const Real x = z.re, n2 = norm(z);
    const Complex lin = Complex(a) * z + Complex(b) * conj(z);
    Complex gprev(0), g(1), sum(0);
    int small = 0;
    for (int j = 0; j <= H.max_j(); ++j) {
        if (j % 2 == 0) {
            Complex t = g * H(j, N);
            sum += t;
            if (abs(t) < tol) {
                if (++small >= 2) break;
            } else {
                small = 0;
            }
        }
        Complex next = -((Complex(2 * x * j) + lin) * g + Complex(n2 * (j - 1 + a + b)) * gprev) / Real(j + 1);
        gprev = g;
        g = next;
    }
    return sum * Real(2);
}

}  // namespace detail

inline CosetResult eis_coset_sum(long r, const Real& s, const EvalContext& ctx) {
    PrecisionScope scope(ctx.prec);
    const EisParams P = eis_params(r, s);
    if (ctx.v <= 0) throw MathError("evaluation needs v > 0");
    const long C = ctx.cutoff;
    if (C < 1) throw MathError("coset cutoff must be >= 1");
    const Real u = ctx.u, v = ctx.v, sigma = s + 1;
    const Real tau_abs = sqrt(u * u + v * v);
    const Real pi = real_pi();
    const Real vb = pow(v, P.beta);
    const detail::EisKernel F(r, P.beta);
    const detail::ArithTables T(C);

    auto row_width = [&](long c) {
        long need = static_cast<long>(ceil(2 * c * tau_abs)) + 1;
        return std::max(C, need);
    };
    const long K0 = static_cast<long>(ceil(2 * (tau_abs + 1))) + 8;
    const long Nmax = std::max(row_width(C), K0) + 1;
    const Real tol = ctx.tol;
    const int J = static_cast<int>(-log(tol) / log(Real(2))) + 24;
    const detail::HurwitzTable H(sigma, J + (J % 2), Nmax);

    CosetResult res;
    Complex rows(0), box(0);
    for (long c = 1; c <= C; ++c) {
        const long D = row_width(c);
        const Real cu = c * u, cv = c * v;
        for (long d = -D; d <= D; ++d) {
            if (std::gcd(c, d < 0 ? -d : d) != 1) continue;
            Complex val = F(Complex(cu + d, cv));
            rows += val;
            if ((d < 0 ? -d : d) <= C) box += val;
            ++res.pairs;
        }
        // |d| > D with gcd(c, d) = 1, by Moebius inversion over e | c
        for (long e = 1; e <= c; ++e) {
            if (c % e != 0 || T.mu[e] == 0) continue;
            const long cp = c / e;
            Complex z(cp * u, cp * v);
            Complex t = detail::two_sided_tail(z, D / e + 1, r, P.beta, H, tol);
            rows += t * (Real(T.mu[e]) * pow(Real(e), -sigma));
        }
    }

    // Rows c > C through the u-Fourier modes of Q(x) = sum_k F(x + iv + k):
    // sum_{c > C} c^{-sigma} sum_{a mod c}^* Q(u + a/c) = sum_n Qhat(n) e(nu) sum_{c > C} c_c(n) c^{-sigma}.
    const long modes = static_cast<long>(ceil(-log(tol) / (2 * pi * v))) + 1;
    const long K = 2 * modes + static_cast<long>(ceil(-log(tol) / (2 * pi * v))) + 4;
    std::vector<Complex> samples(K);
    for (long j = 0; j < K; ++j) {
        const Real x = Real(j) / K;
        Complex q(0);
        for (long t = -K0; t <= K0; ++t) q += F(Complex(x + t, v));
        q += detail::two_sided_tail(Complex(x, v), K0 + 1, r, P.beta, H, tol);
        samples[j] = q;
    }
    const Real zs1 = special::zeta(sigma);
    Complex high(0);
    Real last_mode(0);
    for (long n = -modes; n <= modes; ++n) {
        Complex qhat(0);
        for (long j = 0; j < K; ++j) qhat += samples[j] * expi2pi(-Real(n * j) / K);
        qhat /= Real(K);
        const long an = n < 0 ? -n : n;
        Real full = n == 0 ? special::zeta(s) / zs1 : special::sigma_real(an, -s) / zs1;
        Real partial(0);
        for (long c = 1; c <= C; ++c) {
            long cc = n == 0 ? T.phi[c] : detail::ramanujan_sum(c, n, T);
            if (cc != 0) partial += cc * pow(Real(c), -sigma);
        }
        high += qhat * expi2pi(n * u) * (full - partial);
        if (an == modes) last_mode += abs(qhat) * abs(full - partial);
    }

    res.value = vb * (Complex(1) + rows + high);
    res.box = vb * (Complex(1) + box);
    res.tail = vb * (last_mode + tol * (1 + abs(rows)));
    return res;
}

}  // namespace maasslab
