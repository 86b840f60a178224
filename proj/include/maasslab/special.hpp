#pragma once

#include "maasslab/coeffring.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace maasslab::special {

using boost::multiprecision::pow;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::sinh;
using boost::multiprecision::cosh;

inline bool is_nonpositive_integer(const Real& a) { return a <= 0 && a == floor(a); }

inline Real gamma(const Real& a) {
    Real r;
    mpfr_gamma(r.backend().data(), a.backend().data(), MPFR_RNDN);
    return r;
}

// 1/Gamma(a), zero at the poles.
inline Real rgamma(const Real& a) {
    if (is_nonpositive_integer(a)) return Real(0);
    return 1 / gamma(a);
}

inline Real zeta(const Real& s) {
    Real r;
    mpfr_zeta(r.backend().data(), s.backend().data(), MPFR_RNDN);
    return r;
}

// Gamma(s, x) for x > 0, any real s.
inline Real incomplete_gamma(const Real& s, const Real& x) {
    if (x <= 0) throw MathError("incomplete_gamma needs x > 0 here");
    Real r;
    mpfr_gamma_inc(r.backend().data(), s.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

// Ei(x) for x != 0
inline Real exp_integral_ei(const Real& x) {
    Real r;
    mpfr_eint(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

// Re Gamma(s, x) for integer s and real x != 0 (principal branch for x < 0).
inline Real re_incomplete_gamma_int(long s, const Real& x) {
    if (x > 0) return incomplete_gamma(Real(s), x);
    if (s >= 1) {
        // (s-1)! e^{-x} sum_{j<s} x^j/j!
        Real term(1), sum(1);
        for (long j = 1; j < s; ++j) {
            term *= x / j;
            sum += term;
        }
        return to_real(factorial(s - 1)) * exp(-x) * sum;
    }
    // Re Gamma(0, -y) = -Ei(y);  Gamma(t,x) = (Gamma(t+1,x) - x^t e^{-x}) / t
    Real g = -exp_integral_ei(-x);
    for (long t = -1; t >= s; --t) g = (g - pow(x, Real(t)) * exp(-x)) / t;
    return g;
}

// W_k(x) = Re Gamma(1-k, -2x)
inline Real W(long k, const Real& x) {
    if (x == 0) throw MathError("W_k undefined at 0");
    return re_incomplete_gamma_int(1 - k, -2 * x);
}

// beta_k(x) = W_k(-x/2)
inline Real beta(long k, const Real& x) { return W(k, -x / 2); }

// 1F1(a; b; x) by its power series; b must not be a nonpositive integer.
inline Real hyp1f1(const Real& a, const Real& b, const Real& x) {
    if (is_nonpositive_integer(b)) throw MathError("1F1 with b a nonpositive integer");
    const Real eps = real_epsilon();
    Real term(1), sum(1);
    for (long n = 0; n < 100000; ++n) {
        term *= (a + n) / (b + n) * x / (n + 1);
        sum += term;
        if (term == 0) break;
        if (n > 2 && abs(term) < eps * abs(sum) && Real(n) > abs(a) && Real(n) > x) break;
    }
    return sum;
}

// M_{kappa,mu}(y) = e^{-y/2} y^{mu+1/2} 1F1(mu - kappa + 1/2; 1 + 2 mu; y), y > 0
inline Real whittaker_M(const Real& kappa, const Real& mu, const Real& y) {
    if (y <= 0) throw MathError("whittaker_M needs y > 0");
    return exp(-y / 2) * pow(y, mu + Real(0.5)) * hyp1f1(mu - kappa + Real(0.5), 1 + 2 * mu, y);
}

// ---- Bernoulli numbers as reals --------------------------------------------

inline const std::vector<Rational>& bernoulli_table(int n) {
    static std::mutex mu;
    static std::vector<Rational> table;
    std::lock_guard lock(mu);
    if (static_cast<int>(table.size()) <= n) table = bernoulli_numbers(std::max(n, 2 * static_cast<int>(table.size()) + 16));
    return table;
}

// zeta(s, a) = sum_{n>=0} (n+a)^{-s}, s > 1, a > 0, by Euler-Maclaurin after an explicit shift.
inline Real hurwitz_zeta(const Real& s, const Real& a) {
    if (s <= 1) throw MathError("hurwitz_zeta needs s > 1");
    if (a <= 0) throw MathError("hurwitz_zeta needs a > 0");
    const unsigned P = current_precision_bits();
    const int K = static_cast<int>(P / 5) + 4;
    // remainder ~ ((s + 2K) / (2 pi N))^{2K}; take N >= s + 2K
    const double need = static_cast<double>(s) + 2.0 * K;
    long shift = 0;
    if (static_cast<double>(a) < need) shift = static_cast<long>(std::ceil(need - static_cast<double>(a)));
    Real sum(0);
    for (long n = 0; n < shift; ++n) sum += pow(a + n, -s);
    const Real N = a + shift;
    const Real Ns = pow(N, -s);
    sum += N * Ns / (s - 1) + Ns / 2;
    const auto& B = bernoulli_table(2 * K);
    Real rising = s;           // (s)_{2j-1}
    Real npow = Ns / N;        // N^{-s-2j+1}
    Real fact(2);              // (2j)!
    for (int j = 1; j <= K; ++j) {
        Real t = to_real(B[2 * j]) / fact * rising * npow;
        sum += t;
        if (abs(t) < real_epsilon() * abs(sum)) break;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        npow /= N * N;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum;
}

// ---- double-exponential quadrature on (0, inf) ------------------------------

// x = exp(pi/2 sinh t): nested trapezoid levels with step h0 / 2^L.
class ExpSinhRule {
public:
    struct Node {
        Real x, w, emx, logx;  // abscissa, weight (times step), e^{-x}, log x
    };

    static std::shared_ptr<const ExpSinhRule> get(unsigned prec) {
        static std::mutex mu;
        static std::map<unsigned, std::shared_ptr<const ExpSinhRule>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[prec];
        if (!slot) slot = std::make_shared<const ExpSinhRule>(prec);
        return slot;
    }

    explicit ExpSinhRule(unsigned prec) : prec_(prec) {
        PrecisionScope scope(prec);
        const Real halfpi = real_pi() / 2;
        const double lnmax = prec * 0.6931471805599453 + 40;
        // right end: e^{-x} x^{12} below 2^{-P}; left end: x cosh t below 2^{-P}
        const double xmax = 1.2 * lnmax + 60;
        const double tmax = std::asinh(std::log(xmax) / (M_PI / 2));
        const double tmin = -std::asinh(lnmax / (M_PI / 2));
        for (int L = 0; L <= kMaxLevel; ++L) {
            std::vector<Node> lvl;
            const double h = h0_ / static_cast<double>(1 << L);
            const long kmin = static_cast<long>(std::floor(tmin / h)), kmax = static_cast<long>(std::ceil(tmax / h));
            for (long k = kmin; k <= kmax; ++k) {
                if (L > 0 && k % 2 == 0) continue;
                Real t = Real(h0_) * k / (1 << L);
                Real sh = halfpi * sinh(t);
                Real x = exp(sh);
                Real w = halfpi * cosh(t) * x;
                lvl.push_back({x, w, exp(-x), sh});
            }
            levels_.push_back(std::move(lvl));
        }
    }

    unsigned precision() const { return prec_; }

    // f(node, out) must overwrite out[0..dim).
    template <class F>
    std::vector<Real> integrate(F&& f, std::size_t dim, Real* err_out = nullptr) const {
        std::vector<Real> acc(dim, Real(0)), out(dim), prev;
        const Real tol = sqrt(real_epsilon());
        Real err(0);
        for (int L = 0; L <= kMaxLevel; ++L) {
            for (const Node& n : levels_[L]) {
                f(n, out);
                for (std::size_t i = 0; i < dim; ++i) acc[i] += n.w * out[i];
            }
            const Real h = Real(h0_) / (1 << L);
            std::vector<Real> cur(dim);
            for (std::size_t i = 0; i < dim; ++i) cur[i] = acc[i] * h;
            if (L >= 2) {
                Real scale(0), diff(0);
                for (std::size_t i = 0; i < dim; ++i) {
                    scale = std::max(scale, Real(abs(cur[i])));
                    diff = std::max(diff, Real(abs(cur[i] - prev[i])));
                }
                err = diff;
                if (diff <= tol * scale || scale == 0) {
                    if (err_out) *err_out = diff * diff / (scale == 0 ? Real(1) : scale);
                    return cur;
                }
            }
            prev = std::move(cur);
        }
        if (err_out) *err_out = err;
        return prev;
    }

private:
    static constexpr int kMaxLevel = 8;
    static constexpr double h0_ = 0.5;
    unsigned prec_;
    std::vector<std::vector<Node>> levels_;
};

// ---- confluent hypergeometric Psi = Tricomi U --------------------------------

// Psi(a, b; z) for real z > 0. Integration by parts N times (a + N in [1, 2)) continues the
// integral representation to all real a; with t = x/z,
// U = (-1)^N / Gamma(a+N) z^{-(a+N)} int x^{a+N-1} e^{-x} sum_j C(N,j) (-z)^{N-j} c_(j) (1+x/z)^{c-j} dx,
// c = b - a - 1 and c_(j) the falling factorial.
inline std::vector<Real> psi_chf_many(const std::vector<std::pair<Real, Real>>& ab, const Real& z) {
    if (z <= 0) throw MathError("psi_chf needs z > 0");
    const std::size_t n = ab.size();
    std::vector<Real> result(n, Real(0));
    struct Job {
        std::size_t slot;
        Real p, c;
        long N;
        std::vector<Real> coef;  // C(N,j) (-z)^{N-j} c_(j)
        Real prefactor;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < n; ++i) {
        const Real& a = ab[i].first;
        const Real& b = ab[i].second;
        if (a == 0) {
            result[i] = 1;
            continue;
        }
        long N = 0;
        if (a < 1) {
            N = static_cast<long>(ceil(1 - a));
            if (a + N >= 2) N -= 1;
        }
        Job job{i, a + N - 1, b - a - 1, N, {}, Real(0)};
        Real falling(1);
        for (long j = 0; j <= N; ++j) {
            job.coef.push_back(to_real(binomial(N, j)) * pow(-z, Real(N - j)) * falling);
            falling *= job.c - j;
        }
        job.prefactor = (N % 2 == 0 ? 1 : -1) * rgamma(a + N) * pow(z, -(a + N));
        jobs.push_back(std::move(job));
    }
    if (jobs.empty()) return result;
    auto rule = ExpSinhRule::get(current_precision_bits());
    auto f = [&](const ExpSinhRule::Node& nd, std::vector<Real>& out) {
        const Real y = 1 + nd.x / z;
        const Real logy = log(y);
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            const Job& jb = jobs[k];
            // sum_j coef_j y^{N-j}, then times x^p (1+x/z)^{c-N} e^{-x}
            Real s(0), yp(1);
            for (long j = jb.N; j >= 0; --j) {
                s += jb.coef[j] * yp;
                yp *= y;
            }
            out[k] = s * exp(jb.p * nd.logx + (jb.c - jb.N) * logy - nd.x);
        }
    };
    auto vals = rule->integrate(f, jobs.size());
    for (std::size_t k = 0; k < jobs.size(); ++k) result[jobs[k].slot] = jobs[k].prefactor * vals[k];
    return result;
}

inline Real psi_chf(const Real& a, const Real& b, const Real& z) { return psi_chf_many({{a, b}}, z)[0]; }

// Psi and its first two z-derivatives: U' = -a U(a+1,b+1), U'' = a(a+1) U(a+2,b+2).
struct PsiJet {
    Real value, d1, d2;
};

inline PsiJet psi_chf_jet(const Real& a, const Real& b, const Real& z) {
    auto v = psi_chf_many({{a, b}, {a + 1, b + 1}, {a + 2, b + 2}}, z);
    return {v[0], -a * v[1], a * (a + 1) * v[2]};
}

// sigma_s(m) for real s
inline Real sigma_real(long m, const Real& s) {
    Real r(0);
    for (long d = 1; d <= m; ++d)
        if (m % d == 0) r += pow(Real(d), s);
    return r;
}

}  // namespace maasslab::special
