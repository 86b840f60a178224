#pragma once

#include "maasslab/eisenstein.hpp"

#include <map>
#include <vector>

namespace maasslab {

// A_{r,l,s0}: Taylor coefficient of (s - s0)^r in E_{l,s}, stored per Fourier mode at one height v.
struct LaurentSlice {
    int r = 0;
    long l = 0;
    long s0 = 0;
    Real v{1};
    std::map<long, ModeJet> modes;

    Complex value(const Real& u) const {
        Complex z(0);
        for (const auto& [m, j] : modes) z += expi2pi(m * u) * j.g;
        return z;
    }
};

namespace detail {

// Rows r of the inverse Vandermonde on nodes -n..n: a_r = sum_j W[r][j] f(j).
inline std::vector<std::vector<Rational>> taylor_weights(int n) {
    const int N = 2 * n + 1;
    std::vector<std::vector<Rational>> A(N, std::vector<Rational>(2 * N, Rational(0)));
    for (int j = 0; j < N; ++j) {
        Rational t(j - n), p(1);
        for (int r = 0; r < N; ++r) {
            A[j][r] = p;  // row j: sum_r a_r t_j^r = f_j
            p *= t;
        }
        A[j][N + j] = 1;
    }
    for (int c = 0; c < N; ++c) {
        int piv = c;
        while (A[piv][c] == 0) ++piv;
        std::swap(A[c], A[piv]);
        Rational inv = 1 / A[c][c];
        for (auto& x : A[c]) x *= inv;
        for (int i = 0; i < N; ++i) {
            if (i == c || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (int k = 0; k < 2 * N; ++k) A[i][k] -= f * A[c][k];
        }
    }
    std::vector<std::vector<Rational>> W(N, std::vector<Rational>(N));
    for (int r = 0; r < N; ++r)
        for (int j = 0; j < N; ++j) W[r][j] = A[r][N + j];
    return W;
}

}  // namespace detail

inline constexpr int kLaurentHalfWidth = 6;
inline constexpr int kLaurentMaxOrder = 6;

// Slices r = 0..rmax for modes |m| <= mmax at height v, from a 13-point stencil in s with step h.
inline std::vector<LaurentSlice> laurent_coeffs(long l, long s0, int rmax, const Real& v, long mmax,
                                                const Real& h = Real(1) / 32, unsigned prec = kDefaultPrecisionBits) {
    if (s0 < 2) throw MathError("Laurent expansion point s0 must be an integer >= 2");
    if (rmax > kLaurentMaxOrder) throw MathError("Taylor order too large for stable differentiation");
    if (l % 2 != 0) throw MathError("E_{l,s} needs even l");
    PrecisionScope scope(prec);
    const int n = kLaurentHalfWidth;
    static const auto W = detail::taylor_weights(n);
    std::vector<LaurentSlice> out;
    for (int r = 0; r <= std::max(rmax, 0); ++r) out.push_back(LaurentSlice{r, l, s0, v, {}});
    if (rmax < 0) return out;
    for (long m = -mmax; m <= mmax; ++m) {
        std::vector<ModeJet> samples;
        for (int j = -n; j <= n; ++j) samples.push_back(eis_mode(l, Real(s0) + j * h, m, v));
        Real hr(1);
        for (int r = 0; r <= rmax; ++r) {
            ModeJet a;
            for (int j = 0; j < 2 * n + 1; ++j) {
                const Real w = to_real(W[r][j]);
                a.g += w * samples[j].g;
                a.d1 += w * samples[j].d1;
                a.d2 += w * samples[j].d2;
            }
            a.g /= hr;
            a.d1 /= hr;
            a.d2 /= hr;
            out[r].modes[m] = a;
            hr *= h;
        }
    }
    return out;
}

inline LaurentSlice laurent_coeff(int r, long l, long s0, const Real& v, long mmax,
                                  unsigned prec = kDefaultPrecisionBits) {
    if (r < 0) return LaurentSlice{r, l, s0, v, {}};
    return laurent_coeffs(l, s0, r, v, mmax, Real(1) / 32, prec)[r];
}

// Mode-wise action of L_k, R_k, Delta_k on g(v) e(mu).
inline Real mode_lower(long m, const ModeJet& j, const Real& v) {
    return v * v * (2 * real_pi() * m * j.g + j.d1);
}
inline Real mode_raise(long k, long m, const ModeJet& j, const Real& v) {
    return -2 * real_pi() * m * j.g + j.d1 + k * j.g / v;
}
inline Real mode_laplacian(long k, long m, const ModeJet& j, const Real& v) {
    const Real pm = 2 * real_pi() * m;
    return pm * pm * v * v * j.g - v * v * j.d2 - pm * k * v * j.g - k * v * j.d1;
}

struct LaurentCheck {
    long l = 0, s0 = 0;
    int rmax = 0;
    Real lower{0}, raise{0};
    Real delta_stated{0};      // eigenvalue +1/4 (s+1-l)(s+l-1)
    Real delta_consistent{0};  // eigenvalue -1/4 (s+1-l)(s+l-1), the sign forced by Delta = -R L
    Real nilpotence_factor{0};  // measured Delta_l A_1 / A_0 (mode with the largest |A_0|)
    Real nilpotence_zero{0};    // max |Delta_l A_0| relative
};

namespace detail {

// |lhs - rhs| relative to the size of the quantities involved.
inline Real rel(const Real& lhs, const Real& rhs, const Real& size) {
    Real scale = std::max({abs(lhs), abs(rhs), size});
    if (scale < Real("1e-60")) return abs(lhs - rhs);
    return abs(lhs - rhs) / scale;
}

}  // namespace detail

// Checks (Laurent-lower), (Laurent-raise) and the Laplacian relation on all slices r <= rmax.
inline LaurentCheck laurent_check(long l, long s0, int rmax, const std::vector<Real>& heights, long mmax,
                                  unsigned prec = kDefaultPrecisionBits) {
    PrecisionScope scope(prec);
    LaurentCheck out;
    out.l = l;
    out.s0 = s0;
    out.rmax = rmax;
    const Real lam = Real((s0 + 1 - l) * (s0 + l - 1)) / 4;
    const Real half_s0 = Real(s0) / 2;
    Real best_a0(-1);
    for (const Real& v : heights) {
        auto A = laurent_coeffs(l, s0, rmax, v, mmax, Real(1) / 32, prec);
        auto Am = laurent_coeffs(l - 2, s0, rmax, v, mmax, Real(1) / 32, prec);
        auto Ap = laurent_coeffs(l + 2, s0, rmax, v, mmax, Real(1) / 32, prec);
        auto at = [](const std::vector<LaurentSlice>& S, int r, long m) {
            return r < 0 ? ModeJet{} : S[r].modes.at(m);
        };
        for (int r = 0; r <= rmax; ++r) {
            for (long m = -mmax; m <= mmax; ++m) {
                const ModeJet a = at(A, r, m);
                const Real size = abs(a.g) + abs(v * a.d1) + abs(v * v * a.d2);
                Real lo = mode_lower(m, a, v);
                Real lo_rhs = (Real(s0 + 1 - l) * at(Am, r, m).g + at(Am, r - 1, m).g) / 2;
                out.lower = std::max(out.lower, detail::rel(lo, lo_rhs, size));
                Real ra = mode_raise(l, m, a, v);
                Real ra_rhs = (Real(s0 + 1 + l) * at(Ap, r, m).g + at(Ap, r - 1, m).g) / 2;
                out.raise = std::max(out.raise, detail::rel(ra, ra_rhs, size));
                Real de = mode_laplacian(l, m, a, v);
                Real tail = half_s0 * at(A, r - 1, m).g + at(A, r - 2, m).g / 4;
                out.delta_stated = std::max(out.delta_stated, detail::rel(de, lam * a.g + tail, size));
                out.delta_consistent = std::max(out.delta_consistent, detail::rel(de, -lam * a.g - tail, size));
                if (r == 0 && size > 0) out.nilpotence_zero = std::max(out.nilpotence_zero, abs(de) / size);
                if (r == 1 && abs(at(A, 0, m).g) > best_a0) {
                    best_a0 = abs(at(A, 0, m).g);
                    out.nilpotence_factor = de / at(A, 0, m).g;
                }
            }
        }
    }
    return out;
}

}  // namespace maasslab
