#pragma once

#include "maasslab/catalog.hpp"
#include "maasslab/eval.hpp"
#include "maasslab/maassops.hpp"

#include <array>
#include <vector>

namespace maasslab {

// gamma = (a b; c d)
struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;

    static Mat2 S() { return {0, -1, 1, 0}; }
    static Mat2 T() { return {1, 1, 0, 1}; }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    long det() const { return a * d - b * c; }
};

using RatMatrix = std::vector<std::vector<Rational>>;

namespace detail {

inline std::vector<Rational> poly_mul(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    std::vector<Rational> r(p.size() + q.size() - 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

inline std::vector<Rational> poly_pow(const std::vector<Rational>& p, int e) {
    std::vector<Rational> r{Rational(1)};
    for (int i = 0; i < e; ++i) r = poly_mul(r, p);
    return r;
}

}  // namespace detail

// Column j holds the X-coefficients of rho_m(gamma) X^j = (-cX + a)^{m-j} (dX - b)^j.
inline RatMatrix rho_matrix(int m, const Mat2& g) {
    if (m < 0) throw MathError("rho_m needs m >= 0");
    if (g.det() == 0) throw MathError("rho_m needs an invertible matrix");
    RatMatrix M(m + 1, std::vector<Rational>(m + 1, Rational(0)));
    const std::vector<Rational> lin1{Rational(g.a), Rational(-g.c)}, lin2{Rational(-g.b), Rational(g.d)};
    for (int j = 0; j <= m; ++j) {
        auto col = detail::poly_mul(detail::poly_pow(lin1, m - j), detail::poly_pow(lin2, j));
        for (int i = 0; i <= m; ++i) M[i][j] = col[i];
    }
    return M;
}

inline RatMatrix mat_mul(const RatMatrix& A, const RatMatrix& B) {
    const std::size_t n = A.size();
    RatMatrix C(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
}

class VVExpansion {
public:
    VVExpansion() = default;
    VVExpansion(int m, int weight, std::vector<MFExpansion> comps) : m_(m), weight_(weight), comps_(std::move(comps)) {
        if (m_ < 0) throw MathError("VV expansion needs m >= 0");
        if (static_cast<int>(comps_.size()) != m_ + 1)
            throw MathError("VV expansion of type rho_" + std::to_string(m_) + " needs " + std::to_string(m_ + 1) +
                            " components");
        for (auto& c : comps_) {
            if (c.mode() != comps_[0].mode()) throw MathError("VV components must share a mode");
            c = c.retagged(weight_);
        }
    }

    int m() const { return m_; }
    int weight() const { return weight_; }
    const std::vector<MFExpansion>& components() const { return comps_; }
    const MFExpansion& operator[](int i) const { return comps_.at(i); }
    Mode mode() const { return comps_.empty() ? Mode::Exact : comps_[0].mode(); }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.empty()) return false;
        return true;
    }

    VVExpansion& operator+=(const VVExpansion& o) {
        if (o.m_ != m_ || o.weight_ != weight_) throw MathError("VV addition needs equal type and weight");
        for (int i = 0; i <= m_; ++i) comps_[i] += o.comps_[i];
        return *this;
    }
    friend VVExpansion operator+(VVExpansion a, const VVExpansion& b) { return a += b; }
    friend VVExpansion operator-(VVExpansion a, const VVExpansion& b) { return a += b.scaled(Rational(-1)); }

    VVExpansion scaled(const Coefficient& s) const {
        VVExpansion r = *this;
        for (auto& c : r.comps_) c = c.scaled(s);
        return r;
    }
    VVExpansion scaled(const Rational& q) const {
        VVExpansion r = *this;
        for (auto& c : r.comps_) c = c.scaled(q);
        return r;
    }

    friend bool operator==(const VVExpansion& a, const VVExpansion& b) {
        if (a.m_ != b.m_ || a.weight_ != b.weight_) return false;
        for (int i = 0; i <= a.m_; ++i)
            if (!(a.comps_[i] == b.comps_[i])) return false;
        return true;
    }

    template <class Op>
    VVExpansion map(Op&& op) const {
        std::vector<MFExpansion> out;
        for (const auto& c : comps_) out.push_back(op(c));
        int w = out.empty() ? weight_ : out[0].weight();
        return VVExpansion(m_, w, std::move(out));
    }

    std::string to_string() const {
        std::string s = "VV[m=" + std::to_string(m_) + ", k=" + std::to_string(weight_) + "]\n";
        for (int i = 0; i <= m_; ++i) s += "  X^" + std::to_string(i) + ": " + comps_[i].to_string() + "\n";
        return s;
    }

private:
    int m_ = 0;
    int weight_ = 0;
    std::vector<MFExpansion> comps_;
};

inline VVExpansion scalar_as_vv(const MFExpansion& f) { return VVExpansion(0, f.weight(), {f}); }

namespace detail {

using PolyX = std::vector<MFExpansion>;  // X-coefficients

inline PolyX polyx_mul(const PolyX& p, const PolyX& q) {
    PolyX r(p.size() + q.size() - 1, MFExpansion(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += mul(p[i], q[j]);
    return r;
}

}  // namespace detail

// e_{r,m-r} = ((-1)^{m-r} / r!) v^{r-m} (X - tau)^r (X - taubar)^{m-r}, weight m - 2r.
inline VVExpansion e_poly(int r, int m) {
    if (m < 0 || r < 0 || r > m) throw MathError("e_{r,m-r} needs 0 <= r <= m");
    MFExpansion one(0), minus_tau(0), minus_taubar(0);
    one.add_term(TermKey{}, Coefficient::integer(1));
    TermKey u{1, Rational(0), 0, 0, Rational(0), std::nullopt};
    minus_tau.add_term(u, Coefficient::integer(-1));
    minus_tau.add_term(TermKey::vpow(1), Coefficient::rational(0, -1));
    minus_taubar.add_term(u, Coefficient::integer(-1));
    minus_taubar.add_term(TermKey::vpow(1), Coefficient::rational(0, 1));
    detail::PolyX p{one};
    for (int i = 0; i < r; ++i) p = detail::polyx_mul(p, {minus_tau, one});
    for (int i = 0; i < m - r; ++i) p = detail::polyx_mul(p, {minus_taubar, one});
    MFExpansion pre(0);
    pre.add_term(TermKey::vpow(r - m), Coefficient::rational(((m - r) % 2 ? -1 : 1) / factorial(r)));
    for (auto& c : p) c = mul(pre, c);
    return VVExpansion(m, m - 2 * r, std::move(p));
}

inline VVExpansion vv_apply(OpKind op, const VVExpansion& f) {
    return f.map([op](const MFExpansion& c) { return apply_op(op, c); });
}

inline VVExpansion vv_apply_chain(const std::string& chain, const VVExpansion& f) {
    VVExpansion g = f;
    for (OpKind op : parse_chain(chain, f.weight())) g = vv_apply(op, g);
    return g;
}

// E*_{m+2} = sum_r (1/(r+1)) C(m,r) e_{r,m-r} R^r E2*
inline VVExpansion estar_vv(int m, long M) {
    if (m < 0) throw MathError("E*_{m+2} needs m >= 0");
    MFExpansion rE2 = e2star(M);
    std::vector<MFExpansion> comps(m + 1, MFExpansion(m + 2, Mode::Exact, Rational(M)));
    for (int r = 0; r <= m; ++r) {
        if (r > 0) rE2 = raise(rE2);
        VVExpansion e = e_poly(r, m);
        Rational c = binomial(m, r) / Rational(r + 1);
        for (int i = 0; i <= m; ++i) comps[i] += mul(e[i], rE2).scaled(c).retagged(m + 2);
    }
    return VVExpansion(m, m + 2, std::move(comps));
}

// Exact u -> u + t for integer t; frequencies must be integral.
inline MFExpansion shift_u(const MFExpansion& f, long t) {
    MFExpansion out = f.empty_like(f.weight());
    out.set_level(f.level());
    for (const auto& [k, c] : f.terms()) {
        if (k.u_freq.get_den() != 1) throw MathError("shift_u needs integral frequencies");
        for (int j = 0; j <= k.u_pow; ++j) {
            TermKey d = k;
            d.u_pow = j;
            out.add_term(d, c.scaled(binomial(k.u_pow, j) * rational_pow(Rational(t), k.u_pow - j)));
        }
    }
    return out;
}

inline VVExpansion vv_shift_u(const VVExpansion& f, long t) {
    return f.map([t](const MFExpansion& c) { return shift_u(c, t); });
}

// rho_m(gamma) applied to an exact VV expansion.
inline VVExpansion vv_rho(const Mat2& g, const VVExpansion& f) {
    RatMatrix M = rho_matrix(f.m(), g);
    std::vector<MFExpansion> out;
    for (int i = 0; i <= f.m(); ++i) {
        MFExpansion s = f[0].empty_like(f.weight());
        for (int j = 0; j <= f.m(); ++j)
            if (M[i][j] != 0) s += f[j].scaled(M[i][j]);
        out.push_back(s);
    }
    return VVExpansion(f.m(), f.weight(), std::move(out));
}

struct EquivarianceResult {
    Real residual{0};
    Real scale{0};
    Real tail{0};
};

// |f(gamma tau0) - (c tau0 + d)^k rho_m(gamma) f(tau0)|
inline EquivarianceResult vv_equivariance_check(const VVExpansion& f, const Mat2& g, const EvalContext& ctx) {
    if (g.det() != 1) throw MathError("equivariance check needs gamma in SL2(Z)");
    PrecisionScope scope(ctx.prec);
    Complex tau(ctx.u, ctx.v);
    Complex j(Real(g.c) * tau.re + g.d, Real(g.c) * tau.im);
    Complex gt = (Complex(Real(g.a)) * tau + Complex(Real(g.b))) / j;
    EvalContext at = ctx, moved = ctx;
    moved.u = gt.re;
    moved.v = gt.im;
    auto here = eval_components(f.components(), at);
    auto there = eval_components(f.components(), moved);
    RatMatrix M = rho_matrix(f.m(), g);
    Complex jk = pow(j, static_cast<long>(f.weight()));
    EquivarianceResult r;
    for (int i = 0; i <= f.m(); ++i) {
        Complex rhs(0);
        for (int c = 0; c <= f.m(); ++c) rhs += here[c].value * to_real(M[i][c]);
        rhs *= jk;
        r.residual = std::max(r.residual, abs(there[i].value - rhs));
        r.scale = std::max(r.scale, abs(there[i].value));
        r.tail = std::max(r.tail, there[i].tail + abs(jk) * here[i].tail);
    }
    return r;
}

}  // namespace maasslab
