#pragma once

#include "maasslab/mfexp.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace maasslab {

enum class OpKind { Raise, Lower, Xi, DPow, Laplacian, Flip, BarTwist };

inline int op_weight_out(OpKind op, int k) {
    switch (op) {
        case OpKind::Raise: return k + 2;
        case OpKind::Lower: return k - 2;
        case OpKind::Xi:
        case OpKind::DPow: return 2 - k;
        case OpKind::Laplacian:
        case OpKind::Flip: return k;
        case OpKind::BarTwist: return -k;
    }
    return k;
}

namespace ops {

inline Coefficient exact_in(const MFExpansion& f, const Coefficient& c) {
    return coerce(c, f.mode(), f.precision());
}

// 2 pi i n
inline Coefficient two_pi_i(const MFExpansion& f, const Rational& n) {
    return exact_in(f, Coefficient::pi_power(1) * Coefficient::rational(0, 2 * n));
}

inline MFExpansion d_u(const MFExpansion& f) {
    MFExpansion out = f.empty_like(f.weight());
    out.set_level(f.level());
    for (const auto& [k, c] : f.terms()) {
        if (k.u_pow > 0) {
            TermKey d = k;
            d.u_pow -= 1;
            out.add_term(d, c.scaled(Rational(k.u_pow)));
        }
        if (k.u_freq != 0) out.add_term(k, c * two_pi_i(f, k.u_freq));
    }
    return out;
}

// d/dv Gamma(0, 4 pi lambda v) = -v^{-1} e^{-4 pi lambda v}
inline MFExpansion d_v(const MFExpansion& f) {
    MFExpansion out = f.empty_like(f.weight());
    out.set_level(f.level());
    for (const auto& [k, c] : f.terms()) {
        if (k.v_pow != 0) {
            TermKey d = k;
            d.v_pow -= 1;
            out.add_term(d, c.scaled(Rational(k.v_pow)));
        }
        if (k.log_pow > 0) {
            TermKey d = k;
            d.v_pow -= 1;
            d.log_pow -= 1;
            out.add_term(d, c.scaled(Rational(k.log_pow)));
        }
        if (k.v_decay != 0)
            out.add_term(k, c * exact_in(f, Coefficient::pi_power(1).scaled(-2 * k.v_decay)));
        if (k.gamma) {
            TermKey d = k;
            d.gamma.reset();
            d.v_pow -= 1;
            d.v_decay += 2 * k.gamma->lambda;
            out.add_term(d, -c);
        }
    }
    return out;
}

inline MFExpansion mul_vpow(const MFExpansion& f, int j) {
    MFExpansion out = f.empty_like(f.weight());
    out.set_level(f.level());
    for (const auto& [k, c] : f.terms()) {
        TermKey d = k;
        d.v_pow += j;
        out.add_term(d, c);
    }
    return out;
}

// Pointwise complex conjugate of the function.
inline MFExpansion conj_terms(const MFExpansion& f) {
    MFExpansion out = f.empty_like(f.weight());
    out.set_level(f.level());
    for (const auto& [k, c] : f.terms()) {
        TermKey d = k;
        d.u_freq = -k.u_freq;
        out.add_term(d, c.conj());
    }
    return out;
}

inline MFExpansion times_i(const MFExpansion& f) { return f.scaled(exact_in(f, Coefficient::imag_unit())); }

}  // namespace ops

// R_k = i d_u + d_v + k/v
inline MFExpansion raise(const MFExpansion& f) {
    const int k = f.weight();
    MFExpansion out = ops::times_i(ops::d_u(f)) + ops::d_v(f) + ops::mul_vpow(f, -1).scaled(Rational(k));
    return out.retagged(k + 2);
}

// L_k = -i v^2 d_u + v^2 d_v
inline MFExpansion lower(const MFExpansion& f) {
    MFExpansion inner = ops::d_v(f) - ops::times_i(ops::d_u(f));
    return ops::mul_vpow(inner, 2).retagged(f.weight() - 2);
}

inline MFExpansion raise_n(MFExpansion f, int n) {
    for (int i = 0; i < n; ++i) f = raise(f);
    return f;
}

inline MFExpansion lower_n(MFExpansion f, int n) {
    for (int i = 0; i < n; ++i) f = lower(f);
    return f;
}

inline MFExpansion bar_twist(const MFExpansion& f) {
    return ops::mul_vpow(ops::conj_terms(f), f.weight()).retagged(-f.weight());
}

inline MFExpansion xi(const MFExpansion& f) {
    const int k = f.weight();
    return ops::mul_vpow(ops::conj_terms(lower(f)), k - 2).retagged(2 - k);
}

// Delta_k = -R_{k-2} L_k
inline MFExpansion laplacian(const MFExpansion& f) {
    return raise(lower(f)).scaled(Rational(-1)).retagged(f.weight());
}

// Delta_k = -v^2 (d_u^2 + d_v^2) + i k v (d_u + i d_v), straight from the PDE.
inline MFExpansion laplacian_direct(const MFExpansion& f) {
    const int k = f.weight();
    MFExpansion fu = ops::d_u(f), fv = ops::d_v(f);
    MFExpansion second = ops::mul_vpow(ops::d_u(fu) + ops::d_v(fv), 2).scaled(Rational(-1));
    MFExpansion first = ops::mul_vpow(ops::times_i(fu) - fv, 1).scaled(Rational(k));
    return second + first;
}

// D = (1/(2 pi i)) d/dtau = -(i/(4 pi)) (d_u - i d_v)
inline MFExpansion d_once(const MFExpansion& f) {
    MFExpansion inner = ops::d_u(f) - ops::times_i(ops::d_v(f));
    Coefficient s = ops::exact_in(f, Coefficient::pi_power(-1) * Coefficient::rational(0, Rational(-1, 4)));
    return inner.scaled(s);
}

inline MFExpansion d_power(const MFExpansion& f) {
    const int k = f.weight();
    if (k > 0) throw MathError("D^{1-k} needs k <= 0, got k=" + std::to_string(k));
    MFExpansion g = f;
    for (int i = 0; i < 1 - k; ++i) g = d_once(g);
    return g.retagged(2 - k);
}

// F_k = v^{-k}/(-k)! conj(R_k^{-k} f)
inline MFExpansion flip(const MFExpansion& f) {
    const int k = f.weight();
    if (k > 0) throw MathError("flip needs k <= 0, got k=" + std::to_string(k));
    MFExpansion g = raise_n(f, -k);
    return ops::mul_vpow(ops::conj_terms(g), -k).scaled(1 / factorial(-k)).retagged(k);
}

// Delta_{k,2} = -xi_k xi_{2-k} xi_k
inline MFExpansion sesqui_laplacian(const MFExpansion& f) {
    return xi(xi(xi(f))).scaled(Rational(-1)).retagged(f.weight());
}

inline MFExpansion apply_op(OpKind op, const MFExpansion& f) {
    switch (op) {
        case OpKind::Raise: return raise(f);
        case OpKind::Lower: return lower(f);
        case OpKind::Xi: return xi(f);
        case OpKind::DPow: return d_power(f);
        case OpKind::Laplacian: return laplacian(f);
        case OpKind::Flip: return flip(f);
        case OpKind::BarTwist: return bar_twist(f);
    }
    return f;
}

inline OpKind parse_op(const std::string& s) {
    if (s == "R" || s == "raise") return OpKind::Raise;
    if (s == "L" || s == "lower") return OpKind::Lower;
    if (s == "xi") return OpKind::Xi;
    if (s == "D" || s == "dpow") return OpKind::DPow;
    if (s == "Delta" || s == "laplacian") return OpKind::Laplacian;
    if (s == "flip" || s == "F") return OpKind::Flip;
    if (s == "bar" || s == "bar_twist") return OpKind::BarTwist;
    throw MathError("unknown operator '" + s + "'");
}

// "L,L,R" applied left to right; weight preconditions are checked before anything runs.
inline std::vector<OpKind> parse_chain(const std::string& chain, int k) {
    std::vector<OpKind> ops;
    std::stringstream ss(chain);
    std::string tok;
    int w = k;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        OpKind op = parse_op(tok);
        if ((op == OpKind::DPow || op == OpKind::Flip) && w > 0)
            throw MathError("operator " + tok + " needs weight <= 0 but chain reaches weight " + std::to_string(w));
        ops.push_back(op);
        w = op_weight_out(op, w);
    }
    return ops;
}

inline MFExpansion apply_chain(const std::string& chain, MFExpansion f) {
    for (OpKind op : parse_chain(chain, f.weight())) f = apply_op(op, f);
    return f;
}

}  // namespace maasslab
