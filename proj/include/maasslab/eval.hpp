#pragma once

#include "maasslab/mfexp.hpp"
#include "maasslab/special.hpp"

#include <vector>

namespace maasslab {

struct EvalContext {
    unsigned prec = kDefaultPrecisionBits;
    Real u{0};
    Real v{1};
    long cutoff = 200;
    long trunc = 40;
    SymbolBindings bindings;
    Real tol{"1e-40"};
};

struct EvalResult {
    Complex value;
    Real tail{0};
};

inline Complex eval_term(const TermKey& k, const Complex& c, const Real& u, const Real& v) {
    const Real pi = real_pi();
    Real mag = exp(-2 * pi * to_real(k.v_decay) * v);
    if (k.v_pow != 0) mag *= pow(v, Real(k.v_pow));
    if (k.log_pow != 0) mag *= pow(log(v), Real(k.log_pow));
    if (k.u_pow != 0) mag *= pow(u, Real(k.u_pow));
    if (k.gamma) mag *= special::incomplete_gamma(Real(k.gamma->s), 4 * pi * to_real(k.gamma->lambda) * v);
    Complex z = c * mag;
    if (k.u_freq != 0) z *= expi2pi(to_real(k.u_freq) * u);
    return z;
}

// Value at tau = u + iv plus a geometric tail guess from the outermost stored shell.
inline EvalResult eval_expansion(const MFExpansion& f, const EvalContext& ctx) {
    PrecisionScope scope(ctx.prec);
    if (ctx.v <= 0) throw MathError("evaluation needs v > 0");
    EvalResult r;
    Real outer(0);
    const Rational top = f.max_abs_frequency();
    for (const auto& [k, c] : f.terms()) {
        Complex t = eval_term(k, c.evaluate(ctx.bindings), ctx.u, ctx.v);
        r.value += t;
        if (f.trunc() && top > 0 && abs_rational(k.u_freq) > top - 1) outer += abs(t);
    }
    if (f.trunc()) {
        Real x = exp(-2 * real_pi() * ctx.v);
        r.tail = outer * x / (1 - x);
    }
    return r;
}

inline std::vector<EvalResult> eval_components(const std::vector<MFExpansion>& comps, const EvalContext& ctx) {
    std::vector<EvalResult> out;
    out.reserve(comps.size());
    for (const auto& c : comps) out.push_back(eval_expansion(c, ctx));
    return out;
}

}  // namespace maasslab
