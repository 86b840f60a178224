#pragma once

#include "maasslab/gkmod.hpp"
#include "maasslab/poincare.hpp"

#include <vector>

namespace maasslab {

struct SesquiSample {
    Real u{0}, v{1};
    Real f_abs{0}, f_tail{0};
    Real laplacian_abs{0};
    Real lower_abs{0}, lower_tail{0};  // L_k f
    Real deep_abs{0}, deep_tail{0};    // L^k f, weight -k
};

struct SesquiClassification {
    GKDescriptor descriptor;
    std::vector<SesquiSample> samples;
    bool harmonic = false;
};

namespace detail {

// Nonzero means clearly above the coset-truncation tail.
inline bool above_tail(const Real& value, const Real& tail) { return value > 10 * tail + Real("1e-30"); }

}  // namespace detail

// Flags of the sesquiharmonic Poincare series F_{k,m} from the coset sums of f, L f and L^k f.
inline SesquiClassification classify_sesqui(long k, long m, const EvalContext& ctx,
                                            const std::vector<std::pair<Real, Real>>& points) {
    if (k < 2) throw MathError("the sesquiharmonic route needs k >= 2");
    if (points.empty()) throw MathError("need at least one sample point");
    PrecisionScope scope(ctx.prec);
    SesquiClassification out;
    out.harmonic = true;
    bool down_zero = true, deep_zero = true;
    const Real h = ldexp(Real(1), -static_cast<int>(ctx.prec / 8));
    for (const auto& [pu, pv] : points) {
        // Sample points may have been created at a lower working precision.
        const Real u(pu, bits_to_digits10(ctx.prec)), v(pv, bits_to_digits10(ctx.prec));
        EvalContext c = ctx;
        c.u = u;
        c.v = v;
        SesquiSample s;
        s.u = u;
        s.v = v;
        PoincareResult f = sesqui_poincare_eval(k, m, c);
        s.f_abs = abs(f.value);
        s.f_tail = f.tail;
        auto g = [&](const Real& x, const Real& y) {
            EvalContext e = ctx;
            e.u = x;
            e.v = y;
            return sesqui_poincare_eval(k, m, e).value;
        };
        s.laplacian_abs = abs(numeric_laplacian(k, g, u, v, h));
        PoincareResult lo = sesqui_lowered_eval(k, m, 1, c);
        s.lower_abs = abs(lo.value);
        s.lower_tail = lo.tail;
        PoincareResult deep = sesqui_lowered_eval(k, m, static_cast<int>(k), c);
        s.deep_abs = abs(deep.value);
        s.deep_tail = deep.tail;
        if (detail::above_tail(s.laplacian_abs, s.f_tail)) out.harmonic = false;
        if (detail::above_tail(s.lower_abs, s.lower_tail)) down_zero = false;
        if (detail::above_tail(s.deep_abs, s.deep_tail)) deep_zero = false;
        out.samples.push_back(s);
    }
    if (!out.harmonic) throw MathError("not harmonic: Delta_" + std::to_string(k) + " F exceeds the truncation tail");
    out.descriptor = classify_flags(k, down_zero, down_zero ? std::optional<bool>() : std::optional<bool>(deep_zero),
                                    Certainty::Numeric);
    out.descriptor.warnings.push_back("flags decided at coset cutoff C=" + std::to_string(ctx.cutoff) + " on " +
                                      std::to_string(points.size()) + " sample points");
    return out;
}

}  // namespace maasslab
