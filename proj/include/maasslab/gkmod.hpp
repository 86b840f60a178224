#pragma once

#include "maasslab/maassops.hpp"
#include "maasslab/mfexp.hpp"
#include "maasslab/symtensor.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace maasslab {

// ---- principal series ------------------------------------------------------

enum class Direction { Up, Down };

inline long parity(long j) { return ((j % 2) + 2) % 2; }

// X_{+/-} phi_j = (1/2)(nu + 1 +/- j) phi_{j +/- 2}
inline Rational ps_action(int eps, const Rational& nu, long j, Direction dir) {
    if (eps != 0 && eps != 1) throw MathError("epsilon must be 0 or 1");
    if (parity(j) != eps) throw MathError("K-type " + std::to_string(j) + " has the wrong parity for epsilon=" +
                                          std::to_string(eps));
    return dir == Direction::Up ? Rational((nu + 1 + j) / 2) : Rational((nu + 1 - j) / 2);
}

// C = H^2 + 2 X+ X- + 2 X- X+ on phi_j, recomputed from the two actions.
inline Rational ps_casimir(int eps, const Rational& nu, long j) {
    const Rational xpxm = ps_action(eps, nu, j - 2, Direction::Up) * ps_action(eps, nu, j, Direction::Down);
    const Rational xmxp = ps_action(eps, nu, j + 2, Direction::Down) * ps_action(eps, nu, j, Direction::Up);
    return Rational(j * j) + 2 * xpxm + 2 * xmxp;
}

// Same operator written as (H - 1)^2 + 4 X+ X- - 1.
inline Rational ps_casimir_shifted(int eps, const Rational& nu, long j) {
    const Rational xpxm = ps_action(eps, nu, j - 2, Direction::Up) * ps_action(eps, nu, j, Direction::Down);
    return Rational((j - 1) * (j - 1)) + 4 * xpxm - 1;
}

inline Rational harmonic_casimir(long k) { return Rational((k - 1) * (k - 1) - 1); }

// 4 X+ X- on the weight-j vector of the module of a harmonic form of weight k.
inline Rational four_xplus_xminus(long k, long j) {
    const long nu = 1 - k;
    return Rational(nu * nu - 1 - (j - 1) * (j - 1) + 1);
}

// down: X- f_{k+2r} = r(1-k-r) f_{k+2(r-1)};  up: X+ f_{k-2r} = -(r-1)(r-k) f_{k-2(r-1)}
inline Rational transition_coeff(long k, long r, Direction dir) {
    if (r < 1) throw MathError("transition coefficient needs r >= 1");
    return dir == Direction::Down ? Rational(r * (1 - k - r)) : Rational(-(r - 1) * (r - k));
}

// ---- irreducible factors ---------------------------------------------------

enum class FactorKind { DSplus, DSminus, FD, LDSplus, LDSminus, IrrPS };

struct KSupport {
    std::optional<long> lo, hi;

    bool contains(long j) const {
        if (lo && j < *lo) return false;
        if (hi && j > *hi) return false;
        return parity(j) == parity(lo ? *lo : *hi);
    }
    bool finite() const { return lo && hi; }
};

struct IrrFactor {
    FactorKind kind = FactorKind::FD;
    long nu = 0;

    KSupport support() const {
        switch (kind) {
            case FactorKind::DSplus: return {nu + 1, std::nullopt};
            case FactorKind::DSminus: return {std::nullopt, -nu - 1};
            case FactorKind::FD: return {-nu + 1, nu - 1};
            case FactorKind::LDSplus: return {1, std::nullopt};
            case FactorKind::LDSminus: return {std::nullopt, -1};
            case FactorKind::IrrPS: break;
        }
        return {};
    }

    std::optional<long> dimension() const {
        if (kind == FactorKind::FD) return nu;
        return std::nullopt;
    }

    std::string name() const {
        switch (kind) {
            case FactorKind::DSplus: return "DS+(" + std::to_string(nu) + ")";
            case FactorKind::DSminus: return "DS-(" + std::to_string(nu) + ")";
            case FactorKind::FD: return "FD(" + std::to_string(nu) + ")";
            case FactorKind::LDSplus: return "LDS+(0)";
            case FactorKind::LDSminus: return "LDS-(0)";
            case FactorKind::IrrPS: return "I(" + std::to_string(nu) + ")";
        }
        return "?";
    }

    friend bool operator==(const IrrFactor& a, const IrrFactor& b) { return a.kind == b.kind && a.nu == b.nu; }
};

inline std::string join_factors(const std::vector<IrrFactor>& fs, const std::string& sep = " + ") {
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? sep : "") + fs[i].name();
    return s;
}

struct PSStructure {
    long nu = 0;
    int eps = 0;
    std::vector<IrrFactor> submodules;
    std::vector<IrrFactor> quotients;
    bool semisimple = false;
    std::string sequence;
};

inline PSStructure structure_of_I(long nu, int eps) {
    if (parity(nu - 1) != eps) throw MathError("I(" + std::to_string(eps) + "," + std::to_string(nu) +
                                               ") is irreducible");
    PSStructure s{nu, eps, {}, {}, false, ""};
    if (nu > 0) {
        s.submodules = {{FactorKind::DSplus, nu}, {FactorKind::DSminus, nu}};
        s.quotients = {{FactorKind::FD, nu}};
    } else if (nu < 0) {
        s.submodules = {{FactorKind::FD, -nu}};
        s.quotients = {{FactorKind::DSplus, -nu}, {FactorKind::DSminus, -nu}};
    } else {
        s.submodules = {{FactorKind::LDSplus, 0}, {FactorKind::LDSminus, 0}};
        s.semisimple = true;
    }
    s.sequence = s.semisimple ? "I(0) = " + join_factors(s.submodules)
                              : "0 -> " + join_factors(s.submodules) + " -> I(" + std::to_string(nu) + ") -> " +
                                    join_factors(s.quotients) + " -> 0";
    return s;
}

inline PSStructure structure_of_I(long nu) { return structure_of_I(nu, static_cast<int>(parity(nu - 1))); }

// ---- case table ------------------------------------------------------------

enum class CaseLabel { Ia, Ib, Ic, Id, IIa, IIb, IIIa, IIIb, IIIc };

inline const char* case_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::Ia: return "Ia";
        case CaseLabel::Ib: return "Ib";
        case CaseLabel::Ic: return "Ic";
        case CaseLabel::Id: return "Id";
        case CaseLabel::IIa: return "IIa";
        case CaseLabel::IIb: return "IIb";
        case CaseLabel::IIIa: return "IIIa";
        case CaseLabel::IIIb: return "IIIb";
        case CaseLabel::IIIc: return "IIIc";
    }
    return "?";
}

inline CaseLabel parse_case(const std::string& s) {
    for (CaseLabel c : {CaseLabel::Ia, CaseLabel::Ib, CaseLabel::Ic, CaseLabel::Id, CaseLabel::IIa, CaseLabel::IIb,
                        CaseLabel::IIIa, CaseLabel::IIIb, CaseLabel::IIIc})
        if (s == case_name(c)) return c;
    throw MathError("unknown case label '" + s + "'");
}

inline std::vector<CaseLabel> all_cases() {
    return {CaseLabel::Ia,  CaseLabel::Ib,  CaseLabel::Ic,   CaseLabel::Id,  CaseLabel::IIa,
            CaseLabel::IIb, CaseLabel::IIIa, CaseLabel::IIIb, CaseLabel::IIIc};
}

enum class SubquotientStatus { QuotientOfI, SubquotientOfI, NotSubquotient };

inline const char* subquotient_name(SubquotientStatus s) {
    switch (s) {
        case SubquotientStatus::QuotientOfI: return "quotient-of-I";
        case SubquotientStatus::SubquotientOfI: return "subquotient-of-I";
        case SubquotientStatus::NotSubquotient: return "not-subquotient";
    }
    return "?";
}

inline SubquotientStatus subquotient_status(CaseLabel c) {
    switch (c) {
        case CaseLabel::Ia:
        case CaseLabel::Ib:
        case CaseLabel::Ic:
        case CaseLabel::Id: return SubquotientStatus::QuotientOfI;
        case CaseLabel::IIa:
        case CaseLabel::IIIa:
        case CaseLabel::IIIb: return SubquotientStatus::SubquotientOfI;
        case CaseLabel::IIb:
        case CaseLabel::IIIc: return SubquotientStatus::NotSubquotient;
    }
    return SubquotientStatus::NotSubquotient;
}

struct GKDescriptor {
    CaseLabel label = CaseLabel::Ia;
    long k = 0;
    long nu = 1;
    std::vector<std::vector<IrrFactor>> socle;  // socle layers, bottom first
    std::string sequence;
    bool split = true;  // false for the non-split extensions
    Certainty certainty = Certainty::Exact;
    std::vector<std::string> warnings;

    std::vector<IrrFactor> factors() const {
        std::vector<IrrFactor> out;
        for (const auto& layer : socle) out.insert(out.end(), layer.begin(), layer.end());
        return out;
    }

    int multiplicity(long j) const {
        if (parity(j) != parity(k)) return 0;
        int m = 0;
        for (const auto& f : factors())
            if (f.support().contains(j)) ++m;
        return m;
    }

    // Weights of M: the union of the factor supports.
    KSupport support() const {
        KSupport s;
        bool lo_inf = false, hi_inf = false;
        for (const auto& f : factors()) {
            KSupport t = f.support();
            if (!t.lo) lo_inf = true;
            else if (!s.lo || *t.lo < *s.lo) s.lo = t.lo;
            if (!t.hi) hi_inf = true;
            else if (!s.hi || *t.hi > *s.hi) s.hi = t.hi;
        }
        if (lo_inf) s.lo.reset();
        if (hi_inf) s.hi.reset();
        return s;
    }
};

inline const char* certainty_name(Certainty c) { return c == Certainty::Exact ? "exact" : "numeric-at-truncation"; }

namespace detail {

inline std::string exact_sequence(const std::vector<std::vector<IrrFactor>>& layers) {
    if (layers.size() == 1) return "M = " + join_factors(layers[0]);
    if (layers.size() == 2)
        return "0 -> " + join_factors(layers[0]) + " -> M -> " + join_factors(layers[1]) + " -> 0";
    std::string s = "socle series F2 < F1 < M:";
    for (std::size_t i = 0; i < layers.size(); ++i)
        s += " " + std::string(i == 0 ? "F2 = " : i == 1 ? "F1/F2 = " : "M/F1 = ") + join_factors(layers[i]) +
             (i + 1 < layers.size() ? ";" : "");
    return s;
}

}  // namespace detail

// down_zero: f_{k-2} = 0.  second_zero: f_{2-k} = 0 for k < 1, f_{-k} = 0 for k > 1.
inline GKDescriptor classify_flags(long k, bool down_zero, std::optional<bool> second_zero,
                                   Certainty certainty = Certainty::Exact) {
    GKDescriptor d;
    d.k = k;
    d.nu = 1 - k;
    d.certainty = certainty;
    const long nu = d.nu;
    using F = FactorKind;
    if (k < 1) {
        if (!second_zero) throw MathError("k < 1 needs both vanishing flags");
        const IrrFactor fd{F::FD, nu}, dp{F::DSplus, nu}, dm{F::DSminus, nu};
        if (down_zero && *second_zero) {
            d.label = CaseLabel::Ia;
            d.socle = {{fd}};
        } else if (down_zero) {
            d.label = CaseLabel::Ib;
            d.socle = {{dp}, {fd}};
        } else if (*second_zero) {
            d.label = CaseLabel::Ic;
            d.socle = {{dm}, {fd}};
        } else {
            d.label = CaseLabel::Id;
            d.socle = {{dp, dm}, {fd}};
        }
    } else if (k == 1) {
        if (second_zero) throw MathError("k = 1 takes only the lowering flag");
        if (down_zero) {
            d.label = CaseLabel::IIa;
            d.socle = {{{F::LDSplus, 0}}};
        } else {
            d.label = CaseLabel::IIb;
            d.socle = {{{F::LDSminus, 0}}, {{F::LDSplus, 0}}};
        }
    } else {
        const IrrFactor fd{F::FD, -nu}, dp{F::DSplus, -nu}, dm{F::DSminus, -nu};
        if (down_zero) {
            if (second_zero && !*second_zero) throw MathError("f_{k-2} = 0 forces f_{-k} = 0");
            d.label = CaseLabel::IIIa;
            d.socle = {{dp}};
        } else {
            if (!second_zero) throw MathError("k > 1 with f_{k-2} != 0 needs the f_{-k} flag");
            if (*second_zero) {
                d.label = CaseLabel::IIIb;
                d.socle = {{fd}, {dp}};
            } else {
                d.label = CaseLabel::IIIc;
                d.socle = {{dm}, {fd}, {dp}};
            }
        }
    }
    d.split = d.socle.size() == 1;
    d.sequence = detail::exact_sequence(d.socle);
    return d;
}

// ---- classical flags -------------------------------------------------------

struct VanishingFlags {
    bool down_zero = false;
    std::optional<bool> second_zero;
};

namespace detail {

inline Real coefficient_scale(const MFExpansion& f) {
    Real s(0);
    if (f.mode() == Mode::Exact) return s;
    for (const auto& [k, c] : f.terms()) s = std::max(s, abs(c.value()));
    return s;
}

// Exact: storage zero. Float: every coefficient below tol relative to `scale`.
inline bool vanishes(const MFExpansion& g, const Real& scale) {
    if (g.mode() == Mode::Exact) return g.empty();
    const Real tol = Real("1e-25") * std::max(scale, Real(1));
    for (const auto& [k, c] : g.terms())
        if (abs(c.value()) >= tol) return false;
    return true;
}

inline bool vanishes(const VVExpansion& g, const Real& scale) {
    for (const auto& c : g.components())
        if (!vanishes(c, scale)) return false;
    return true;
}

template <class Form, class Lower, class Raise>
VanishingFlags flags_for(const Form& f, long k, const Real& scale, Lower&& lower_op, Raise&& raise_op) {
    VanishingFlags fl;
    Form g = lower_op(f);
    fl.down_zero = vanishes(g, scale);
    if (k < 1) {
        Form h = f;
        for (long i = 0; i < 1 - k; ++i) h = raise_op(h);
        fl.second_zero = vanishes(h, scale);
    } else if (k > 1 && !fl.down_zero) {
        Form d = g;
        for (long i = 1; i < k; ++i) d = lower_op(d);
        fl.second_zero = vanishes(d, scale);
    }
    return fl;
}

}  // namespace detail

inline VanishingFlags vanishing_flags(const MFExpansion& f) {
    return detail::flags_for(f, f.weight(), detail::coefficient_scale(f), [](const MFExpansion& x) { return lower(x); },
                             [](const MFExpansion& x) { return raise(x); });
}

inline VanishingFlags vanishing_flags(const VVExpansion& f) {
    Real scale(0);
    for (const auto& c : f.components()) scale = std::max(scale, detail::coefficient_scale(c));
    return detail::flags_for(
        f, f.weight(), scale, [](const VVExpansion& x) { return vv_apply(OpKind::Lower, x); },
        [](const VVExpansion& x) { return vv_apply(OpKind::Raise, x); });
}

inline GKDescriptor classify_form(const MFExpansion& f) {
    const long k = f.weight();
    if (!detail::vanishes(laplacian(f), detail::coefficient_scale(f)))
        throw MathError("not harmonic: Delta_" + std::to_string(k) + " f != 0");
    Decomposition dec = decompose(f);
    if (!dec.harmonic_shape) throw MathError("unknown shape: " + dec.reason);
    VanishingFlags fl = vanishing_flags(f);
    Certainty c = f.mode() == Mode::Exact ? Certainty::Exact : Certainty::Numeric;
    GKDescriptor d = classify_flags(k, fl.down_zero, fl.second_zero, c);
    if (k <= 0 && k != 0 && d.label == CaseLabel::Ia)
        d.warnings.push_back("scalar form generating FD(" + std::to_string(d.nu) +
                             ") with k != 0: impossible for a scalar form, which would have to be a constant");
    return d;
}

inline GKDescriptor classify_form(const VVExpansion& f) {
    Real scale(0);
    for (const auto& c : f.components()) scale = std::max(scale, detail::coefficient_scale(c));
    if (!detail::vanishes(vv_apply(OpKind::Laplacian, f), scale))
        throw MathError("not harmonic: Delta_" + std::to_string(f.weight()) + " f != 0");
    VanishingFlags fl = vanishing_flags(f);
    Certainty c = f.mode() == Mode::Exact ? Certainty::Exact : Certainty::Numeric;
    GKDescriptor d = classify_flags(f.weight(), fl.down_zero, fl.second_zero, c);
    if (f.m() == 0 && f.weight() < 0 && d.label == CaseLabel::Ia)
        d.warnings.push_back("scalar form generating FD(" + std::to_string(d.nu) +
                             ") with k != 0: impossible for a scalar form, which would have to be a constant");
    return d;
}

// ---- Laurent modules -------------------------------------------------------

struct LaurentMultiplicities {
    long ds_plus = 0, ds_minus = 0, fd = 0;
    friend bool operator==(const LaurentMultiplicities&, const LaurentMultiplicities&) = default;
};

// Constituents of the module generated by the weight-k Taylor coefficient of order r.
inline LaurentMultiplicities laurent_multiplicities(long r) {
    if (r < 0) throw MathError("Taylor order must be >= 0");
    return {r + 1, r, r};
}

// ---- diagrams --------------------------------------------------------------

namespace detail {

constexpr int kCell = 6;

inline std::string center(const std::string& s, int w = kCell) {
    int pad = w - static_cast<int>(s.size());
    if (pad <= 0) return s;
    return std::string(pad / 2, ' ') + s + std::string(pad - pad / 2, ' ');
}

inline std::string joiner(bool right, bool left) {
    if (right && left) return "<==>";
    if (right) return "--->";
    if (left) return "<---";
    return "    ";
}

inline std::string rstrip(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

}  // namespace detail

// Coefficients in the normalization f_{k+2r} = X+^r f, f_{k-2r} = X-^r f.
inline Rational raise_coeff(long k, long j) {
    if (j >= k) return Rational(1);
    return transition_coeff(k, (k - j) / 2, Direction::Up);
}
inline Rational lower_coeff(long k, long j) {
    if (j <= k) return Rational(1);
    return transition_coeff(k, (j - k) / 2, Direction::Down);
}

// One-row picture of M: nodes at displayed weights, R/L arrows between neighbours, zero arrows omitted.
inline std::string diagram(const GKDescriptor& d) {
    const long k = d.k;
    const KSupport W = d.support();
    auto in_M = [&](long j) { return W.contains(j); };
    auto r_arrow = [&](long j) { return in_M(j) && in_M(j + 2) && raise_coeff(k, j) != 0; };
    auto l_arrow = [&](long j) { return in_M(j) && in_M(j - 2) && lower_coeff(k, j) != 0; };

    std::set<long> shown{k};
    for (const auto& f : d.factors()) {
        KSupport s = f.support();
        for (auto b : {s.lo, s.hi})
            if (b)
                for (long t : {*b - 2, *b, *b + 2})
                    if (in_M(t)) shown.insert(t);
    }
    if (!W.lo) shown.insert(*shown.begin() - 2);
    if (!W.hi) shown.insert(*shown.rbegin() + 2);

    // Hidden stretches inherit the arrows next to them.
    std::string wrow, nrow, rrow, lrow;
    auto add_cell = [&](const std::string& w, const std::string& n) {
        wrow += detail::center(w);
        nrow += detail::center(n);
        rrow += std::string(detail::kCell, ' ');
        lrow += std::string(detail::kCell, ' ');
    };
    auto add_join = [&](long a) {  // arrows between a and a + 2
        nrow += detail::joiner(r_arrow(a), l_arrow(a + 2));
        wrow += "    ";
        std::string rc = r_arrow(a) ? rational_str(raise_coeff(k, a)) : "";
        std::string lc = l_arrow(a + 2) ? rational_str(lower_coeff(k, a + 2)) : "";
        rrow += detail::center(rc, 4);
        lrow += detail::center(lc, 4);
    };
    auto mark = [&](long j) -> std::string {
        if (j == k) return "@";
        for (const auto& layer : d.socle.size() > 1 ? std::vector<std::vector<IrrFactor>>{d.socle[0]}
                                                     : std::vector<std::vector<IrrFactor>>{}) {
            for (const auto& f : layer) {
                KSupport s = f.support();
                if ((f.kind == FactorKind::DSplus || f.kind == FactorKind::LDSplus) && s.lo && *s.lo == j) return "h";
                if ((f.kind == FactorKind::DSminus || f.kind == FactorKind::LDSminus) && s.hi && *s.hi == j)
                    return "a";
            }
        }
        return "o";
    };

    std::vector<long> ws(shown.begin(), shown.end());
    if (!W.lo) {
        add_cell("", "...");
        add_join(ws.front() - 2);
    }
    for (std::size_t i = 0; i < ws.size(); ++i) {
        add_cell(std::to_string(ws[i]), mark(ws[i]));
        if (i + 1 == ws.size()) break;
        if (ws[i + 1] == ws[i] + 2) {
            add_join(ws[i]);
        } else {
            add_join(ws[i]);
            add_cell("", "...");
            add_join(ws[i + 1] - 2);
        }
    }
    if (!W.hi) {
        add_join(ws.back());
        add_cell("", "...");
    }

    std::ostringstream os;
    os << "case " << case_name(d.label) << "  k=" << d.k << "  nu=" << d.nu << "\n";
    os << d.sequence << (d.socle.size() > 1 ? "  (non-split)" : "") << "\n";
    os << "weight " << detail::rstrip(wrow) << "\n";
    os << "module " << detail::rstrip(nrow) << "\n";
    os << "R coef " << detail::rstrip(rrow) << "\n";
    os << "L coef " << detail::rstrip(lrow) << "\n";
    os << "@ generator, h/a extremal vector of a (anti)holomorphic submodule, o other; missing arrows are zero\n";
    return os.str();
}

namespace detail {

inline void place(std::string& line, std::size_t pos, const std::string& text) {
    if (line.size() < pos + text.size()) line.resize(pos + text.size(), ' ');
    line.replace(pos, text.size(), text);
}

}  // namespace detail

// Weight-0 module of the Kronecker limit function: phi on top, constant at the bottom, weight 0 twice.
inline std::string kronecker_diagram() {
    const std::string mid = "   ... <==> o <==> o <==> o       o <==> o <==> o <==> ...";
    const std::size_t left = mid.find("o       o"), right = left + 8, c = (left + right) / 2;
    std::string top, up, weights, down, bottom;
    detail::place(top, c, "@");
    detail::place(up, c - 6, "L_0 /");
    detail::place(up, c + 2, "\\ R_0");
    detail::place(down, c - 7, "R_-2 \\");
    detail::place(down, c + 2, "/ L_2");
    detail::place(bottom, c, "c");
    std::size_t pos = mid.find('o');
    for (long w : {-6L, -4L, -2L, 2L, 4L, 6L}) {
        std::string t = std::to_string(w);
        detail::place(weights, pos + 1 - t.size(), t);
        pos = mid.find('o', pos + 1);
    }
    std::ostringstream os;
    os << "kronecker phi  k=0  (annihilated by Delta_0^2, not by Delta_0)\n";
    for (const auto& line : {top, up, mid, weights, down, bottom}) os << detail::rstrip(line) << "\n";
    os << "@ phi (weight 0), c constant (weight 0); R_0 and L_0 on c are zero\n";
    os << "K-type multiplicity: 2 at weight 0, 1 at every other even weight\n";
    return os.str();
}

inline std::map<long, int> kronecker_ktypes(long window) {
    std::map<long, int> m;
    for (long j = -window; j <= window; j += 2) m[j] = j == 0 ? 2 : 1;
    return m;
}

// Grid of Taylor coefficients A_{r,l} at s0 = k - 1, rows r = rmax..0.
inline std::string laurent_diagram(long k, long rmax) {
    if (k < 4 || k % 2 != 0) throw MathError("Laurent grid needs even k >= 4");
    if (rmax < 0) throw MathError("row count must be >= 0");
    // columns: ... -k-2 | -k | 2-k | 4-k ... k-4 | k-2 | k | k+2 ...
    std::vector<std::pair<long, std::string>> cols{{-k - 2, "o"}, {-k, "(-)"}, {2 - k, "(m)"}, {4 - k, "o"}};
    if (k - 4 > 4 - k) cols.push_back({k - 4, "o"});
    cols.insert(cols.end(), {{k - 2, "(p)"}, {k, "@"}, {k + 2, "o"}});
    auto row = [&](long r) {
        std::string s = "  ... <==>";
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::string mk = cols[i].second;
            if (r == 0 && cols[i].first == k) mk = "E";
            s += detail::center(mk, 5);
            if (i + 1 == cols.size()) break;
            long a = cols[i].first, b = cols[i + 1].first;
            if (a == -k) s += "<---";
            else if (a == k - 2) s += "--->";
            else if (b - a > 2) s += "<==> ... <==>";
            else s += "<==>";
        }
        s += "<==> ...   r=" + std::to_string(r);
        return s;
    };
    auto col_pos = [&](long w) {
        std::size_t p = 10;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i].first == w) return p + 2;
            p += 5;
            long a = cols[i].first, b = i + 1 < cols.size() ? cols[i + 1].first : a + 2;
            p += (b - a > 2) ? 13 : 4;
        }
        return p;
    };
    std::ostringstream os;
    os << "Taylor coefficients A_{r,l} at s0=" << k - 1 << "  k=" << k << "\n";
    std::string header(col_pos(k + 2) + 3, ' ');
    for (const auto& [w, mk] : cols) {
        std::string t = std::to_string(w);
        std::size_t p = col_pos(w) + 1 - t.size();
        for (std::size_t i = 0; i < t.size() && p + i < header.size(); ++i) header[p + i] = t[i];
    }
    os << "weight" << detail::rstrip(header.substr(6)) << "\n";
    for (long r = rmax; r >= 0; --r) {
        os << detail::rstrip(row(r)) << "\n";
        if (r > 0) {
            std::string diag(col_pos(k + 2) + 3, ' ');
            diag[col_pos(-k) + 3] = '\\';
            diag[col_pos(k) - 1] = '/';
            os << detail::rstrip(diag) << "\n";
        }
    }
    os << "@ weight k (killed by a power of Delta_k), E holomorphic Eisenstein series, (-) weight -k,\n";
    os << "(m)/(p) weights 2-k/k-2; \\ is R_-k and / is L_k into the row below; missing arrows are zero\n";
    return os.str();
}

}  // namespace maasslab
