#pragma once

#include "maasslab/catalog.hpp"
#include "maasslab/gkmod.hpp"
#include "maasslab/laurent.hpp"
#include "maasslab/maassops.hpp"
#include "maasslab/symtensor.hpp"

#include <functional>
#include <string>
#include <vector>

namespace maasslab {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::string identity;
    std::vector<Check> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline std::string diff_detail(const MFExpansion& d) {
    if (d.empty()) return "residual exact-zero";
    return "residual has " + std::to_string(d.size()) + " nonzero terms";
}

inline Check zero_check(std::string name, const MFExpansion& d) { return {std::move(name), d.empty(), diff_detail(d)}; }

inline Coefficient four_pi_power(long e, const Rational& sign_base) {
    return Coefficient::pi_power(static_cast<int>(e)).scaled(rational_pow(sign_base, e));
}

}  // namespace detail

inline const std::vector<std::string>& verify_names() {
    static const std::vector<std::string> names{"bol",         "flip-involution", "xiflip",  "dflip",
                                                "commutation", "casimir",         "estar-lift", "kronecker",
                                                "laurent-relations"};
    return names;
}

// D^{1-k} f = (-4 pi)^{k-1} R^{1-k} f
inline VerifyReport verify_bol(const MFExpansion& f) {
    const long k = f.weight();
    MFExpansion lhs = d_power(f);
    MFExpansion rhs = raise_n(f, static_cast<int>(1 - k)).scaled(detail::four_pi_power(k - 1, Rational(-4)));
    return {"bol", {detail::zero_check("D^{1-k} f = (-4 pi)^{k-1} R^{1-k} f, k=" + std::to_string(k), lhs - rhs)}};
}

inline VerifyReport verify_flip_involution(const MFExpansion& f) {
    return {"flip-involution", {detail::zero_check("F_k F_k f = f, k=" + std::to_string(f.weight()), flip(flip(f)) - f)}};
}

// Stated: xi F = -(-4 pi)^{1-k}/(-k)! D^{1-k}.  From the definitions: the opposite sign.
inline VerifyReport verify_xiflip(const MFExpansion& f) {
    const long k = f.weight();
    MFExpansion lhs = xi(flip(f));
    MFExpansion d = d_power(f);
    Coefficient c = detail::four_pi_power(1 - k, Rational(-4)).scaled(1 / factorial(-k));
    VerifyReport r{"xiflip", {}};
    std::string note = lhs.empty() && d.empty() ? " (both sides vanish)" : "";
    r.checks.push_back(detail::zero_check("xi F f = -(-4 pi)^{1-k}/(-k)! D^{1-k} f (stated sign)",
                                          lhs + d.scaled(c)));
    r.checks.back().detail += note;
    r.checks.push_back(detail::zero_check("xi F f = +(-4 pi)^{1-k}/(-k)! D^{1-k} f (sign from the definitions)",
                                          lhs - d.scaled(c)));
    r.checks.back().detail += note;
    return r;
}

// Stated: D^{1-k} F = (-k)!/(4 pi)^{1-k} xi.  From the definitions: the opposite sign.
inline VerifyReport verify_dflip(const MFExpansion& f) {
    const long k = f.weight();
    MFExpansion lhs = d_power(flip(f));
    MFExpansion x = xi(f);
    Coefficient c = Coefficient::pi_power(static_cast<int>(k - 1)).scaled(factorial(-k) / rational_pow(Rational(4), 1 - k));
    VerifyReport r{"dflip", {}};
    std::string note = lhs.empty() && x.empty() ? " (both sides vanish)" : "";
    r.checks.push_back(detail::zero_check("D^{1-k} F f = (-k)!/(4 pi)^{1-k} xi f (stated sign)", lhs - x.scaled(c)));
    r.checks.back().detail += note;
    r.checks.push_back(
        detail::zero_check("D^{1-k} F f = -(-k)!/(4 pi)^{1-k} xi f (sign from the definitions)", lhs + x.scaled(c)));
    r.checks.back().detail += note;
    return r;
}

// R_{k-2} L_k - L_{k+2} R_k = k
inline VerifyReport verify_commutation(const MFExpansion& f) {
    const long k = f.weight();
    MFExpansion d = raise(lower(f)) - lower(raise(f)).retagged(static_cast<int>(k)) - f.scaled(Rational(k));
    return {"commutation", {detail::zero_check("R L f - L R f = k f, k=" + std::to_string(k), d)}};
}

inline std::vector<std::pair<std::string, MFExpansion>> harmonic_catalog(long M) {
    MFExpansion id = inv_delta(M);
    return {{"delta", delta(M)},           {"inv_delta", id},          {"flip(inv_delta)", flip(id)},
            {"j", j_invariant(M)},         {"eis_hol(4)", eis_hol(4, M)}, {"e2star", e2star(M)},
            {"harmonic_eis(2)", harmonic_eis(2, M)}, {"harmonic_eis(4)", harmonic_eis(4, M)},
            {"coherent(7)", coherent(7, M)}, {"incoherent(7)", incoherent(7, M)}};
}

// Harmonicity against the principal-series Casimir (nu^2 - 1 with nu = 1 - k).
inline VerifyReport verify_casimir(long M) {
    VerifyReport r{"casimir", {}};
    for (const auto& [name, f] : harmonic_catalog(M)) {
        const long k = f.weight(), nu = 1 - k;
        const int eps = static_cast<int>(parity(nu - 1));
        bool ok = laplacian(f).empty();
        std::string detail = ok ? "Delta_k f = 0" : "Delta_k f != 0";
        for (long j = k - 8; j <= k + 8; j += 2) {
            if (ps_casimir(eps, Rational(nu), j) != harmonic_casimir(k) ||
                ps_casimir_shifted(eps, Rational(nu), j) != harmonic_casimir(k))
                ok = false;
        }
        r.checks.push_back({name + ": C = (k-1)^2 - 1 = " + rational_str(harmonic_casimir(k)), ok, detail});
    }
    return r;
}

// L_{m+2} E*_{m+2} = (3/pi) e_{0,m}
inline VerifyReport verify_estar_lift(long M) {
    VerifyReport r{"estar-lift", {}};
    const Coefficient three_over_pi = Coefficient::pi_power(-1).scaled(Rational(3));
    for (int m = 1; m <= 4; ++m) {
        VVExpansion d = vv_apply(OpKind::Lower, estar_vv(m, M)) - e_poly(0, m).scaled(three_over_pi);
        r.checks.push_back({"L E*_" + std::to_string(m + 2) + " = (3/pi) e_{0," + std::to_string(m) + "}", d.is_zero(),
                            d.is_zero() ? "residual exact-zero" : "residual nonzero"});
    }
    return r;
}

struct KroneckerReport {
    bool delta_sq_zero = false;
    bool delta_constant = false;
    std::optional<Coefficient> delta_value;
    bool raise_proportional = false;
    std::optional<Coefficient> raise_factor;  // R_0 phi = factor * E2*
    Rational factor_over_stated{0};           // factor / (pi/3)
    Rational delta_over_stated{0};            // Delta_0 phi / 1
    Rational l2r0{0};                         // L_2 R_0 phi, a constant
};

inline KroneckerReport kronecker_report(long M) {
    KroneckerReport k;
    MFExpansion phi = kronecker_phi(M);
    MFExpansion d = laplacian(phi);
    k.delta_sq_zero = laplacian(d).empty();
    k.delta_constant = d.size() == 1 && d.terms().begin()->first == TermKey{};
    if (k.delta_constant) {
        k.delta_value = d.terms().begin()->second;
        if (auto g = k.delta_value->as_gauss(); g && g->im == 0) k.delta_over_stated = g->re;
    }
    MFExpansion rp = raise(phi), e2 = e2star(M);
    MFExpansion lr = lower(rp);
    if (lr.size() == 1 && lr.terms().begin()->first == TermKey{})
        if (auto g = lr.terms().begin()->second.as_gauss(); g && g->im == 0) k.l2r0 = g->re;
    Coefficient c = rp.coeff(TermKey{});
    k.raise_factor = c;
    k.raise_proportional = (rp - e2.scaled(c)).empty();
    // c / (pi/3) is rational when c = q * pi
    if (c.is_single_monomial()) {
        const auto& [mono, g] = *c.terms().begin();
        if (mono.size() == 1 && mono.begin()->first == "pi" && mono.begin()->second == 1 && g.im == 0)
            k.factor_over_stated = g.re * 3;
    }
    return k;
}

inline VerifyReport verify_kronecker(long M) {
    KroneckerReport k = kronecker_report(M);
    VerifyReport r{"kronecker", {}};
    r.checks.push_back({"Delta_0^2 phi = 0", k.delta_sq_zero, k.delta_sq_zero ? "exact-zero" : "nonzero"});
    r.checks.push_back({"Delta_0 phi is constant", k.delta_constant,
                        k.delta_value ? "Delta_0 phi = " + k.delta_value->to_string() : "not constant"});
    r.checks.push_back({"R_0 phi = c E2* for a constant c", k.raise_proportional,
                        "c = " + (k.raise_factor ? k.raise_factor->to_string() : std::string("?"))});
    r.checks.push_back({"c = pi/3 (stated)", k.factor_over_stated == 1,
                        "measured c / (pi/3) = " + rational_str(k.factor_over_stated)});
    r.checks.push_back({"L_2 R_0 phi = 1 (stated)", k.l2r0 == 1,
                        "measured L_2 R_0 phi = " + rational_str(k.l2r0) + ", Delta_0 phi = " +
                            rational_str(k.delta_over_stated)});
    return r;
}

inline VerifyReport verify_laurent(unsigned prec = kDefaultPrecisionBits) {
    const long l = 4, s0 = 3;
    LaurentCheck c = laurent_check(l, s0, 2, {Real("0.9"), Real("1.3")}, 2, prec);
    const Real tol("1e-8");
    auto fmt = [](const Real& x) { return to_string(x, 3); };
    VerifyReport r{"laurent-relations", {}};
    r.checks.push_back({"L_l A_r = (s0+1-l)/2 A_{r,l-2} + 1/2 A_{r-1,l-2}", c.lower < tol, "max rel " + fmt(c.lower)});
    r.checks.push_back({"R_l A_r = (s0+1+l)/2 A_{r,l+2} + 1/2 A_{r-1,l+2}", c.raise < tol, "max rel " + fmt(c.raise)});
    r.checks.push_back({"Delta_l A_r = +lambda A_r + s0/2 A_{r-1} + 1/4 A_{r-2} (stated)", c.delta_stated < tol,
                        "max rel " + fmt(c.delta_stated)});
    r.checks.push_back({"Delta_l A_r = -lambda A_r - s0/2 A_{r-1} - 1/4 A_{r-2} (Delta = -R L)",
                        c.delta_consistent < tol, "max rel " + fmt(c.delta_consistent)});
    r.checks.push_back({"Delta_4 A_1 = (3/2) A_0 (stated)", abs(c.nilpotence_factor - Real(1.5)) < Real("1e-6"),
                        "measured factor " + to_string(c.nilpotence_factor, 12)});
    r.checks.push_back({"Delta_4 A_0 = 0", c.nilpotence_zero < tol, "max rel " + fmt(c.nilpotence_zero)});
    return r;
}

inline VerifyReport run_verify(const std::string& name, const std::optional<MFExpansion>& form, long M) {
    MFExpansion f = form ? *form : inv_delta(M);
    if (name == "bol") return verify_bol(f);
    if (name == "flip-involution") return verify_flip_involution(f);
    if (name == "xiflip") return verify_xiflip(f);
    if (name == "dflip") return verify_dflip(f);
    if (name == "commutation") return verify_commutation(form ? *form : e2star(M));
    if (name == "casimir") return verify_casimir(M);
    if (name == "estar-lift") return verify_estar_lift(M);
    if (name == "kronecker") return verify_kronecker(M);
    if (name == "laurent-relations") return verify_laurent();
    throw MathError("unknown identity '" + name + "'");
}

}  // namespace maasslab
