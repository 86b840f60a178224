#pragma once

#include "maasslab/coeffring.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace maasslab {

// Gamma(s, 4 pi lambda v)
struct GammaAtom {
    int s = 0;
    Rational lambda{1};

    friend bool operator==(const GammaAtom& a, const GammaAtom& b) { return a.s == b.s && a.lambda == b.lambda; }
    friend bool operator<(const GammaAtom& a, const GammaAtom& b) {
        return std::tie(a.s, a.lambda) < std::tie(b.s, b.lambda);
    }
};

// u^p e(n u) v^a log(v)^m exp(-2 pi w v) [Gamma(s, 4 pi lambda v)]
struct TermKey {
    int u_pow = 0;
    Rational u_freq{0};
    int v_pow = 0;
    int log_pow = 0;
    Rational v_decay{0};
    std::optional<GammaAtom> gamma;

    static TermKey q(const Rational& n) { return {0, n, 0, 0, n, std::nullopt}; }
    static TermKey qbar(const Rational& l) { return {0, -l, 0, 0, l, std::nullopt}; }
    static TermKey vpow(int a) { return {0, Rational(0), a, 0, Rational(0), std::nullopt}; }
    static TermKey log_v() { return {0, Rational(0), 0, 1, Rational(0), std::nullopt}; }

    bool is_holomorphic_q() const {
        return u_pow == 0 && v_pow == 0 && log_pow == 0 && v_decay == u_freq && !gamma;
    }

    friend bool operator==(const TermKey& a, const TermKey& b) {
        return a.u_pow == b.u_pow && a.u_freq == b.u_freq && a.v_pow == b.v_pow && a.log_pow == b.log_pow &&
               a.v_decay == b.v_decay && a.gamma == b.gamma;
    }
    friend bool operator<(const TermKey& a, const TermKey& b) {
        return std::tie(a.u_freq, a.u_pow, a.v_pow, a.log_pow, a.v_decay, a.gamma) <
               std::tie(b.u_freq, b.u_pow, b.v_pow, b.log_pow, b.v_decay, b.gamma);
    }

    std::string to_string() const {
        std::string s = "[p=" + std::to_string(u_pow) + " n=" + u_freq.get_str() + " a=" + std::to_string(v_pow) +
                        " m=" + std::to_string(log_pow) + " w=" + v_decay.get_str();
        if (gamma) s += " G(" + std::to_string(gamma->s) + "," + gamma->lambda.get_str() + ")";
        return s + "]";
    }
};

struct MFTerm {
    TermKey key;
    Coefficient coeff;
};

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

inline Rational abs_rational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

class MFExpansion {
public:
    MFExpansion() = default;
    explicit MFExpansion(int weight, Mode mode = Mode::Exact, std::optional<Rational> trunc = std::nullopt,
                         long level = 1, unsigned prec = kDefaultPrecisionBits)
        : weight_(weight), level_(level), trunc_(std::move(trunc)), mode_(mode), prec_(prec) {
        if (level_ < 1) throw MathError("level must be positive");
    }

    int weight() const { return weight_; }
    long level() const { return level_; }
    const std::optional<Rational>& trunc() const { return trunc_; }
    Mode mode() const { return mode_; }
    unsigned precision() const { return prec_; }
    bool is_finite() const { return !trunc_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<TermKey, Coefficient>& terms() const { return terms_; }

    MFExpansion retagged(int weight) const {
        MFExpansion e = *this;
        e.weight_ = weight;
        return e;
    }

    MFExpansion empty_like(int weight) const { return MFExpansion(weight, mode_, trunc_, level_, prec_); }

    Coefficient coeff(const TermKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Coefficient::zero(mode_, prec_) : it->second;
    }

    bool in_range(const Rational& n) const { return !trunc_ || abs_rational(n) <= *trunc_; }

    // Canonicalizing insertion: gamma atoms with s != 0 are rewritten, equal keys merge,
    // zero coefficients vanish, frequencies beyond the truncation are dropped.
    void add_term(const TermKey& key, const Coefficient& c) {
        if (c.mode() != mode_) throw MathError("expansion/coefficient mode mismatch");
        if (c.is_storage_zero()) return;
        if (key.u_pow < 0 || key.log_pow < 0) throw MathError("negative u or log power in " + key.to_string());
        Rational scaled = key.u_freq * level_;
        if (scaled.get_den() != 1) throw MathError("frequency " + key.u_freq.get_str() + " not in (1/N)Z for N=" +
                                                   std::to_string(level_));
        if (!in_range(key.u_freq)) return;
        if (key.gamma) {
            if (key.gamma->lambda <= 0) throw MathError("gamma atom needs lambda > 0");
            if (key.gamma->s != 0) {
                expand_atom(key, c);
                return;
            }
        }
        auto [it, inserted] = terms_.emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_storage_zero()) terms_.erase(it);
        }
    }

    void add_term(const MFTerm& t) { add_term(t.key, t.coeff); }

    void set_level(long level) {
        if (level % level_ != 0) throw MathError("level can only be refined to a multiple");
        level_ = level;
    }

    MFExpansion truncated(const Rational& M) const {
        MFExpansion e(weight_, mode_, trunc_ && *trunc_ < M ? *trunc_ : M, level_, prec_);
        for (const auto& [k, c] : terms_) e.add_term(k, c);
        return e;
    }

    MFExpansion& operator+=(const MFExpansion& o) {
        check_compatible(o);
        level_ = lcm_long(level_, o.level_);
        if (o.trunc_ && (!trunc_ || *o.trunc_ < *trunc_)) {
            trunc_ = o.trunc_;
            prune();
        }
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }

    MFExpansion& operator-=(const MFExpansion& o) { return *this += o.scaled(Rational(-1)); }

    MFExpansion scaled(const Coefficient& s) const {
        MFExpansion e = empty_like(weight_);
        Coefficient sc = coerce(s, mode_, prec_);
        for (const auto& [k, c] : terms_) e.add_term(k, c * sc);
        return e;
    }
    MFExpansion scaled(const Rational& q) const {
        MFExpansion e = empty_like(weight_);
        for (const auto& [k, c] : terms_) e.add_term(k, c.scaled(q));
        return e;
    }

    friend MFExpansion operator+(MFExpansion a, const MFExpansion& b) { return a += b; }
    friend MFExpansion operator-(MFExpansion a, const MFExpansion& b) { return a -= b; }

    friend bool operator==(const MFExpansion& a, const MFExpansion& b) {
        return a.weight_ == b.weight_ && a.mode_ == b.mode_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }

    // Terms restricted to one frequency.
    std::vector<MFTerm> at_frequency(const Rational& n) const {
        std::vector<MFTerm> out;
        for (const auto& [k, c] : terms_)
            if (k.u_freq == n) out.push_back({k, c});
        return out;
    }

    std::vector<Rational> frequencies() const {
        std::vector<Rational> out;
        for (const auto& [k, c] : terms_)
            if (out.empty() || out.back() != k.u_freq) out.push_back(k.u_freq);
        return out;
    }

    Rational max_abs_frequency() const {
        Rational m = 0;
        for (const auto& [k, c] : terms_) m = std::max(m, abs_rational(k.u_freq));
        return m;
    }

    std::string to_string() const {
        std::string s = "MFExpansion(weight=" + std::to_string(weight_) + ", level=" + std::to_string(level_) +
                        ", trunc=" + (trunc_ ? trunc_->get_str() : std::string("inf")) + ")\n";
        for (const auto& [k, c] : terms_) s += "  " + c.to_string() + " * " + k.to_string() + "\n";
        return s;
    }

private:
    void check_compatible(const MFExpansion& o) const {
        if (weight_ != o.weight_)
            throw MathError("weight mismatch: " + std::to_string(weight_) + " vs " + std::to_string(o.weight_));
        if (mode_ != o.mode_) throw MathError("mode mismatch in expansion arithmetic");
    }

    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = in_range(it->first.u_freq) ? std::next(it) : terms_.erase(it);
    }

    void expand_atom(const TermKey& key, const Coefficient& c) {
        const int s = key.gamma->s;
        const Rational& lam = key.gamma->lambda;
        TermKey base = key;
        base.gamma.reset();
        if (s >= 1) {
            // Gamma(s,x) = (s-1)! e^{-x} sum_{j<s} x^j / j!,  x = 4 pi lambda v
            for (int j = 0; j < s; ++j) {
                TermKey k = base;
                k.v_pow += j;
                k.v_decay += 2 * lam;
                Rational q = factorial(s - 1) / factorial(j) * rational_pow(4 * lam, j);
                add_term(k, c * coerce(Coefficient::pi_power(j), c).scaled(q));
            }
            return;
        }
        // Gamma(s,x) = (Gamma(s+1,x) - x^s e^{-x}) / s
        TermKey up = key;
        up.gamma->s = s + 1;
        if (s + 1 == 0) up.gamma = GammaAtom{0, lam};
        add_term(up, c.scaled(Rational(1) / s));
        TermKey el = base;
        el.v_pow += s;
        el.v_decay += 2 * lam;
        // -(1/s) (4 pi lambda)^s v^s e^{-x}
        add_term(el, c * coerce(Coefficient::pi_power(s), c).scaled(-rational_pow(4 * lam, s) / Rational(s)));
    }

    int weight_ = 0;
    long level_ = 1;
    std::optional<Rational> trunc_;
    Mode mode_ = Mode::Exact;
    unsigned prec_ = kDefaultPrecisionBits;
    std::map<TermKey, Coefficient> terms_;
};

inline MFExpansion canonicalize(const MFExpansion& e) {
    MFExpansion out = e.empty_like(e.weight());
    for (const auto& [k, c] : e.terms()) out.add_term(k, c);
    return out;
}

inline MFExpansion to_float(const MFExpansion& e, const SymbolBindings& b, unsigned prec) {
    PrecisionScope scope(prec);
    MFExpansion out(e.weight(), Mode::Float, e.trunc(), e.level(), prec);
    for (const auto& [k, c] : e.terms()) out.add_term(k, c.to_float(b, prec));
    return out;
}

inline MFExpansion constant_expansion(int weight, const Coefficient& c, Mode mode = Mode::Exact,
                                      unsigned prec = kDefaultPrecisionBits) {
    MFExpansion e(weight, mode, std::nullopt, 1, prec);
    e.add_term(TermKey{}, coerce(c, mode, prec));
    return e;
}

// Termwise product; one factor must be complete (no truncation loss), and no term pair may
// carry two gamma atoms.
inline MFExpansion mul(const MFExpansion& a, const MFExpansion& b) {
    if (a.mode() != b.mode()) throw MathError("mode mismatch in mul");
    if (!a.is_finite() && !b.is_finite()) throw MathError("mul needs at least one complete factor");
    std::optional<Rational> trunc;
    if (!a.is_finite()) trunc = *a.trunc() - b.max_abs_frequency();
    if (!b.is_finite()) trunc = *b.trunc() - a.max_abs_frequency();
    if (trunc && *trunc < 0) trunc = Rational(0);
    MFExpansion out(a.weight() + b.weight(), a.mode(), trunc, lcm_long(a.level(), b.level()), a.precision());
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.gamma && kb.gamma) throw MathError("product of two gamma atoms is outside the term algebra");
            TermKey k{ka.u_pow + kb.u_pow, ka.u_freq + kb.u_freq, ka.v_pow + kb.v_pow, ka.log_pow + kb.log_pow,
                      ka.v_decay + kb.v_decay, ka.gamma ? ka.gamma : kb.gamma};
            out.add_term(k, ca * cb);
        }
    }
    return out;
}

// ---- harmonic shape -------------------------------------------------------

struct PrincipalPart {
    int weight = 0;
    std::map<Rational, Coefficient> coeffs;  // n < 0 -> c^+(n)
};

enum class Space { Hk, Hsharp, Hmg, NotHarmonicShape };

inline const char* space_name(Space s) {
    switch (s) {
        case Space::Hk: return "H_k";
        case Space::Hsharp: return "H_k#";
        case Space::Hmg: return "H_k^mg";
        default: return "not-harmonic-shape";
    }
}

struct Decomposition {
    int weight = 0;
    bool harmonic_shape = false;
    std::string reason;
    std::map<Rational, Coefficient> c_plus;
    // n = 0: coefficient of v^{1-k} (or of -log v when k = 1); n != 0: coefficient of Gamma(1-k, -4 pi n v) q^n
    std::map<Rational, Coefficient> c_minus;
    PrincipalPart principal;
    bool in_Hk = false;
    bool in_Hsharp = false;
    Space space = Space::NotHarmonicShape;
};

// Canonical expansion of Gamma(s, -4 pi n v) q^n, when it lies in the term algebra.
inline std::optional<MFExpansion> gamma_template(int weight, int s, const Rational& n, Mode mode, long level,
                                                 unsigned prec) {
    MFExpansion t(weight, mode, std::nullopt, level, prec);
    Coefficient one = coerce(Coefficient::integer(1), mode, prec);
    if (n < 0) {
        TermKey k = TermKey::q(n);
        k.gamma = GammaAtom{s, -n};
        t.add_term(k, one);
        return t;
    }
    if (n == 0 || s < 1) return std::nullopt;
    // Gamma(s,-y) = (s-1)! e^{y} sum_{j<s} (-y)^j / j!,  y = 4 pi n v
    for (int j = 0; j < s; ++j) {
        TermKey k = TermKey::q(n);
        k.v_pow = j;
        k.v_decay -= 2 * n;
        Rational q = factorial(s - 1) / factorial(j) * rational_pow(-4 * n, j);
        t.add_term(k, coerce(Coefficient::pi_power(j), mode, prec).scaled(q));
    }
    return t;
}

namespace detail {

inline bool residual_vanishes(const MFExpansion& r) {
    if (r.mode() == Mode::Exact) return r.empty();
    for (const auto& [k, c] : r.terms())
        if (!c.is_zero(Real("1e-25")).zero) return false;
    return true;
}

}  // namespace detail

inline Decomposition decompose(const MFExpansion& f) {
    Decomposition d;
    d.weight = f.weight();
    d.principal.weight = f.weight();
    const int k = f.weight();
    auto fail = [&](std::string why) {
        d.harmonic_shape = false;
        d.reason = std::move(why);
        d.space = Space::NotHarmonicShape;
        return d;
    };
    for (const auto& [key, c] : f.terms())
        if (key.u_pow != 0) return fail("u-power term " + key.to_string());

    for (const Rational& n : f.frequencies()) {
        MFExpansion rest = f.empty_like(k);
        rest.set_level(f.level());
        for (const auto& t : f.at_frequency(n)) {
            if (t.key == TermKey::q(n)) {
                d.c_plus[n] = t.coeff;
                continue;
            }
            rest.add_term(t.key, t.coeff);
        }
        if (rest.empty()) continue;
        if (n == 0) {
            TermKey expect = k == 1 ? TermKey::log_v() : TermKey::vpow(1 - k);
            if (rest.size() != 1 || !(rest.terms().begin()->first == expect))
                return fail("unexpected constant-term structure");
            Coefficient c = rest.terms().begin()->second;
            d.c_minus[n] = k == 1 ? -c : c;
            continue;
        }
        auto tmpl = gamma_template(k, 1 - k, n, f.mode(), f.level(), f.precision());
        if (!tmpl) return fail("nonholomorphic term at frequency " + n.get_str() + " not representable");
        const auto& [pivot, tc] = *tmpl->terms().begin();
        Coefficient fc = rest.coeff(pivot);
        Coefficient cm = f.mode() == Mode::Exact ? fc * tc.inverse_monomial()
                                                 : Coefficient::floating(fc.value() / tc.value(), f.precision());
        MFExpansion resid = rest - tmpl->scaled(cm);
        if (!detail::residual_vanishes(resid))
            return fail("frequency " + n.get_str() + " is not of the form c*Gamma(1-k,-4 pi n v) q^n");
        d.c_minus[n] = cm;
    }
    d.harmonic_shape = true;
    for (const auto& [n, c] : d.c_plus)
        if (n < 0) d.principal.coeffs[n] = c;
    d.in_Hk = true;
    for (const auto& [n, c] : d.c_minus)
        if (n >= 0) d.in_Hk = false;
    d.in_Hsharp = d.principal.coeffs.empty();
    d.space = d.in_Hk ? Space::Hk : (d.in_Hsharp ? Space::Hsharp : Space::Hmg);
    return d;
}

// Inverse of decompose on coefficient data.
inline MFExpansion build_harmonic(int k, const std::map<Rational, Coefficient>& c_plus,
                                  const std::map<Rational, Coefficient>& c_minus, std::optional<Rational> trunc,
                                  Mode mode = Mode::Exact, long level = 1, unsigned prec = kDefaultPrecisionBits) {
    MFExpansion f(k, mode, std::move(trunc), level, prec);
    for (const auto& [n, c] : c_plus) f.add_term(TermKey::q(n), c);
    for (const auto& [n, c] : c_minus) {
        if (n == 0) {
            if (k == 1)
                f.add_term(TermKey::log_v(), -c);
            else
                f.add_term(TermKey::vpow(1 - k), c);
            continue;
        }
        auto tmpl = gamma_template(k, 1 - k, n, mode, level, prec);
        if (!tmpl) throw MathError("Gamma(1-k,-4 pi n v) q^n is not representable for k=" + std::to_string(k) +
                                   ", n=" + n.get_str());
        f += tmpl->scaled(c);
    }
    return f;
}

}  // namespace maasslab
