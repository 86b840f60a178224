#pragma once

#include "maasslab/numeric.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maasslab {

using Rational = mpq_class;

enum class Mode { Exact, Float };

inline const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw MathError("bad rational '" + s + "'");
    if (q.get_den() == 0) throw MathError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

inline Real to_real(const Rational& q) {
    Real n(q.get_num().get_str()), d(q.get_den().get_str());
    return n / d;
}

// ---- symbols -------------------------------------------------------------

namespace detail {

inline bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace detail

// Formal real transcendentals: pi, zeta3, zeta5, ..., log2, log3, ..., euler_gamma,
// Lambda_ratio_D (= Lambda'(1,chi_D)/Lambda(1,chi_D)).
inline bool valid_symbol_name(const std::string& n) {
    if (n == "pi" || n == "euler_gamma") return true;
    if (n.rfind("zeta", 0) == 0 && detail::all_digits(n.substr(4))) {
        long v = std::stol(n.substr(4));
        return v >= 3 && v % 2 == 1;
    }
    if (n.rfind("log", 0) == 0 && detail::all_digits(n.substr(3))) return std::stol(n.substr(3)) >= 2;
    if (n.rfind("Lambda_ratio_", 0) == 0 && detail::all_digits(n.substr(13))) return true;
    return false;
}

class SymbolRegistry {
public:
    static SymbolRegistry& instance() {
        static SymbolRegistry reg;
        return reg;
    }

    void add(const std::string& name) {
        if (!valid_symbol_name(name)) throw MathError("unknown symbol '" + name + "'");
        std::lock_guard lock(mu_);
        if (std::find(order_.begin(), order_.end(), name) == order_.end()) order_.push_back(name);
    }

    bool contains(const std::string& name) const {
        std::lock_guard lock(mu_);
        return std::find(order_.begin(), order_.end(), name) != order_.end();
    }

    std::vector<std::string> names() const {
        std::lock_guard lock(mu_);
        return order_;
    }

private:
    SymbolRegistry() { order_.push_back("pi"); }
    mutable std::mutex mu_;
    std::vector<std::string> order_;
};

struct Symbol {
    std::string name;

    static Symbol named(const std::string& n) {
        SymbolRegistry::instance().add(n);
        return Symbol{n};
    }
    static Symbol pi() { return named("pi"); }
    static Symbol zeta(int n) {
        if (n < 3 || n % 2 == 0) throw MathError("zeta symbol only for odd n >= 3");
        return named("zeta" + std::to_string(n));
    }
    static Symbol log(long n) { return named("log" + std::to_string(n)); }
    static Symbol euler_gamma() { return named("euler_gamma"); }
    static Symbol lambda_ratio(long D) { return named("Lambda_ratio_" + std::to_string(D)); }
};

// symbol name -> exponent; only pi may carry a negative exponent
using Monomial = std::map<std::string, int>;

struct Gauss {
    Rational re{0};
    Rational im{0};

    bool is_zero() const { return re == 0 && im == 0; }
    Gauss conj() const { return {re, -im}; }
    friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gauss operator*(const Gauss& a, const Gauss& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Gauss operator-(const Gauss& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
    Gauss inverse() const {
        Rational d = re * re + im * im;
        if (d == 0) throw MathError("division by zero");
        return {re / d, -im / d};
    }
};

struct SymbolBindings {
    std::map<std::string, Real> values;

    // Lambda_ratio_* has no closed form and must be bound explicitly.
    Real lookup(const std::string& name) const {
        if (auto it = values.find(name); it != values.end()) return it->second;
        if (name == "pi") return real_pi();
        if (name == "euler_gamma") return real_euler_gamma();
        if (name.rfind("zeta", 0) == 0) {
            Real r;
            mpfr_zeta_ui(r.backend().data(), std::stoul(name.substr(4)), MPFR_RNDN);
            return r;
        }
        if (name.rfind("log", 0) == 0) return boost::multiprecision::log(Real(std::stol(name.substr(3))));
        throw MathError("unbound symbol '" + name + "'");
    }
};

enum class Certainty { Exact, Numeric };

struct ZeroTest {
    bool zero;
    Certainty certainty;
};

class Coefficient {
public:
    Coefficient() = default;

    static Coefficient rational(const Rational& re, const Rational& im = 0) {
        Coefficient c;
        c.add_term({}, Gauss{re, im});
        return c;
    }
    static Coefficient integer(long n) { return rational(Rational(n)); }
    static Coefficient imag_unit() { return rational(0, 1); }
    static Coefficient monomial(const Monomial& mono, const Gauss& g) {
        for (const auto& [name, e] : mono) {
            SymbolRegistry::instance().add(name);
            if (e < 0 && name != "pi") throw MathError("negative exponent on " + name);
        }
        Coefficient c;
        c.add_term(mono, g);
        return c;
    }
    static Coefficient symbol(const Symbol& s, int e = 1) {
        return e == 0 ? integer(1) : monomial({{s.name, e}}, Gauss{1, 0});
    }
    static Coefficient pi_power(int e) { return symbol(Symbol::pi(), e); }
    static Coefficient floating(Complex z, unsigned prec_bits) {
        Coefficient c;
        c.mode_ = Mode::Float;
        c.prec_ = prec_bits;
        c.value_ = std::move(z);
        return c;
    }
    static Coefficient zero(Mode m, unsigned prec_bits = kDefaultPrecisionBits) {
        return m == Mode::Exact ? Coefficient() : floating(Complex(Real(0)), prec_bits);
    }

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::Exact; }
    unsigned precision() const { return prec_; }
    const std::map<Monomial, Gauss>& terms() const { return terms_; }
    const Complex& value() const { return value_; }

    bool is_exact_zero() const { return mode_ == Mode::Exact && terms_.empty(); }

    // Storage-level zero (used for dropping terms); floats are dropped only when exactly 0.
    bool is_storage_zero() const {
        return mode_ == Mode::Exact ? terms_.empty() : (value_.re == 0 && value_.im == 0);
    }

    ZeroTest is_zero(const Real& tol = Real("1e-30"), const Real& scale = Real(1)) const {
        if (mode_ == Mode::Exact) return {terms_.empty(), Certainty::Exact};
        return {abs(value_) < tol * scale, Certainty::Numeric};
    }

    std::optional<Gauss> as_gauss() const {
        if (mode_ != Mode::Exact) return std::nullopt;
        if (terms_.empty()) return Gauss{};
        if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
        return std::nullopt;
    }

    bool is_single_monomial() const { return mode_ == Mode::Exact && terms_.size() == 1; }

    // Inverse of a single monomial whose only symbol is pi.
    Coefficient inverse_monomial() const {
        if (!is_single_monomial()) throw MathError("inverse of a non-monomial coefficient");
        const auto& [mono, g] = *terms_.begin();
        Monomial inv;
        for (const auto& [name, e] : mono) {
            if (name != "pi") throw MathError("cannot invert symbol " + name);
            inv[name] = -e;
        }
        return monomial(inv, g.inverse());
    }

    Coefficient conj() const {
        if (mode_ == Mode::Float) return floating(maasslab::conj(value_), prec_);
        Coefficient c;
        for (const auto& [m, g] : terms_) c.terms_.emplace(m, g.conj());
        return c;
    }

    Coefficient to_float(const SymbolBindings& b, unsigned prec_bits) const {
        if (mode_ == Mode::Float) return *this;
        Complex z(Real(0));
        for (const auto& [mono, g] : terms_) {
            Real f(1);
            for (const auto& [name, e] : mono) f *= boost::multiprecision::pow(b.lookup(name), e);
            z += Complex(to_real(g.re) * f, to_real(g.im) * f);
        }
        return floating(std::move(z), prec_bits);
    }

    Complex evaluate(const SymbolBindings& b) const {
        return mode_ == Mode::Float ? value_ : to_float(b, prec_).value_;
    }

    Coefficient& operator+=(const Coefficient& o) {
        check_mode(o);
        if (mode_ == Mode::Float) {
            value_ += o.value_;
        } else {
            for (const auto& [m, g] : o.terms_) add_term(m, g);
        }
        return *this;
    }
    Coefficient& operator-=(const Coefficient& o) { return *this += -o; }

    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator-(const Coefficient& a) {
        if (a.mode_ == Mode::Float) return floating(-a.value_, a.prec_);
        Coefficient c;
        for (const auto& [m, g] : a.terms_) c.terms_.emplace(m, -g);
        return c;
    }
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        a.check_mode(b);
        if (a.mode_ == Mode::Float) return floating(a.value_ * b.value_, a.prec_);
        Coefficient c;
        for (const auto& [ma, ga] : a.terms_) {
            for (const auto& [mb, gb] : b.terms_) {
                Monomial m = ma;
                for (const auto& [name, e] : mb) {
                    int& slot = m[name];
                    slot += e;
                    if (slot == 0) m.erase(name);
                }
                c.add_term(m, ga * gb);
            }
        }
        return c;
    }
    Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }

    Coefficient scaled(const Rational& q) const {
        if (mode_ == Mode::Float) return floating(value_ * to_real(q), prec_);
        if (q == 0) return {};
        Coefficient c;
        for (const auto& [m, g] : terms_) c.terms_.emplace(m, Gauss{g.re * q, g.im * q});
        return c;
    }

    friend bool operator==(const Coefficient& a, const Coefficient& b) {
        if (a.mode_ != b.mode_) return false;
        if (a.mode_ == Mode::Float) return a.value_.re == b.value_.re && a.value_.im == b.value_.im;
        return a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (mode_ == Mode::Float) {
            return "(" + maasslab::to_string(value_.re, 20) + " + " + maasslab::to_string(value_.im, 20) + "i)";
        }
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [mono, g] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << g.re.get_str();
            if (g.im != 0) os << (g.im > 0 ? "+" : "") << g.im.get_str() << "i";
            os << ")";
            for (const auto& [name, e] : mono) os << "*" << name << (e != 1 ? "^" + std::to_string(e) : "");
        }
        return os.str();
    }

private:
    void check_mode(const Coefficient& o) const {
        if (mode_ != o.mode_) throw MathError("coefficient mode mismatch (exact vs float)");
        if (mode_ == Mode::Float && prec_ != o.prec_) throw MathError("float precision mismatch");
    }

    void add_term(const Monomial& m, const Gauss& g) {
        if (g.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, g);
        if (!inserted) {
            it->second = it->second + g;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Mode mode_ = Mode::Exact;
    unsigned prec_ = kDefaultPrecisionBits;
    std::map<Monomial, Gauss> terms_;
    Complex value_;
};

// Bring an exact constant (rationals and pi powers) into the mode of `like`.
inline Coefficient coerce(const Coefficient& exact_const, const Coefficient& like) {
    if (like.mode() == Mode::Exact) return exact_const;
    return exact_const.to_float(SymbolBindings{}, like.precision());
}

inline Coefficient coerce(const Coefficient& exact_const, Mode mode, unsigned prec) {
    if (mode == Mode::Exact) return exact_const;
    return exact_const.to_float(SymbolBindings{}, prec);
}

// ---- exact constants -----------------------------------------------------

inline Rational factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

inline Rational binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

inline Rational rational_pow(const Rational& q, long e) {
    Rational r = 1, b = q;
    if (e < 0) {
        if (q == 0) throw MathError("0 to a negative power");
        b = 1 / q;
        e = -e;
    }
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Bernoulli numbers B_0..B_n with B_1 = -1/2 (Akiyama–Tanigawa).
inline std::vector<Rational> bernoulli_numbers(int n) {
    std::vector<Rational> a(n + 1), out(n + 1);
    for (int m = 0; m <= n; ++m) {
        a[m] = Rational(1, m + 1);
        for (int j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
        out[m] = a[0];
    }
    if (n >= 1) out[1] = Rational(-1, 2);
    return out;
}

// i^e for integer e.
inline Coefficient i_power(long e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return Coefficient::integer(1);
        case 1: return Coefficient::rational(0, 1);
        case 2: return Coefficient::integer(-1);
        default: return Coefficient::rational(0, -1);
    }
}

// zeta(n) as an exact coefficient: rational * pi^n for even n, a named symbol for odd n >= 3.
inline Coefficient zeta_value(int n) {
    if (n < 2) throw MathError("zeta_value needs n >= 2");
    if (n % 2 == 1) return Coefficient::symbol(Symbol::zeta(n));
    auto b = bernoulli_numbers(n);
    // zeta(2m) = (-1)^{m+1} B_{2m} (2pi)^{2m} / (2 (2m)!)
    int m = n / 2;
    Rational q = b[n] * rational_pow(Rational(2), n) / (2 * factorial(n));
    if (m % 2 == 0) q = -q;
    q.canonicalize();
    return Coefficient::pi_power(n).scaled(q);
}

}  // namespace maasslab
