#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

namespace maasslab {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

inline unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

inline unsigned current_precision_bits() {
    return static_cast<unsigned>(std::ceil(Real::default_precision() / 0.30102999566398120));
}

// Sets the working precision of newly created Reals for the lifetime of the scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
        Real::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// MAASSLAB_PREC overrides the requested precision when set to a positive integer.
inline unsigned effective_precision(unsigned requested) {
    if (const char* env = std::getenv("MAASSLAB_PREC")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 32) return static_cast<unsigned>(v);
    }
    return requested;
}

inline Real real_pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real real_euler_gamma() {
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real real_epsilon() {
    return Real(boost::multiprecision::ldexp(Real(1), -static_cast<int>(current_precision_bits())));
}

struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r), im(0) {}

    static Complex I() { return {Real(0), Real(1)}; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        Real d = o.re * o.re + o.im * o.im;
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
    Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator*(Complex a, const Real& s) { return a *= s; }
    friend Complex operator*(const Real& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const Real& s) { return a /= s; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return sqrt(norm(z)); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

inline Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

inline Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

// Principal branch.
inline Complex pow(const Complex& z, const Real& a) {
    if (z.re == 0 && z.im == 0) return Complex(Real(0));
    Real lr = log(norm(z)) / 2;
    Real th = arg(z);
    Real m = exp(a * lr);
    return {m * cos(a * th), m * sin(a * th)};
}

inline Complex pow(const Complex& z, long n) {
    if (n < 0) return Complex(Real(1)) / pow(z, -n);
    Complex result(Real(1)), base = z;
    while (n) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

// e(x) = exp(2 pi i x)
inline Complex expi2pi(const Real& x) {
    Real t = 2 * real_pi() * x;
    return {cos(t), sin(t)};
}

inline std::string to_string(const Real& x, int digits = 40) {
    return x.str(digits, std::ios_base::scientific);
}

}  // namespace maasslab
