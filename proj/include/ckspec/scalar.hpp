#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ckspec {

using Rational = mpq_class;

class Error : public std::runtime_error {
public:
    enum class Kind { Syntax, Validation, Precondition, Internal };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Accepts "p", "-p", "p/q" with integer p, q (q != 0).
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Exact complex number with rational real and imaginary part.
class Gauss {
public:
    Rational re;
    Rational im;

    Gauss() = default;
    Gauss(long v) : re(v), im(0) {}
    Gauss(const Rational& r) : re(r), im(0) {}
    Gauss(const Rational& r, const Rational& i) : re(r), im(i) {}

    static Gauss i() { return Gauss(Rational(0), Rational(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    Gauss conj() const { return Gauss(re, -im); }
    Rational norm_sq() const { return re * re + im * im; }

    Gauss& operator+=(const Gauss& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Gauss& operator-=(const Gauss& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Gauss& operator*=(const Gauss& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Gauss& operator/=(const Gauss& o);

    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    friend Gauss operator-(const Gauss& a) { return Gauss(-a.re, -a.im); }
    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }
};

// i^n for any integer n.
Gauss i_pow(int n);

// "re" or "re+im*i" style human form, e.g. "1/2-3i".
std::string to_string(const Gauss& z);

double to_double(const Rational& q);

}  // namespace ckspec
