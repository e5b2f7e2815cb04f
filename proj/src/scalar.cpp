#include "ckspec/scalar.hpp"

#include <cctype>

namespace ckspec {

namespace {

bool is_integer_text(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!num.empty() && num[0] == '+')
        num.erase(0, 1);
    if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+')
        throw Error(Error::Kind::Syntax, "malformed rational \"" + text + "\"");
    mpz_class d(den);
    if (d == 0)
        throw Error(Error::Kind::Syntax, "zero denominator in \"" + text + "\"");
    Rational q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Gauss& Gauss::operator/=(const Gauss& o) {
    Rational n = o.norm_sq();
    if (sgn(n) == 0)
        throw Error(Error::Kind::Precondition, "division by zero");
    Gauss t = *this * o.conj();
    re = t.re / n;
    im = t.im / n;
    return *this;
}

Gauss i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
    case 0: return Gauss(1);
    case 1: return Gauss::i();
    case 2: return Gauss(-1);
    default: return -Gauss::i();
    }
}

std::string to_string(const Gauss& z) {
    if (z.is_real())
        return to_string(z.re);
    std::string im;
    if (z.im == 1)
        im = "i";
    else if (z.im == -1)
        im = "-i";
    else
        im = to_string(z.im) + "i";
    if (sgn(z.re) == 0)
        return im;
    return to_string(z.re) + (sgn(z.im) > 0 ? "+" : "") + im;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace ckspec
