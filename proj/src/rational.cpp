#include "fauto/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace fauto {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (negative) n = -n;
    return make_rational(n, d);
}

std::string to_pq_string(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

double log_abs(const Integer& x) {
    if (x == 0) return -HUGE_VAL;
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const Rational& x) {
    return log_abs(Integer(x.get_num())) - log_abs(Integer(x.get_den()));
}

std::string to_decimal_string(const Rational& x, int digits) {
    if (digits < 1) throw std::invalid_argument("digits must be positive");
    Rational a = abs(x);
    if (a == 0) return "0";
    // Locate e with 10^e <= a < 10^(e+1), starting from a floating estimate.
    long e = static_cast<long>(std::floor(log_abs(a) / std::log(10.0)));
    auto pow10 = [](long k) {
        Integer p =pow_int(10, static_cast<unsigned long>(k < 0 ? -k : k));
        return k < 0 ? Rational(1) / Rational(p) : Rational(p);
    };
    while (pow10(e) > a) --e;
    while (pow10(e + 1) <= a) ++e;
    // scaled = round(a * 10^(digits-1-e)), an integer with `digits` digits.
    Rational scaled = a * pow10(digits - 1 - e);
    Integer q = scaled.get_num() / scaled.get_den();
    Rational frac = scaled - Rational(q);
    if (frac * 2 >= 1) q += 1;
    std::string s = q.get_str();
    if (static_cast<int>(s.size()) > digits) {
        // Rounding carried into a new digit (e.g. 9.99 -> 10.0).
        s.pop_back();
        ++e;
    }
    std::string out;
    out += s[0];
    if (digits > 1) {
        out += '.';
        out.append(s, 1, std::string::npos);
    }
    out += 'e';
    out += (e < 0 ? "-" : "+");
    long ae = e < 0 ? -e : e;
    if (ae < 10) out += '0';
    out += std::to_string(ae);
    return out;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer pow_int(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Rational pow_rational(const Rational& base, unsigned long exp) {
    return make_rational(pow_int(base.get_num(), exp), pow_int(base.get_den(), exp));
}

Rational falling_factorial(const Rational& x, int len) {
    Rational r = 1;
    for (int i = 0; i < len; ++i) r *= x - i;
    return r;
}

}  // namespace fauto
