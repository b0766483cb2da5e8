#include "fauto/polynomial.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace fauto {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Rational& shift) { return Polynomial({shift, Rational(1)}); }

Polynomial Polynomial::falling(int len) {
    Polynomial p = constant(1);
    for (int i = 0; i < len; ++i) p = p * linear(Rational(-i));
    return p;
}

Rational Polynomial::coeff(int d) const {
    if (d < 0 || d > degree()) return 0;
    return c_[static_cast<std::size_t>(d)];
}

Rational Polynomial::lead() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational Polynomial::operator()(const Rational& n) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * n + *it;
    return acc;
}

Rational Polynomial::abs_sum(int below) const {
    Rational s = 0;
    int lim = below < 0 ? static_cast<int>(c_.size()) : std::min(below, static_cast<int>(c_.size()));
    for (int d = 0; d < lim; ++d) s += abs(c_[static_cast<std::size_t>(d)]);
    return s;
}

Integer Polynomial::half_lead_threshold() const {
    if (degree() <= 0) return 1;
    // For n >= 1: sum_{e<d} |c_e| n^e <= (sum |c_e|) n^(d-1) <= |lead|/2 n^d
    // as soon as n >= 2 sum |c_e| / |lead|.
    Rational t = 2 * abs_sum(degree()) / abs(lead());
    Integer ceil_t = t.get_num() / t.get_den();
    if (Rational(ceil_t) < t) ceil_t += 1;
    return ceil_t < 1 ? Integer(1) : ceil_t;
}

std::vector<long> Polynomial::nonnegative_integer_roots(long cap, bool* complete) const {
    std::vector<long> roots;
    if (complete) *complete = true;
    if (is_zero() || degree() == 0) return roots;
    Rational bound = 1;
    for (int d = 0; d < degree(); ++d) bound = std::max(bound, Rational(1 + abs(c_[static_cast<std::size_t>(d)] / lead())));
    Integer b = bound.get_num() / bound.get_den() + 1;
    long limit = cap;
    if (b.fits_slong_p() && b.get_si() <= cap)
        limit = b.get_si();
    else if (complete)
        *complete = false;
    for (long n = 0; n <= limit; ++n)
        if ((*this)(n) == 0) roots.push_back(n);
    return roots;
}

std::vector<Rational> Polynomial::falling_basis() const {
    std::vector<Rational> b(c_.size(), Rational(0));
    for (std::size_t d = 0; d < c_.size(); ++d) {
        if (c_[d] == 0) continue;
        for (std::size_t e = 0; e <= d; ++e)
            b[e] += c_[d] * Rational(stirling2(static_cast<int>(d), static_cast<int>(e)));
    }
    return b;
}

Polynomial Polynomial::operator-() const {
    std::vector<Rational> r = c_;
    for (auto& x : r) x = -x;
    return Polynomial(std::move(r));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> r = p.c_;
    for (auto& x : r) x *= s;
    return Polynomial(std::move(r));
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        const Rational& c = c_[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool unit = a == 1 && d > 0;
        if (!unit) os << a.get_str();
        if (d > 0) {
            if (!unit) os << "*";
            os << var;
            if (d > 1) os << "^" << d;
        }
    }
    return os.str();
}

Integer stirling1(int r, int i) {
    thread_local std::map<std::pair<int, int>, Integer> memo;
    if (r == 0 && i == 0) return 1;
    if (r <= 0 || i <= 0 || i > r) return 0;
    auto key = std::make_pair(r, i);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // s(r,i) = s(r-1,i-1) - (r-1) s(r-1,i)
    Integer v = stirling1(r - 1, i - 1) - Integer(r - 1) * stirling1(r - 1, i);
    memo.emplace(key, v);
    return v;
}

Integer stirling2(int d, int e) {
    thread_local std::map<std::pair<int, int>, Integer> memo;
    if (d == 0 && e == 0) return 1;
    if (d <= 0 || e <= 0 || e > d) return 0;
    auto key = std::make_pair(d, e);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Integer v = Integer(e) * stirling2(d - 1, e) + stirling2(d - 1, e - 1);
    memo.emplace(key, v);
    return v;
}

}  // namespace fauto
