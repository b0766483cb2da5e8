#pragma once

#include "fauto/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fauto {

/// Univariate polynomial in n with exact coefficients, stored expanded and
/// trimmed so the last coefficient is nonzero. The zero polynomial has no
/// coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c);
    /// n(n-1)...(n-len+1); the constant 1 for len == 0.
    static Polynomial falling(int len);
    /// (n + shift)
    static Polynomial linear(const Rational& shift);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Rational coeff(int d) const;
    Rational lead() const;

    Rational operator()(const Rational& n) const;
    Rational operator()(long n) const { return (*this)(Rational(n)); }

    /// Sum of |coefficients| below degree `below` (all of them by default).
    Rational abs_sum(int below = -1) const;

    /// Smallest integer S >= 1 such that |p(n)| >= |lead|/2 * n^deg for all
    /// integers n >= S.
    Integer half_lead_threshold() const;

    /// Nonnegative integer roots in increasing order, searched exactly up to
    /// min(Cauchy bound, cap). `complete` reports whether the cap was hit.
    std::vector<long> nonnegative_integer_roots(long cap, bool* complete = nullptr) const;

    /// Coefficients in the falling-factorial basis: p(n) = sum_e b_e n^(e falling).
    std::vector<Rational> falling_basis() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& s, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "n") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Stirling numbers of the first kind (signed): z^r d^r/dz^r = sum_i s(r,i) theta^i.
Integer stirling1(int r, int i);
/// Stirling numbers of the second kind.
Integer stirling2(int d, int e);

}  // namespace fauto
