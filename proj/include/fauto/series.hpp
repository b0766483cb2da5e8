#pragma once

#include "fauto/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fauto {

/// Truncation orders: coefficients t^n z^k are known for n <= n, k <= k.
struct Truncation {
    int n = 0;
    int k = 0;
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

Truncation min(const Truncation& a, const Truncation& b);

/// Order of vanishing. std::nullopt stands for the zero series ("infinite").
using Order = std::optional<int>;

/// Truncated univariate series sum_{k<=K} c_k z^k.
class SeriesZ {
public:
    SeriesZ() : SeriesZ(0) {}
    explicit SeriesZ(int truncation);
    /// Truncation is coeffs.size() - 1; coeffs must be nonempty.
    explicit SeriesZ(std::vector<Rational> coeffs);

    int truncation() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Order ord() const;
    bool is_zero() const { return !ord().has_value(); }
    SeriesZ restrict(int truncation) const;

    friend SeriesZ operator+(const SeriesZ& a, const SeriesZ& b);
    friend SeriesZ operator-(const SeriesZ& a, const SeriesZ& b);
    friend SeriesZ operator*(const SeriesZ& a, const SeriesZ& b);
    friend SeriesZ operator*(const Rational& s, const SeriesZ& a);
    friend bool operator==(const SeriesZ& a, const SeriesZ& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
};

/// Truncated bivariate series sum_{n<=N,k<=K} c_{n,k} t^n z^k stored as a
/// fully populated rectangle. Values are immutable once built.
class SeriesTZ {
public:
    SeriesTZ() : SeriesTZ(Truncation{0, 0}) {}
    explicit SeriesTZ(Truncation trunc);
    /// Row-major coefficients, (trunc.n+1)*(trunc.k+1) entries.
    SeriesTZ(Truncation trunc, std::vector<Rational> row_major);

    template <class F>
    static SeriesTZ generate(Truncation trunc, F&& f) {
        std::vector<Rational> c;
        c.reserve(static_cast<std::size_t>(trunc.n + 1) * static_cast<std::size_t>(trunc.k + 1));
        for (int n = 0; n <= trunc.n; ++n)
            for (int k = 0; k <= trunc.k; ++k) c.emplace_back(f(n, k));
        return SeriesTZ(trunc, std::move(c));
    }
    static SeriesTZ monomial(int n, int k, const Rational& c, Truncation trunc);
    /// Row n is rows[n]; truncation in z is the smallest row truncation.
    static SeriesTZ from_rows(const std::vector<SeriesZ>& rows);

    Truncation truncation() const noexcept { return trunc_; }
    const Rational& coeff(int n, int k) const;
    SeriesZ row(int n) const;
    Order ord_t() const;
    Order ord_z() const;
    bool is_zero() const { return !ord_t().has_value(); }
    SeriesTZ restrict(Truncation trunc) const;

    friend bool operator==(const SeriesTZ& a, const SeriesTZ& b) {
        return a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

private:
    std::size_t index(int n, int k) const {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(trunc_.k + 1) + static_cast<std::size_t>(k);
    }
    Truncation trunc_;
    std::vector<Rational> c_;
};

SeriesTZ series_add(const SeriesTZ& a, const SeriesTZ& b);
SeriesTZ series_sub(const SeriesTZ& a, const SeriesTZ& b);
SeriesTZ series_scale(const Rational& s, const SeriesTZ& a);
/// Cauchy product truncated to the smaller orders in each variable.
SeriesTZ series_mul(const SeriesTZ& a, const SeriesTZ& b);
/// Cauchy product whose window also uses the vanishing orders of `a`:
/// (min(Na, Nb + ord_t a), min(Ka, Kb + ord_z a)). Every coefficient in the
/// window is exact because a's leading zero rows/columns are known.
SeriesTZ series_mul_extended(const SeriesTZ& a, const SeriesTZ& b);

inline SeriesTZ operator+(const SeriesTZ& a, const SeriesTZ& b) { return series_add(a, b); }
inline SeriesTZ operator-(const SeriesTZ& a, const SeriesTZ& b) { return series_sub(a, b); }
inline SeriesTZ operator*(const SeriesTZ& a, const SeriesTZ& b) { return series_mul(a, b); }
inline SeriesTZ operator*(const Rational& s, const SeriesTZ& a) { return series_scale(s, a); }

SeriesTZ dt_apply(const SeriesTZ& u);
SeriesTZ dz_apply(const SeriesTZ& u);
/// Derivatives of arbitrary order; truncation drops by the order.
SeriesTZ derivative(const SeriesTZ& u, int q, int r);
/// Antiderivative in t of order m with vanishing lowest m coefficients:
/// t^n -> n!/(n+m)! t^(n+m). Truncation in t grows by m.
SeriesTZ dt_antiderivative(const SeriesTZ& u, int m);

/// Exact equality of the coefficients inside `window` (which must lie inside
/// both truncations).
bool equal_on(const SeriesTZ& a, const SeriesTZ& b, Truncation window);

/// CSV with header "n,k,numerator,denominator", one row per nonzero
/// coefficient in (n,k) lexicographic order.
void write_csv(std::ostream& os, const SeriesTZ& s);
std::string to_csv(const SeriesTZ& s);
/// Reads the CSV written by write_csv; entries outside `trunc` are dropped.
SeriesTZ read_csv(std::istream& is, Truncation trunc);

}  // namespace fauto
