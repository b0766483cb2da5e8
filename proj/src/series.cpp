#include "fauto/series.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fauto {

Truncation min(const Truncation& a, const Truncation& b) {
    return {std::min(a.n, b.n), std::min(a.k, b.k)};
}

// ---------------------------------------------------------------- SeriesZ

SeriesZ::SeriesZ(int truncation) {
    if (truncation < 0) throw std::invalid_argument("negative truncation order");
    c_.assign(static_cast<std::size_t>(truncation) + 1, Rational(0));
}

SeriesZ::SeriesZ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("SeriesZ needs at least one coefficient");
}

Order SeriesZ::ord() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) return static_cast<int>(k);
    return std::nullopt;
}

SeriesZ SeriesZ::restrict(int truncation) const {
    if (truncation > this->truncation()) throw std::invalid_argument("cannot raise truncation order");
    return SeriesZ(std::vector<Rational>(c_.begin(), c_.begin() + truncation + 1));
}

SeriesZ operator+(const SeriesZ& a, const SeriesZ& b) {
    int K = std::min(a.truncation(), b.truncation());
    std::vector<Rational> c(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) c[static_cast<std::size_t>(k)] = a[k] + b[k];
    return SeriesZ(std::move(c));
}

SeriesZ operator-(const SeriesZ& a, const SeriesZ& b) { return a + Rational(-1) * b; }

SeriesZ operator*(const SeriesZ& a, const SeriesZ& b) {
    int K = std::min(a.truncation(), b.truncation());
    std::vector<Rational> c(static_cast<std::size_t>(K) + 1, Rational(0));
    for (int i = 0; i <= K; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= K; ++j)
            if (b[j] != 0) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
    return SeriesZ(std::move(c));
}

SeriesZ operator*(const Rational& s, const SeriesZ& a) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return SeriesZ(std::move(c));
}

// --------------------------------------------------------------- SeriesTZ

SeriesTZ::SeriesTZ(Truncation trunc) : trunc_(trunc) {
    if (trunc.n < 0 || trunc.k < 0) throw std::invalid_argument("negative truncation order");
    c_.assign(static_cast<std::size_t>(trunc.n + 1) * static_cast<std::size_t>(trunc.k + 1), Rational(0));
}

SeriesTZ::SeriesTZ(Truncation trunc, std::vector<Rational> row_major) : trunc_(trunc), c_(std::move(row_major)) {
    if (trunc.n < 0 || trunc.k < 0) throw std::invalid_argument("negative truncation order");
    if (c_.size() != static_cast<std::size_t>(trunc.n + 1) * static_cast<std::size_t>(trunc.k + 1))
        throw std::invalid_argument("coefficient table does not match truncation");
}

SeriesTZ SeriesTZ::monomial(int n, int k, const Rational& c, Truncation trunc) {
    return generate(trunc, [&](int i, int j) -> Rational { return (i == n && j == k) ? c : Rational(0); });
}

SeriesTZ SeriesTZ::from_rows(const std::vector<SeriesZ>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows needs at least one row");
    int K = rows.front().truncation();
    for (const auto& r : rows) K = std::min(K, r.truncation());
    Truncation t{static_cast<int>(rows.size()) - 1, K};
    return generate(t, [&](int n, int k) -> Rational { return rows[static_cast<std::size_t>(n)][k]; });
}

const Rational& SeriesTZ::coeff(int n, int k) const {
    if (n < 0 || k < 0 || n > trunc_.n || k > trunc_.k) throw std::out_of_range("coefficient outside truncation");
    return c_[index(n, k)];
}

SeriesZ SeriesTZ::row(int n) const {
    std::vector<Rational> r(static_cast<std::size_t>(trunc_.k) + 1);
    for (int k = 0; k <= trunc_.k; ++k) r[static_cast<std::size_t>(k)] = coeff(n, k);
    return SeriesZ(std::move(r));
}

Order SeriesTZ::ord_t() const {
    for (int n = 0; n <= trunc_.n; ++n)
        for (int k = 0; k <= trunc_.k; ++k)
            if (c_[index(n, k)] != 0) return n;
    return std::nullopt;
}

Order SeriesTZ::ord_z() const {
    for (int k = 0; k <= trunc_.k; ++k)
        for (int n = 0; n <= trunc_.n; ++n)
            if (c_[index(n, k)] != 0) return k;
    return std::nullopt;
}

SeriesTZ SeriesTZ::restrict(Truncation trunc) const {
    if (trunc.n > trunc_.n || trunc.k > trunc_.k) throw std::invalid_argument("cannot raise truncation order");
    return generate(trunc, [&](int n, int k) -> Rational { return coeff(n, k); });
}

// ------------------------------------------------------------- operations

SeriesTZ series_add(const SeriesTZ& a, const SeriesTZ& b) {
    return SeriesTZ::generate(min(a.truncation(), b.truncation()),
                              [&](int n, int k) -> Rational { return a.coeff(n, k) + b.coeff(n, k); });
}

SeriesTZ series_sub(const SeriesTZ& a, const SeriesTZ& b) {
    return SeriesTZ::generate(min(a.truncation(), b.truncation()),
                              [&](int n, int k) -> Rational { return a.coeff(n, k) - b.coeff(n, k); });
}

SeriesTZ series_scale(const Rational& s, const SeriesTZ& a) {
    return SeriesTZ::generate(a.truncation(), [&](int n, int k) -> Rational { return s * a.coeff(n, k); });
}

namespace {

struct Entry {
    int n;
    int k;
    const Rational* c;
};

std::vector<Entry> nonzero_entries(const SeriesTZ& s, Truncation window) {
    std::vector<Entry> out;
    Truncation t = min(s.truncation(), window);
    for (int n = 0; n <= t.n; ++n)
        for (int k = 0; k <= t.k; ++k)
            if (s.coeff(n, k) != 0) out.push_back({n, k, &s.coeff(n, k)});
    return out;
}

SeriesTZ convolve(const SeriesTZ& a, const SeriesTZ& b, Truncation window) {
    std::vector<Rational> c(static_cast<std::size_t>(window.n + 1) * static_cast<std::size_t>(window.k + 1),
                            Rational(0));
    auto ea = nonzero_entries(a, window);
    auto eb = nonzero_entries(b, window);
    for (const auto& x : ea)
        for (const auto& y : eb) {
            int n = x.n + y.n;
            int k = x.k + y.k;
            if (n > window.n || k > window.k) continue;
            c[static_cast<std::size_t>(n) * static_cast<std::size_t>(window.k + 1) + static_cast<std::size_t>(k)] +=
                *x.c * *y.c;
        }
    return SeriesTZ(window, std::move(c));
}

}  // namespace

SeriesTZ series_mul(const SeriesTZ& a, const SeriesTZ& b) {
    return convolve(a, b, min(a.truncation(), b.truncation()));
}

SeriesTZ series_mul_extended(const SeriesTZ& a, const SeriesTZ& b) {
    Truncation ta = a.truncation();
    Truncation tb = b.truncation();
    Order ot = a.ord_t();
    Order oz = a.ord_z();
    // The zero series annihilates everything it is known on.
    int extra_n = ot ? *ot : ta.n;
    int extra_k = oz ? *oz : ta.k;
    Truncation window{std::min(ta.n, tb.n + extra_n), std::min(ta.k, tb.k + extra_k)};
    // Entries of b outside its own rectangle never meet a nonzero entry of a
    // inside the window, so convolving with the stored part is exact.
    std::vector<Rational> c(static_cast<std::size_t>(window.n + 1) * static_cast<std::size_t>(window.k + 1),
                            Rational(0));
    auto ea = nonzero_entries(a, window);
    auto eb = nonzero_entries(b, tb);
    for (const auto& x : ea)
        for (const auto& y : eb) {
            int n = x.n + y.n;
            int k = x.k + y.k;
            if (n > window.n || k > window.k) continue;
            c[static_cast<std::size_t>(n) * static_cast<std::size_t>(window.k + 1) + static_cast<std::size_t>(k)] +=
                *x.c * *y.c;
        }
    return SeriesTZ(window, std::move(c));
}

SeriesTZ derivative(const SeriesTZ& u, int q, int r) {
    Truncation t = u.truncation();
    if (q < 0 || r < 0) throw std::invalid_argument("negative derivative order");
    if (q > t.n || r > t.k) throw std::invalid_argument("derivative order exceeds truncation");
    return SeriesTZ::generate({t.n - q, t.k - r}, [&](int n, int k) -> Rational {
        const Rational& c = u.coeff(n + q, k + r);
        if (c == 0) return Rational(0);
        return c * falling_factorial(Rational(n + q), q) * falling_factorial(Rational(k + r), r);
    });
}

SeriesTZ dt_apply(const SeriesTZ& u) { return derivative(u, 1, 0); }
SeriesTZ dz_apply(const SeriesTZ& u) { return derivative(u, 0, 1); }

SeriesTZ dt_antiderivative(const SeriesTZ& u, int m) {
    if (m < 0) throw std::invalid_argument("antiderivative order must be nonnegative");
    Truncation t = u.truncation();
    return SeriesTZ::generate({t.n + m, t.k}, [&](int n, int k) -> Rational {
        if (n < m) return Rational(0);
        const Rational& c = u.coeff(n - m, k);
        if (c == 0) return Rational(0);
        // (n-m)!/n!
        return c / falling_factorial(Rational(n), m);
    });
}

bool equal_on(const SeriesTZ& a, const SeriesTZ& b, Truncation window) {
    for (int n = 0; n <= window.n; ++n)
        for (int k = 0; k <= window.k; ++k)
            if (a.coeff(n, k) != b.coeff(n, k)) return false;
    return true;
}

void write_csv(std::ostream& os, const SeriesTZ& s) {
    os << "n,k,numerator,denominator\n";
    Truncation t = s.truncation();
    for (int n = 0; n <= t.n; ++n)
        for (int k = 0; k <= t.k; ++k) {
            const Rational& c = s.coeff(n, k);
            if (c == 0) continue;
            os << n << ',' << k << ',' << c.get_num().get_str() << ',' << c.get_den().get_str() << '\n';
        }
}

std::string to_csv(const SeriesTZ& s) {
    std::ostringstream os;
    write_csv(os, s);
    return os.str();
}

SeriesTZ read_csv(std::istream& is, Truncation trunc) {
    std::vector<Rational> c(static_cast<std::size_t>(trunc.n + 1) * static_cast<std::size_t>(trunc.k + 1),
                            Rational(0));
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("n,k", 0) == 0) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 4) throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": expected 4 fields");
        int n = std::stoi(f[0]);
        int k = std::stoi(f[1]);
        if (n < 0 || k < 0 || n > trunc.n || k > trunc.k) continue;
        Rational v = make_rational(Integer(f[2], 10), Integer(f[3], 10));
        c[static_cast<std::size_t>(n) * static_cast<std::size_t>(trunc.k + 1) + static_cast<std::size_t>(k)] = v;
    }
    return SeriesTZ(trunc, std::move(c));
}

}  // namespace fauto
