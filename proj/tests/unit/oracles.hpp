#pragma once

// Independent reference implementations used only by the tests. They favour
// obviousness over speed and share no code paths with the library beyond
// the SeriesTZ container and rational helpers.

#include "fauto/dsl.hpp"
#include "fauto/series.hpp"

#include <random>
#include <vector>

namespace oracle {

using fauto::Rational;
using fauto::SeriesTZ;
using fauto::Truncation;

// Dense double loop over every index pair.
inline SeriesTZ naive_mul(const SeriesTZ& a, const SeriesTZ& b) {
    Truncation t{std::min(a.truncation().n, b.truncation().n), std::min(a.truncation().k, b.truncation().k)};
    return SeriesTZ::generate(t, [&](int n, int k) -> Rational {
        Rational s = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= k; ++j) s += a.coeff(i, j) * b.coeff(n - i, k - j);
        return s;
    });
}

inline SeriesTZ times_t(const SeriesTZ& u) {
    return SeriesTZ::generate(u.truncation(), [&](int n, int k) -> Rational {
        return n == 0 ? Rational(0) : u.coeff(n - 1, k);
    });
}

inline SeriesTZ times_z(const SeriesTZ& u) {
    return SeriesTZ::generate(u.truncation(), [&](int n, int k) -> Rational {
        return k == 0 ? Rational(0) : u.coeff(n, k - 1);
    });
}

inline SeriesTZ d_t(const SeriesTZ& u) {
    Truncation t = u.truncation();
    return SeriesTZ::generate({t.n - 1, t.k}, [&](int n, int k) -> Rational { return Rational(n + 1) * u.coeff(n + 1, k); });
}

inline SeriesTZ d_z(const SeriesTZ& u) {
    Truncation t = u.truncation();
    return SeriesTZ::generate({t.n, t.k - 1}, [&](int n, int k) -> Rational { return Rational(k + 1) * u.coeff(n, k + 1); });
}

inline SeriesTZ crop(const SeriesTZ& a, Truncation t) {
    return SeriesTZ::generate(t, [&](int n, int k) -> Rational { return a.coeff(n, k); });
}

inline Truncation meet(Truncation a, Truncation b) { return {std::min(a.n, b.n), std::min(a.k, b.k)}; }

// Applies the expression tree to u factor by factor, right to left, without
// any rewriting.
inline SeriesTZ interpret(const fauto::ExprPtr& e, const SeriesTZ& u) {
    using fauto::ExprKind;
    switch (e->kind) {
        case ExprKind::T: return times_t(u);
        case ExprKind::Z: return times_z(u);
        case ExprKind::Dt: return d_t(u);
        case ExprKind::Dz: return d_z(u);
        case ExprKind::Literal:
            return SeriesTZ::generate(u.truncation(), [&](int n, int k) -> Rational { return e->value * u.coeff(n, k); });
        case ExprKind::Param: return naive_mul(e->series, u);
        case ExprKind::Neg: {
            SeriesTZ v = interpret(e->lhs, u);
            return SeriesTZ::generate(v.truncation(), [&](int n, int k) -> Rational { return -v.coeff(n, k); });
        }
        case ExprKind::Add:
        case ExprKind::Sub: {
            SeriesTZ a = interpret(e->lhs, u);
            SeriesTZ b = interpret(e->rhs, u);
            Rational sg = e->kind == ExprKind::Add ? 1 : -1;
            return SeriesTZ::generate(meet(a.truncation(), b.truncation()),
                                      [&](int n, int k) -> Rational { return a.coeff(n, k) + sg * b.coeff(n, k); });
        }
        case ExprKind::Mul: return interpret(e->lhs, interpret(e->rhs, u));
        case ExprKind::Pow: {
            SeriesTZ v = u;
            for (unsigned i = 0; i < e->exponent; ++i) v = interpret(e->lhs, v);
            return v;
        }
    }
    return u;
}

inline SeriesTZ random_series(std::mt19937& rng, Truncation t, int range = 5, int density_pct = 70) {
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> pct(0, 99);
    return SeriesTZ::generate(t, [&](int, int) -> Rational {
        if (pct(rng) >= density_pct) return Rational(0);
        return fauto::make_rational(num(rng), den(rng));
    });
}

}  // namespace oracle
