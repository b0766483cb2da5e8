#include "fauto/normal_operator.hpp"

#include "fauto/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fauto {

namespace {

using TermMap = std::map<std::pair<int, int>, SeriesTZ>;

// `exact` marks partial results whose coefficients are polynomials lying
// entirely inside the window (built from atoms only). Their derivatives are
// known on the whole window instead of losing one order per derivative.
struct Partial {
    TermMap terms;
    Truncation trunc;
    bool exact = false;
};

// Largest t- and z-degree carrying a nonzero coefficient, -1 for zero.
Truncation extent(const SeriesTZ& s) {
    Truncation e{-1, -1};
    Truncation t = s.truncation();
    for (int n = 0; n <= t.n; ++n)
        for (int k = 0; k <= t.k; ++k)
            if (s.coeff(n, k) != 0) {
                e.n = std::max(e.n, n);
                e.k = std::max(e.k, k);
            }
    return e;
}

SeriesTZ pad(const SeriesTZ& s, Truncation t) {
    Truncation st = s.truncation();
    return SeriesTZ::generate(t, [&](int n, int k) -> Rational {
        return (n <= st.n && k <= st.k) ? s.coeff(n, k) : Rational(0);
    });
}

Partial constant_op(const SeriesTZ& c, bool exact) {
    Partial p{{}, c.truncation(), exact};
    if (!c.is_zero()) p.terms.emplace(std::make_pair(0, 0), c);
    return p;
}

Partial derivative_op(int q, int r, Truncation trunc) {
    Partial p{{}, trunc, true};
    p.terms.emplace(std::make_pair(q, r), SeriesTZ::monomial(0, 0, 1, trunc));
    return p;
}

void accumulate(TermMap& into, std::pair<int, int> key, const SeriesTZ& c) {
    auto it = into.find(key);
    if (it == into.end())
        into.emplace(key, c);
    else
        it->second = series_add(it->second, c);
}

Partial add(const Partial& a, const Partial& b, const Rational& sign) {
    Partial out{a.terms, min(a.trunc, b.trunc), a.exact && b.exact};
    for (const auto& [key, c] : b.terms) accumulate(out.terms, key, sign == 1 ? c : series_scale(sign, c));
    if (out.exact)
        for (auto& [key, c] : out.terms) {
            Truncation e = extent(c);
            if (e.n > out.trunc.n || e.k > out.trunc.k) out.exact = false;
        }
    return out;
}

Partial scale(const Partial& a, const Rational& s) {
    Partial out{{}, a.trunc, a.exact};
    for (const auto& [key, c] : a.terms) out.terms.emplace(key, series_scale(s, c));
    return out;
}

Integer binomial(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// (a dt^q dz^r)(b dt^q' dz^r') = sum_{i,j} C(q,i) C(r,j) a (dt^i dz^j b) dt^(q-i+q') dz^(r-j+r')
Partial multiply(const Partial& a, const Partial& b) {
    int qmax = 0;
    int rmax = 0;
    for (const auto& [key, c] : a.terms) {
        qmax = std::max(qmax, key.first);
        rmax = std::max(rmax, key.second);
    }
    Truncation t = b.exact ? min(a.trunc, b.trunc) : min(a.trunc, Truncation{b.trunc.n - qmax, b.trunc.k - rmax});
    if (t.n < 0 || t.k < 0)
        throw Error("truncation_too_small", "truncation order too small for the derivatives in the operator");
    Partial out{{}, t, a.exact && b.exact};
    for (const auto& [ka, ca] : a.terms) {
        auto [q, r] = ka;
        Truncation ea = extent(ca);
        for (const auto& [kb, cb] : b.terms) {
            auto [q2, r2] = kb;
            for (int i = 0; i <= q; ++i)
                for (int j = 0; j <= r; ++j) {
                    Truncation tb = cb.truncation();
                    if (b.exact && (i > tb.n || j > tb.k)) continue;
                    SeriesTZ db = derivative(cb, i, j);
                    if (b.exact) db = pad(db, tb);
                    if (db.is_zero()) continue;
                    if (out.exact) {
                        Truncation eb = extent(db);
                        if (ea.n + eb.n > t.n || ea.k + eb.k > t.k) out.exact = false;
                    }
                    Rational coef = Rational(binomial(q, i) * binomial(r, j));
                    SeriesTZ prod = series_scale(coef, series_mul(ca, db));
                    accumulate(out.terms, {q - i + q2, r - j + r2}, prod);
                }
        }
    }
    return out;
}

Partial order(const ExprPtr& e, Truncation trunc) {
    switch (e->kind) {
        case ExprKind::T: return constant_op(SeriesTZ::monomial(1, 0, 1, trunc), trunc.n >= 1);
        case ExprKind::Z: return constant_op(SeriesTZ::monomial(0, 1, 1, trunc), trunc.k >= 1);
        case ExprKind::Dt: return derivative_op(1, 0, trunc);
        case ExprKind::Dz: return derivative_op(0, 1, trunc);
        case ExprKind::Literal: return constant_op(SeriesTZ::monomial(0, 0, e->value, trunc), true);
        case ExprKind::Param: return constant_op(e->series, false);
        case ExprKind::Add: return add(order(e->lhs, trunc), order(e->rhs, trunc), 1);
        case ExprKind::Sub: return add(order(e->lhs, trunc), order(e->rhs, trunc), -1);
        case ExprKind::Neg: return scale(order(e->lhs, trunc), -1);
        case ExprKind::Mul: return multiply(order(e->lhs, trunc), order(e->rhs, trunc));
        case ExprKind::Pow: {
            Partial base = order(e->lhs, trunc);
            Partial acc = constant_op(SeriesTZ::monomial(0, 0, 1, trunc), true);
            for (unsigned i = 0; i < e->exponent; ++i) acc = multiply(acc, base);
            return acc;
        }
    }
    return {};
}

}  // namespace

NormalOperator normal_order(const ExprPtr& e, Truncation trunc) {
    Partial p = order(e, trunc);
    NormalOperator op;
    op.trunc = p.trunc;
    for (const auto& [key, c] : p.terms) {
        SeriesTZ r = c.restrict(p.trunc);
        if (!r.is_zero()) op.terms.emplace(key, std::move(r));
    }
    return op;
}

NormalOperator compile_operator(std::string_view source, const ParamMap& params, Truncation target) {
    ExprPtr e = parse(source, params);
    auto [dq, dr] = derivative_degree(e);
    NormalOperator op = normal_order(e, {target.n + dq, target.k + dr});
    Truncation t = min(op.trunc, target);
    if (t == op.trunc) return op;
    NormalOperator out;
    out.trunc = t;
    for (const auto& [key, c] : op.terms) {
        SeriesTZ r = c.restrict(t);
        if (!r.is_zero()) out.terms.emplace(key, std::move(r));
    }
    return out;
}

ExprPtr to_expr(const NormalOperator& op) {
    ExprPtr sum;
    for (const auto& [key, c] : op.terms) {
        auto [q, r] = key;
        ExprPtr term = Expr::param("a_" + std::to_string(q) + "_" + std::to_string(r), c);
        if (q > 0) {
            ExprPtr d = Expr::atom(ExprKind::Dt);
            term = Expr::binary(ExprKind::Mul, term, q == 1 ? d : Expr::power(d, static_cast<unsigned>(q)));
        }
        if (r > 0) {
            ExprPtr d = Expr::atom(ExprKind::Dz);
            term = Expr::binary(ExprKind::Mul, term, r == 1 ? d : Expr::power(d, static_cast<unsigned>(r)));
        }
        sum = sum ? Expr::binary(ExprKind::Add, sum, term) : term;
    }
    return sum ? sum : Expr::literal(0);
}

SeriesTZ apply_operator(const NormalOperator& op, const SeriesTZ& u) {
    Truncation tu = u.truncation();
    Truncation out = min(op.trunc, tu);
    std::vector<SeriesTZ> parts;
    for (const auto& [key, a] : op.terms) {
        auto [q, r] = key;
        if (q > tu.n || r > tu.k)
            throw Error("truncation_too_small", "series truncation below the operator's derivative order");
        SeriesTZ p = series_mul_extended(a, derivative(u, q, r));
        out = min(out, p.truncation());
        parts.push_back(std::move(p));
    }
    SeriesTZ acc(out);
    for (const auto& p : parts) acc = series_add(acc, p.restrict(out));
    return acc;
}

SeriesTZ apply_full(const NormalOperator& op, int m, const SeriesTZ& u) {
    return apply_operator(op, dt_antiderivative(u, m));
}

std::string series_to_string(const SeriesTZ& s) {
    std::ostringstream os;
    bool first = true;
    Truncation t = s.truncation();
    for (int n = 0; n <= t.n; ++n)
        for (int k = 0; k <= t.k; ++k) {
            const Rational& c = s.coeff(n, k);
            if (c == 0) continue;
            Rational a = abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            bool unit = a == 1 && (n > 0 || k > 0);
            bool star = false;
            if (!unit) {
                os << a.get_str();
                star = true;
            }
            if (n > 0) {
                os << (star ? "*" : "") << "t";
                if (n > 1) os << "^" << n;
                star = true;
            }
            if (k > 0) {
                os << (star ? "*" : "") << "z";
                if (k > 1) os << "^" << k;
            }
        }
    return first ? "0" : os.str();
}

std::string describe(const NormalOperator& op) {
    std::ostringstream os;
    for (const auto& [key, c] : op.terms)
        os << "(" << key.first << "," << key.second << "): " << series_to_string(c) << "\n";
    return os.str();
}

ParamMap params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error("invalid_params", "parameter file must hold a JSON object");
    ParamMap out;
    for (const auto& [name, v] : j.items()) {
        try {
            Truncation t{v.at("N").get<int>(), v.at("K").get<int>()};
            std::vector<Rational> c(static_cast<std::size_t>(t.n + 1) * static_cast<std::size_t>(t.k + 1),
                                    Rational(0));
            for (const auto& e : v.at("coeffs")) {
                int n = e.at(0).get<int>();
                int k = e.at(1).get<int>();
                if (n < 0 || k < 0 || n > t.n || k > t.k)
                    throw Error("invalid_params", "parameter '" + name + "': coefficient outside truncation");
                Rational x = e.at(2).is_string() ? parse_rational(e.at(2).get<std::string>())
                                                 : Rational(e.at(2).get<long>());
                c[static_cast<std::size_t>(n) * static_cast<std::size_t>(t.k + 1) + static_cast<std::size_t>(k)] = x;
            }
            out.emplace(name, SeriesTZ(t, std::move(c)));
        } catch (const nlohmann::json::exception& ex) {
            throw Error("invalid_params", "parameter '" + name + "': " + ex.what());
        } catch (const std::invalid_argument& ex) {
            throw Error("invalid_params", "parameter '" + name + "': " + ex.what());
        }
    }
    return out;
}

nlohmann::json params_to_json(const ParamMap& params) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, s] : params) {
        nlohmann::json coeffs = nlohmann::json::array();
        Truncation t = s.truncation();
        for (int n = 0; n <= t.n; ++n)
            for (int k = 0; k <= t.k; ++k)
                if (s.coeff(n, k) != 0) coeffs.push_back({n, k, to_pq_string(s.coeff(n, k))});
        j[name] = {{"N", t.n}, {"K", t.k}, {"coeffs", coeffs}};
    }
    return j;
}

}  // namespace fauto
