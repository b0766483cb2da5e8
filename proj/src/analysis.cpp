#include "fauto/analysis.hpp"

#include "fauto/errors.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace fauto {

const ThetaTerm* ThetaOperator::find(int i, int j) const {
    for (const auto& t : terms)
        if (t.i == i && t.j == j) return &t;
    return nullptr;
}

std::optional<int> ThetaOperator::lower_ordinate() const {
    std::optional<int> l;
    for (const auto& t : terms)
        if (!l || t.j < *l) l = t.j;
    return l;
}

int compute_m(const NormalOperator& op, std::vector<std::string>* warnings) {
    std::optional<int> m;
    for (const auto& [key, a] : op.terms) {
        Order o = a.ord_t();
        if (!o) {
            if (warnings)
                warnings->push_back("coefficient of dt^" + std::to_string(key.first) + " dz^" +
                                    std::to_string(key.second) + " vanishes at this truncation; term ignored");
            continue;
        }
        int d = key.first - *o;
        if (!m || d > *m) m = d;
    }
    if (!m) throw Error("empty_operator", "operator has no nonzero term");
    if (*m < 0) throw HypothesisError(*m);
    return *m;
}

NormalOperator principal_part(const NormalOperator& op, int m) {
    NormalOperator out;
    out.trunc = op.trunc;
    for (const auto& [key, a] : op.terms) {
        Order o = a.ord_t();
        if (!o || key.first - *o != m) continue;
        int row = *o;
        out.terms.emplace(key, SeriesTZ::generate(a.truncation(), [&](int n, int k) -> Rational {
                              return n == row ? a.coeff(n, k) : Rational(0);
                          }));
    }
    return out;
}

ThetaOperator reduce_to_theta(const NormalOperator& principal, int m, std::vector<std::string>* warnings) {
    int K = principal.trunc.k;
    int rmax = 0;
    int n_star = 0;
    std::optional<int> l;
    struct Slice {
        int q;
        int r;
        SeriesZ z;
        int alpha;
    };
    std::vector<Slice> slices;
    for (const auto& [key, a] : principal.terms) {
        auto [q, r] = key;
        if (q - m < 0 || q - m > a.truncation().n) continue;
        SeriesZ z = a.row(q - m);
        Order alpha = z.ord();
        if (!alpha) {
            if (warnings)
                warnings->push_back("principal slice of dt^" + std::to_string(q) + " dz^" + std::to_string(r) +
                                    " vanishes at this truncation; term dropped");
            continue;
        }
        rmax = std::max(rmax, r);
        n_star = std::max(n_star, q - m);
        int ord = *alpha - r;
        if (!l || ord < *l) l = ord;
        slices.push_back({q, r, std::move(z), *alpha});
    }
    if (l && *l < 0) throw NegativeOrdinateError(*l);
    int z_trunc = K - rmax;
    if (z_trunc < 0) throw Error("truncation_too_small", "z-truncation below the operator's dz order");

    // Fully split table: (i, j) -> polynomial in n.
    std::map<std::pair<int, int>, Polynomial> table;
    for (const auto& s : slices) {
        Polynomial ff = Polynomial::falling(s.q - m);
        for (int idx = s.alpha; idx <= K; ++idx) {
            const Rational& c = s.z[idx];
            if (c == 0) continue;
            int j = idx - s.r;
            if (j > z_trunc) break;
            for (int i = 0; i <= s.r; ++i) {
                Integer st = stirling1(s.r, i);
                if (st == 0) continue;
                Polynomial add = Rational(c * st) * ff;
                auto it = table.find({i, j});
                if (it == table.end())
                    table.emplace(std::make_pair(i, j), add);
                else
                    it->second = it->second + add;
            }
        }
    }

    ThetaOperator out;
    out.z_trunc = z_trunc;
    out.n_star = n_star;
    std::set<std::pair<int, int>> absorbed;
    for (const auto& [key, w] : table) {
        if (w.is_zero() || absorbed.count(key)) continue;
        auto [i, j] = key;
        std::vector<Rational> a(static_cast<std::size_t>(z_trunc - j) + 1, Rational(0));
        a[0] = 1;
        if (j > 0) {
            for (auto it = table.upper_bound(key); it != table.end() && it->first.first == i; ++it) {
                const Polynomial& v = it->second;
                if (v.is_zero() || absorbed.count(it->first)) continue;
                if (v.degree() != w.degree()) continue;
                Rational c = v.lead() / w.lead();
                if (!(c * w == v)) continue;
                a[static_cast<std::size_t>(it->first.second - j)] = c;
                absorbed.insert(it->first);
            }
        }
        out.terms.push_back({i, j, w, SeriesZ(std::move(a))});
    }
    return out;
}

SeriesZ apply_principal_dz(const NormalOperator& principal, int m, long n, int k, int K) {
    int rmax = 0;
    for (const auto& [key, a] : principal.terms) rmax = std::max(rmax, key.second);
    int top = std::min(K, principal.trunc.k + k - rmax);
    std::vector<Rational> out(static_cast<std::size_t>(std::max(top, 0)) + 1, Rational(0));
    for (const auto& [key, a] : principal.terms) {
        auto [q, r] = key;
        if (q - m < 0 || q - m > a.truncation().n) continue;
        Rational f = falling_factorial(Rational(n), q - m) * falling_factorial(Rational(k), r);
        if (f == 0) continue;
        for (int idx = 0; idx <= a.truncation().k; ++idx) {
            const Rational& c = a.coeff(q - m, idx);
            if (c == 0) continue;
            int e = idx + k - r;
            if (e < 0 || e > top) continue;
            out[static_cast<std::size_t>(e)] += c * f;
        }
    }
    return SeriesZ(std::move(out));
}

SeriesZ apply_theta(const ThetaOperator& theta, long n, int k, int K) {
    int top = std::min(K, theta.z_trunc + k);
    std::vector<Rational> out(static_cast<std::size_t>(std::max(top, 0)) + 1, Rational(0));
    for (const auto& t : theta.terms) {
        Rational f = t.w(n) * pow_rational(Rational(k), static_cast<unsigned long>(t.i));
        if (f == 0) continue;
        for (int l = 0; l <= t.a.truncation(); ++l) {
            int e = k + t.j + l;
            if (e > top) break;
            out[static_cast<std::size_t>(e)] += f * t.a[l];
        }
    }
    return SeriesZ(std::move(out));
}

ExponentReport exponents(const ThetaOperator& theta, int m, std::optional<Rational> s_override) {
    ExponentReport r;
    r.m = m;
    r.l = theta.lower_ordinate().value_or(0);
    std::optional<int> p;
    for (const auto& t : theta.terms) {
        r.deg_table[{t.i, t.j}] = t.w.degree();
        if (t.j == 0 && (!p || t.i > *p)) p = t.i;
    }
    if (!p) throw Error("no_j0_stratum", "no term with j = 0: the indicial polynomial is empty");
    r.p = *p;
    int deg_p0 = theta.find(r.p, 0)->w.degree();

    r.s_derived = 0;
    for (const auto& t : theta.terms)
        if (t.j > 0) r.s_derived = std::max(r.s_derived, Rational(Rational(t.i - r.p) / t.j));
    r.s_overridden = s_override.has_value();
    r.s = s_override.value_or(r.s_derived);

    r.alpha = 0;
    r.beta = 0;
    std::optional<Rational> s_prime;
    for (const auto& t : theta.terms) {
        if (t.j == 0) continue;
        Rational ratio = Rational(t.w.degree() - deg_p0) / t.j;
        r.beta = std::max(r.beta, ratio);
        if (r.s * t.j == t.i - r.p) {
            r.alpha = std::max(r.alpha, ratio);
        } else {
            Rational sp = Rational(t.i - r.p) / t.j;
            if (!s_prime || sp > *s_prime) s_prime = sp;
        }
    }

    r.gamma = 0;
    for (const auto& t : theta.terms)
        if (t.j == 0 && t.i != r.p)
            r.gamma = std::max(r.gamma, Rational(Rational(t.w.degree() - deg_p0) / (r.p - t.i)));

    if (!s_prime) {
        r.gamma_tilde = Rational(0);
    } else if (r.s > *s_prime) {
        Rational g = 0;
        for (const auto& t : theta.terms)
            if (t.j > 0) g = std::max(g, Rational(t.j * (r.beta - r.alpha) / (r.s - *s_prime)));
        r.gamma_tilde = g;
    }
    return r;
}

nlohmann::json to_json(const ExponentReport& r) {
    nlohmann::json deg = nlohmann::json::array();
    for (const auto& [key, d] : r.deg_table) deg.push_back({key.first, key.second, d});
    nlohmann::json j;
    j["m"] = r.m;
    j["l"] = r.l;
    j["p"] = r.p;
    j["s"] = to_pq_string(r.s);
    j["s_derived"] = to_pq_string(r.s_derived);
    j["s_overridden"] = r.s_overridden;
    j["alpha"] = to_pq_string(r.alpha);
    j["beta"] = to_pq_string(r.beta);
    j["gamma"] = to_pq_string(r.gamma);
    j["gamma_tilde"] = r.gamma_tilde ? nlohmann::json(to_pq_string(*r.gamma_tilde)) : nlohmann::json(nullptr);
    j["deg_table"] = deg;
    return j;
}

nlohmann::json to_json(const ThetaOperator& t) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : t.terms) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& c : term.a.coeffs()) a.push_back(to_pq_string(c));
        terms.push_back({{"i", term.i}, {"j", term.j}, {"w", term.w.to_string()}, {"a", a}});
    }
    return {{"z_trunc", t.z_trunc}, {"n_star", t.n_star}, {"terms", terms}};
}

Analysis analyze_operator(const NormalOperator& op) {
    Analysis a;
    a.m = compute_m(op, &a.warnings);
    a.principal = principal_part(op, a.m);
    a.theta = reduce_to_theta(a.principal, a.m, &a.warnings);
    return a;
}

}  // namespace fauto
