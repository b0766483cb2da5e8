#include "fauto/solver.hpp"

#include "fauto/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fauto {

namespace {

struct ThetaAt {
    int i;
    int j;
    Rational w;
    const SeriesZ* a;
};

std::vector<ThetaAt> evaluate(const ThetaOperator& theta, long n) {
    std::vector<ThetaAt> out;
    for (const auto& t : theta.terms) {
        Rational w = t.w(n);
        if (w != 0) out.push_back({t.i, t.j, w, &t.a});
    }
    return out;
}

Rational kpow(long k, int i) { return pow_rational(Rational(k), static_cast<unsigned long>(i)); }

// Contribution to [z^k] from u_{k'} with k' < k (or every k' when `diag`).
Rational row_sum(const std::vector<ThetaAt>& terms, const std::vector<Rational>& u, long k, bool diag) {
    Rational acc = 0;
    for (const auto& t : terms) {
        for (int l = 0; l <= t.a->truncation(); ++l) {
            long kp = k - t.j - l;
            if (kp < 0) break;
            if (!diag && kp == k) continue;
            const Rational& al = (*t.a)[l];
            if (al == 0 || u[static_cast<std::size_t>(kp)] == 0) continue;
            acc += t.w * al * kpow(kp, t.i) * u[static_cast<std::size_t>(kp)];
        }
    }
    return acc;
}

}  // namespace

SeriesZ apply_theta_series(const ThetaOperator& theta, long n, const SeriesZ& u, int K) {
    if (K > theta.z_trunc || K > u.truncation())
        throw Error("truncation_too_small", "Euler form or series known below the requested z-order");
    std::vector<ThetaAt> terms = evaluate(theta, n);
    std::vector<Rational> out(static_cast<std::size_t>(K) + 1, Rational(0));
    for (int k = 0; k <= K; ++k) out[static_cast<std::size_t>(k)] = row_sum(terms, u.coeffs(), k, true);
    return SeriesZ(std::move(out));
}

SeriesZ solve_theta(const ThetaOperator& theta, long n, const SeriesZ& f, int K) {
    if (K > theta.z_trunc || K > f.truncation())
        throw Error("truncation_too_small", "Euler form or right side known below the requested z-order");
    std::vector<ThetaAt> terms = evaluate(theta, n);
    std::vector<Rational> u(static_cast<std::size_t>(K) + 1, Rational(0));
    for (int k = 0; k <= K; ++k) {
        Rational W = 0;
        for (const auto& t : terms)
            if (t.j == 0) W += t.w * (*t.a)[0] * kpow(k, t.i);
        if (W == 0) throw ResonanceError(n, k);
        u[static_cast<std::size_t>(k)] = (f[k] - row_sum(terms, u, k, false)) / W;
    }
    return SeriesZ(std::move(u));
}

namespace {

struct Entry {
    int q;
    int r;
    int n1;
    int k1;
    Rational c;
};

// n!/(n+m-q)!, the t-factor of a_qr dt^q dt^-m on t^(n+m).
Rational t_factor(long n, int q, int m) {
    if (q >= m) return falling_factorial(Rational(n), q - m);
    return Rational(1) / falling_factorial(Rational(n + m - q), m - q);
}

}  // namespace

SolutionTable solve_full(const NormalOperator& op, int m, const SeriesTZ& g, const SolveOptions& opt) {
    std::vector<Entry> entries;
    int qmax = 0;
    int rmax = 0;
    for (const auto& [key, a] : op.terms) {
        auto [q, r] = key;
        qmax = std::max(qmax, q);
        rmax = std::max(rmax, r);
        Truncation t = a.truncation();
        for (int n1 = 0; n1 <= t.n; ++n1)
            for (int k1 = 0; k1 <= t.k; ++k1) {
                const Rational& c = a.coeff(n1, k1);
                if (c == 0) continue;
                if (n1 < q - m) throw Error("invalid_m", "m is below q - ord_t a_qr for some term");
                entries.push_back({q, r, n1, k1, c});
            }
    }
    const Truncation gt = g.truncation();
    const int N = gt.n;
    const int K = gt.k;
    const Truncation ot = op.trunc;
    auto idx = [&](int n, int k) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(K + 1) + static_cast<std::size_t>(k); };
    std::vector<Rational> u(static_cast<std::size_t>(N + 1) * static_cast<std::size_t>(K + 1), Rational(0));
    std::vector<char> exact(u.size(), 0);

    for (int n = 0; n <= N; ++n) {
        // Diagonal W_{m,0}(n,k,0) grouped by r: sum_r d_r ff(k,r).
        std::map<int, Rational> diag_by_r;
        for (const auto& e : entries)
            if (e.n1 == e.q - m && e.k1 == e.r) diag_by_r[e.r] += e.c * t_factor(n, e.q, m);
        bool diag_zero = std::all_of(diag_by_r.begin(), diag_by_r.end(), [](const auto& kv) { return kv.second == 0; });
        if (diag_zero) throw ConditionError('a', n, "positive lower ordinate: the diagonal vanishes identically");
        bool data_ok_n = n + qmax - m <= ot.n;
        for (int k = 0; k <= K; ++k) {
            Rational W = 0;
            for (const auto& [r, d] : diag_by_r) W += d * falling_factorial(Rational(k), r);
            Rational acc = 0;
            bool ok = data_ok_n && k + rmax <= ot.k;
            for (const auto& e : entries) {
                long np = static_cast<long>(n) - e.n1 + e.q - m;
                long kp = static_cast<long>(k) - e.k1 + e.r;
                if (np < 0 || kp < 0) continue;
                if (np == n && kp == k) continue;
                Rational f = e.c * t_factor(np, e.q, m) * falling_factorial(Rational(kp), e.r);
                if (f == 0) continue;
                if (np == n && kp > k)
                    throw ConditionError('a', n, "row references z-degree " + std::to_string(kp) + " above " +
                                                     std::to_string(k));
                if (kp > K) {
                    ok = false;
                    continue;
                }
                std::size_t j = idx(static_cast<int>(np), static_cast<int>(kp));
                if (!exact[j]) ok = false;
                acc += f * u[j];
            }
            if (W == 0) throw ResonanceError(n, k);
            u[idx(n, k)] = (g.coeff(n, k) - acc) / W;
            exact[idx(n, k)] = ok;
        }
    }

    int Ne = -1;
    while (Ne < N && exact[idx(Ne + 1, 0)]) ++Ne;
    if (Ne < 0) throw Error("truncation_too_small", "no coefficient of u is determined by the given data");
    int Ke = K;
    for (int n = 0; n <= Ne; ++n) {
        int k = 0;
        while (k <= Ke && exact[idx(n, k)]) ++k;
        Ke = k - 1;
    }
    SolutionTable out;
    out.trunc = {Ne, Ke};
    out.g = g;
    out.u = SeriesTZ::generate(out.trunc, [&](int n, int k) -> Rational { return u[idx(n, k)]; });
    if (opt.check_residual) {
        SeriesTZ r = apply_full(op, m, out.u);
        Truncation w = min(r.truncation(), gt);
        if (!(r.restrict(w) == g.restrict(w))) throw Error("residual_mismatch", "P dt^-m u differs from g");
        out.residual_checked = true;
        out.residual_window = w;
    }
    return out;
}

std::string to_csv(const SolutionTable& s) { return to_csv(s.u); }

nlohmann::json summary_json(const SolutionTable& s) {
    nlohmann::json j;
    j["N"] = s.trunc.n;
    j["K"] = s.trunc.k;
    j["requested"] = {s.g.truncation().n, s.g.truncation().k};
    j["residual_checked"] = s.residual_checked;
    if (s.residual_checked) j["residual_window"] = {s.residual_window.n, s.residual_window.k};
    return j;
}

AdversarialPair adversarial(const ThetaOperator& theta, const ExponentReport& ex, long n, int K) {
    if (ex.alpha == 0) throw Error("no_adversarial_direction", "alpha = 0: no adversarial direction");
    if (K > theta.z_trunc) throw Error("truncation_too_small", "Euler form known below the requested z-order");
    int deg_p0 = theta.find(ex.p, 0)->w.degree();
    const ThetaTerm* star = nullptr;
    for (const auto& t : theta.terms) {
        if (t.j == 0 || ex.s * t.j != t.i - ex.p) continue;
        if (make_rational(t.w.degree() - deg_p0, t.j) != ex.alpha) continue;
        if (!star || t.j < star->j) star = &t;
    }
    if (!star) throw Error("no_adversarial_direction", "no term attains alpha on the line of slope s");
    if (n < 1 || star->w(n) == 0)
        throw Error("n_too_small", "w_{i*j*}(" + std::to_string(n) + ") vanishes or n < 1");

    AdversarialPair a;
    a.n = n;
    a.i_star = star->i;
    a.j_star = star->j;
    IndicialPolynomial W = IndicialPolynomial::from_theta(theta);
    std::vector<std::pair<Rational, int>> column;  // (w_{i j*}(n) a_{i j*}(0), i)
    for (const auto& t : theta.terms)
        if (t.j == a.j_star) column.emplace_back(t.w(n) * t.a[0], t.i);
    std::vector<Rational> u(static_cast<std::size_t>(K) + 1, Rational(0));
    u[0] = 1;
    for (int k = a.j_star; k <= K; k += a.j_star) {
        Rational rhs = 0;
        for (const auto& [c, i] : column) rhs -= c * kpow(k - a.j_star, i);
        Rational w = W(n, k);
        if (w == 0) throw ResonanceError(n, k);
        u[static_cast<std::size_t>(k)] = rhs * u[static_cast<std::size_t>(k - a.j_star)] / w;
    }
    a.u = SeriesZ(std::move(u));
    a.f = apply_theta_series(theta, n, a.u, K);

    Rational D1 = abs(star->w.lead()) / 2;
    Rational D2 = 0;
    for (const auto& [i, c] : W.c) D2 += c.abs_sum();
    a.D_pow = D1 * abs(star->a[0]) / (D2 * pow_rational(Rational(2), static_cast<unsigned long>(a.i_star)));
    a.D = std::exp(log_abs(a.D_pow) / a.j_star);
    auto ratios = adversarial_log_ratios(a, ex);
    a.log_C = std::numeric_limits<double>::infinity();
    for (double r : ratios)
        if (std::isfinite(r)) a.log_C = std::min(a.log_C, r);
    return a;
}

std::vector<double> adversarial_log_ratios(const AdversarialPair& a, const ExponentReport& ex) {
    std::vector<double> out;
    double s = ex.s.get_d();
    double alpha = ex.alpha.get_d();
    double logD = std::log(a.D);
    double logn = std::log(static_cast<double>(a.n));
    for (int k = a.j_star; k <= a.u.truncation(); k += a.j_star) {
        const Rational& v = a.u[k];
        if (v == 0) {
            out.push_back(std::nan(""));
            continue;
        }
        out.push_back(log_abs(v) - k * logD - s * std::lgamma(k + 1.0) - alpha * k * logn);
    }
    return out;
}

nlohmann::json to_json(const AdversarialPair& a) {
    nlohmann::json u = nlohmann::json::array();
    nlohmann::json f = nlohmann::json::array();
    for (const auto& c : a.u.coeffs()) u.push_back(to_pq_string(c));
    for (const auto& c : a.f.coeffs()) f.push_back(to_pq_string(c));
    return {{"n", a.n},          {"i_star", a.i_star}, {"j_star", a.j_star}, {"D_pow_j_star", to_pq_string(a.D_pow)},
            {"D", a.D},          {"log_C", a.log_C},   {"u", u},             {"f", f}};
}

}  // namespace fauto
