#include "fauto/resonance.hpp"

#include "fauto/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fauto {

IndicialPolynomial IndicialPolynomial::from_theta(const ThetaOperator& theta) {
    IndicialPolynomial W;
    for (const auto& t : theta.terms) {
        if (t.j != 0) continue;
        Polynomial c = t.a[0] * t.w;
        if (!c.is_zero()) W.c.emplace(t.i, std::move(c));
    }
    return W;
}

Rational IndicialPolynomial::operator()(long n, long k) const {
    Rational acc = 0;
    Rational kk(k);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        // Horner over the sparse exponents.
        int next = std::next(it) == c.rend() ? 0 : std::next(it)->first;
        acc += it->second(n);
        acc *= pow_rational(kk, static_cast<unsigned long>(it->first - next));
    }
    return acc;
}

Polynomial IndicialPolynomial::row(long n) const {
    std::vector<Rational> v(static_cast<std::size_t>(std::max(p(), 0)) + 1, Rational(0));
    for (const auto& [i, ci] : c) v[static_cast<std::size_t>(i)] = ci(n);
    return Polynomial(std::move(v));
}

Polynomial IndicialPolynomial::column(long k) const {
    Polynomial out;
    Rational kk(k);
    for (const auto& [i, ci] : c) out = out + pow_rational(kk, static_cast<unsigned long>(i)) * ci;
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::certified_strong: return "certified_strong";
        case Verdict::grid_verified_only: return "grid_verified_only";
        case Verdict::resonant: return "resonant";
    }
    return "";
}

std::string to_string(TailArgument t) {
    switch (t) {
        case TailArgument::sign_definite: return "sign_definite";
        case TailArgument::leading_term: return "leading_term";
        case TailArgument::none: return "none";
    }
    return "";
}

namespace {

// Coefficients of W in the basis n^(d falling) k^(i falling). Falling
// factorials are nonnegative on nonnegative integers, so a one-signed table
// gives |W(n,k)| >= |W(0,0)|.
bool sign_definite(const IndicialPolynomial& W) {
    std::map<std::pair<int, int>, Rational> b;
    for (const auto& [i, ci] : W.c) {
        std::vector<Rational> fb = ci.falling_basis();
        for (int d = 0; d < static_cast<int>(fb.size()); ++d) {
            if (fb[static_cast<std::size_t>(d)] == 0) continue;
            for (int i2 = 0; i2 <= i; ++i2) {
                Integer s = stirling2(i, i2);
                if (s == 0) continue;
                b[{d, i2}] += fb[static_cast<std::size_t>(d)] * s;
            }
        }
    }
    int sg = 0;
    for (const auto& [key, v] : b) {
        int s = sign(v);
        if (s == 0) continue;
        if (sg != 0 && s != sg) return false;
        sg = s;
    }
    return sg != 0;
}

// Lower bound for |f(x)| over integers x > from, or nullopt when it would
// need a scan past `cap`. f must not be the zero polynomial.
std::optional<Rational> tail_min(const Polynomial& f, long from, long cap) {
    if (f.degree() == 0) return abs(f.lead());
    Integer T = f.half_lead_threshold();
    Rational half = abs(f.lead()) / 2;
    if (T <= from + 1) return half * pow_rational(Rational(from + 1), static_cast<unsigned long>(f.degree()));
    if (T - 1 > cap) return std::nullopt;
    long t = T.get_si();
    Rational best = half * pow_rational(Rational(t), static_cast<unsigned long>(f.degree()));
    for (long x = from + 1; x < t; ++x) best = std::min(best, Rational(abs(f(x))));
    return best;
}

}  // namespace

ResonanceCertificate certify(const IndicialPolynomial& W, const CertifyOptions& opt) {
    if (opt.grid_n < 8 || opt.grid_k < 8) throw Error("invalid_grid", "certificate grid bounds must be at least 8");
    ResonanceCertificate cert;
    cert.grid_n = opt.grid_n;
    cert.grid_k = opt.grid_k;
    if (W.c.empty()) {
        cert.verdict = Verdict::resonant;
        cert.witness = std::make_pair(0L, 0L);
        cert.notes.push_back("indicial polynomial is identically zero");
        return cert;
    }

    // Exact root search in k along every grid row, then the grid minimum.
    bool roots_complete = true;
    std::optional<Rational> gmin;
    for (long n = 0; n <= opt.grid_n; ++n) {
        Polynomial r = W.row(n);
        if (r.is_zero()) {
            cert.verdict = Verdict::resonant;
            cert.witness = std::make_pair(n, 0L);
            return cert;
        }
        bool complete = true;
        std::vector<long> roots = r.nonnegative_integer_roots(opt.scan_cap, &complete);
        if (!roots.empty()) {
            cert.verdict = Verdict::resonant;
            cert.witness = std::make_pair(n, roots.front());
            return cert;
        }
        roots_complete = roots_complete && complete;
        for (long k = 0; k <= opt.grid_k; ++k) {
            Rational v = abs(r(k));
            if (!gmin || v < *gmin) gmin = v;
        }
    }
    cert.grid_min = gmin;
    if (!roots_complete)
        cert.notes.push_back("row root search stopped at k = " + std::to_string(opt.scan_cap) + " for some rows");

    if (sign_definite(W)) {
        cert.verdict = Verdict::certified_strong;
        cert.tail = TailArgument::sign_definite;
        cert.C0 = abs(W(0, 0));
        return cert;
    }

    // Leading-term domination needs deg c_i <= deg c_p for all i.
    int p = W.p();
    const Polynomial& cp = W.c.at(p);
    int D = cp.degree();
    Rational sum = 0;
    bool flat = true;
    for (const auto& [i, ci] : W.c) {
        if (i == p) continue;
        if (ci.degree() > D) flat = false;
        sum += ci.abs_sum();
    }
    if (!flat) {
        cert.notes.push_back("gamma > 0: leading-term tail bound not attempted");
        return cert;
    }
    Rational lead = abs(cp.lead());
    Integer Sp = cp.half_lead_threshold();
    Rational kq = 4 * sum / lead;
    Integer Kstar = kq.get_num() / kq.get_den();
    if (Kstar * kq.get_den() != kq.get_num()) Kstar += 1;
    if (Sp > opt.grid_n + 1 || Kstar > opt.grid_k + 1) {
        cert.notes.push_back("leading-term thresholds (n >= " + Sp.get_str() + ", k >= " + Kstar.get_str() +
                             ") exceed the grid");
        return cert;
    }
    Rational nD = pow_rational(Rational(opt.grid_n + 1), static_cast<unsigned long>(D));
    Rational C0 = lead / 2 * nD;
    if (p > 0) C0 = lead / 4 * nD * pow_rational(Rational(opt.grid_k + 1), static_cast<unsigned long>(p));
    C0 = std::min(C0, *gmin);
    for (long n = 0; n <= opt.grid_n; ++n) {
        auto t = tail_min(W.row(n), opt.grid_k, opt.scan_cap);
        if (!t) {
            cert.notes.push_back("row tail at n = " + std::to_string(n) + " exceeds the scan cap");
            return cert;
        }
        C0 = std::min(C0, *t);
    }
    for (long k = 0; k <= opt.grid_k; ++k) {
        Polynomial col = W.column(k);
        auto t = tail_min(col, opt.grid_n, opt.scan_cap);
        if (!t) {
            cert.notes.push_back("column tail at k = " + std::to_string(k) + " exceeds the scan cap");
            return cert;
        }
        C0 = std::min(C0, *t);
    }
    if (C0 > 0) {
        cert.verdict = Verdict::certified_strong;
        cert.tail = TailArgument::leading_term;
        cert.C0 = C0;
    }
    return cert;
}

nlohmann::json to_json(const ResonanceCertificate& c) {
    nlohmann::json j;
    j["verdict"] = to_string(c.verdict);
    j["C0_lower_bound"] = c.C0 ? nlohmann::json(to_pq_string(*c.C0)) : nlohmann::json("none");
    j["grid"] = {c.grid_n, c.grid_k};
    j["tail_argument"] = to_string(c.tail);
    j["witness"] = c.witness ? nlohmann::json({c.witness->first, c.witness->second}) : nlohmann::json(nullptr);
    j["grid_min"] = c.grid_min ? nlohmann::json(to_pq_string(*c.grid_min)) : nlohmann::json(nullptr);
    j["notes"] = c.notes;
    return j;
}

Rational liouville_lambda(int J) {
    Rational l = 0;
    for (int j = 1; j <= J; ++j) {
        Integer f = factorial(static_cast<unsigned long>(j));
        l += Rational(1) / Rational(pow_int(10, f.get_ui()));
    }
    return l;
}

LiouvilleReport liouville_demo(int J, long N, long K) {
    if (J < 2) throw Error("invalid_argument", "liouville demo needs J >= 2");
    if (N < 0 || K < 0) throw Error("invalid_argument", "search bounds must be nonnegative");
    LiouvilleReport r;
    r.lambda = liouville_lambda(J);
    bool zero_seen = false;
    for (long k = 0; k <= K; ++k) {
        Rational x = r.lambda * (k + 1);
        // The nearest admissible integer minimises |n - x| over 0..N.
        Integer fl = x.get_num() / x.get_den();
        LiouvilleRecord best{-1, k, 0};
        for (Integer cand : {fl, Integer(fl + 1)}) {
            if (cand < 0 || cand > N) continue;
            Rational v = abs(Rational(cand) - x);
            if (best.n < 0 || v < best.abs_w) best = {cand.get_si(), k, v};
        }
        if (best.n < 0) best = {N, k, abs(Rational(N) - x)};
        if (r.records.empty() || best.abs_w < r.records.back().abs_w) r.records.push_back(best);
        if (best.abs_w == 0 && !zero_seen) {
            zero_seen = true;
            r.notes.push_back("exact zero at k = " + std::to_string(k) + " comes from truncating lambda");
        }
        if (best.n < 1 || k < 1) continue;
        for (int m = 2; m <= J; ++m) {
            if (r.witnesses.count(m)) continue;
            Rational bound = Rational(1) / pow_rational(Rational(k + 1), static_cast<unsigned long>(m - 1));
            if (best.abs_w < bound) r.witnesses.emplace(m, best);
        }
    }
    for (int m = 2; m <= J; ++m)
        if (!r.witnesses.count(m))
            r.notes.push_back("search bounds too small to exhibit m = " + std::to_string(m));
    return r;
}

std::string liouville_csv(const LiouvilleReport& r) {
    std::ostringstream os;
    os << "n,k,abs_w\n";
    for (const auto& rec : r.records) os << rec.n << "," << rec.k << "," << to_decimal_string(rec.abs_w, 40) << "\n";
    return os.str();
}

nlohmann::json to_json(const LiouvilleReport& r) {
    nlohmann::json rec = nlohmann::json::array();
    for (const auto& x : r.records) rec.push_back({{"n", x.n}, {"k", x.k}, {"abs_w", to_decimal_string(x.abs_w, 40)}});
    nlohmann::json wit = nlohmann::json::object();
    for (const auto& [m, x] : r.witnesses)
        wit[std::to_string(m)] = {{"n", x.n}, {"k", x.k}, {"abs_w", to_decimal_string(x.abs_w, 40)}};
    return {{"lambda", to_pq_string(r.lambda)}, {"records", rec}, {"witnesses", wit}, {"notes", r.notes}};
}

}  // namespace fauto
