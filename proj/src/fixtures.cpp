#include "fauto/fixtures.hpp"

#include <random>

namespace fauto {

Fixture example_shrinking() {
    return {"shrinking", "dt*t*dz*z - (dt*t)^2*z*(dz*z + 1)", {}};
}

Fixture example_shrinking_family(int mu, int nu) {
    std::string src = "dt*t*dz*z - (dt*t)^" + std::to_string(mu) + "*z^" + std::to_string(nu) + "*(dz*z + " +
                      std::to_string(nu) + ")";
    return {"shrinking_" + std::to_string(mu) + "_" + std::to_string(nu), src, {}};
}

Fixture example_gevrey(int m, const Rational& a, const Rational& b, const Rational& c, int h, int pad) {
    Truncation t{pad, pad + h + 2};
    auto poly = [&](std::initializer_list<std::tuple<int, int, Rational>> terms) {
        SeriesTZ s(t);
        for (const auto& [n, k, v] : terms) s = series_add(s, SeriesTZ::monomial(n, k, v, t));
        return s;
    };
    Fixture f;
    f.name = "gevrey_h" + std::to_string(h);
    // p0 = a + z(1 + z) + t + t^2 z
    f.params.emplace("p0", poly({{0, 0, a}, {0, 1, 1}, {0, 2, 1}, {1, 0, 1}, {2, 1, 1}}));
    // p1 = (b + z) z^2 + t z
    f.params.emplace("p1", poly({{0, 2, b}, {0, 3, 1}, {1, 1, 1}}));
    // p2 = (c + z) z^h + t
    f.params.emplace("p2", poly({{0, h, c}, {0, h + 1, 1}, {1, 0, 1}}));
    std::string dm = m == 0 ? "" : m == 1 ? "dt" : "dt^" + std::to_string(m);
    std::string dm1 = "dt^" + std::to_string(m + 1);
    std::string first = m == 0 ? "p0" : "p0*" + dm;
    std::string second = m == 0 ? "p1*dz" : "p1*" + dm + "*dz";
    f.source = first + " + " + second + " + p2*t*" + dm1 + "*dz";
    return f;
}

Fixture resonant_toy() { return {"resonant", "z*dz - 5", {}}; }

namespace {

std::string monomial_text(const Rational& c, int tp, int zp, int q, int r) {
    std::string s = Rational(abs(c)).get_str();
    auto factor = [&](const char* sym, int e) {
        if (e == 0) return;
        s += std::string("*") + sym;
        if (e > 1) s += "^" + std::to_string(e);
    };
    factor("t", tp);
    factor("z", zp);
    factor("dt", q);
    factor("dz", r);
    return s;
}

}  // namespace

Fixture random_automorphism(unsigned long seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
    auto coeff = [&](bool positive) {
        Rational c = make_rational(uniform(1, 6), uniform(1, 3));
        return (positive || rng() % 2 == 0) ? c : Rational(-c);
    };
    int m = uniform(0, 2);
    std::vector<std::pair<Rational, std::string>> terms;
    Rational lead = coeff(true);
    terms.push_back({lead, monomial_text(lead, 0, 0, m, 0)});
    int extra_j0 = uniform(0, 2);
    for (int e = 0; e < extra_j0; ++e) {
        int d = uniform(0, 2);
        int r = uniform(0, 2);
        if (d == 0 && r == 0) r = 1;
        Rational c = coeff(true);
        terms.push_back({c, monomial_text(c, d, r, m + d, r)});
    }
    int positive_j = uniform(0, 3);
    for (int e = 0; e < positive_j; ++e) {
        int d = uniform(0, 2);
        int r = uniform(0, 2);
        int j = uniform(1, 3);
        Rational c = coeff(false);
        terms.push_back({c, monomial_text(c, d, r + j, m + d, r)});
    }
    int lower = uniform(0, 3);
    for (int e = 0; e < lower; ++e) {
        int q = uniform(0, m + 2);
        int n1 = q - m + uniform(1, 2);
        if (n1 < 0) n1 = 0;
        int r = uniform(0, 2);
        int k1 = r + uniform(0, 2);
        Rational c = coeff(false);
        terms.push_back({c, monomial_text(c, n1, k1, q, r)});
    }
    std::string src;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        bool neg = terms[i].first < 0;
        if (i == 0)
            src += neg ? "-" : "";
        else
            src += neg ? " - " : " + ";
        src += terms[i].second;
    }
    return {"random_" + std::to_string(seed), src, {}};
}

std::vector<Fixture> builtin_fixtures() {
    std::vector<Fixture> out;
    out.push_back(example_gevrey(1, 2, 3, 5, 4));
    out.push_back(example_shrinking());
    for (int mu = 2; mu <= 5; ++mu)
        for (int nu = 1; nu <= 4; ++nu) out.push_back(example_shrinking_family(mu, nu));
    out.push_back(resonant_toy());
    return out;
}

}  // namespace fauto
