#include "fauto/lemmas.hpp"

#include <algorithm>

namespace fauto {

LemmaRanges default_lemma_ranges() {
    LemmaRanges r;
    r.s_values = {Rational(0), make_rational(1, 2), Rational(1), Rational(2)};
    return r;
}

namespace {

// Exact integer power tables x^e for 0 <= x <= X, 0 <= e <= E.
class Powers {
public:
    Powers(int X, int E) : E_(E), t_(static_cast<std::size_t>(X + 1) * static_cast<std::size_t>(E + 1)) {
        for (int x = 0; x <= X; ++x) {
            Integer v = 1;
            for (int e = 0; e <= E; ++e) {
                t_[idx(x, e)] = v;
                v *= x;
            }
        }
    }
    const Integer& operator()(int x, int e) const { return t_[idx(x, e)]; }

private:
    std::size_t idx(int x, int e) const {
        return static_cast<std::size_t>(x) * static_cast<std::size_t>(E_ + 1) + static_cast<std::size_t>(e);
    }
    int E_;
    std::vector<Integer> t_;
};

}  // namespace

LemmaReport lemma_suite(const LemmaRanges& R) {
    LemmaReport rep;
    auto record = [&](int lemma, const Rational& s, int i, int p, int j, int k, int l) {
        ++rep.counterexample_count;
        if (rep.counterexamples.size() < 20) rep.counterexamples.push_back({lemma, s, i, p, j, k, l});
    };

    std::vector<std::vector<Integer>> binom(static_cast<std::size_t>(R.k_max) + 1);
    for (int n = 0; n <= R.k_max; ++n) {
        auto& row = binom[static_cast<std::size_t>(n)];
        row.resize(static_cast<std::size_t>(n) + 1);
        row[0] = row[static_cast<std::size_t>(n)] = 1;
        for (int l = 1; l < n; ++l)
            row[static_cast<std::size_t>(l)] =
                binom[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(l - 1)] +
                binom[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(l)];
    }

    for (const Rational& s : R.s_values) {
        long a = s.get_num().get_si();
        long b = s.get_den().get_si();
        int emax = static_cast<int>(std::max<long>(
            {static_cast<long>(R.i_max) * R.j_max * b,
             static_cast<long>(R.p_max) * R.j_max * b + static_cast<long>(R.i_max) * b + a * R.j_max,
             static_cast<long>(R.i_max + 1) * b}));
        Powers P(std::max(R.k_max, 2), emax);
        for (int j = 1; j <= R.j_max; ++j) {
            for (int k = j; k <= R.k_max; ++k) {
                Integer ff = 1;
                for (int t = 0; t < j; ++t) ff *= k - t;
                for (int l = 0; l <= k - j; ++l) {
                    int x = k - j - l;
                    // x! l! / k! = 1 / (C(k-j, l) k^(j falling))
                    Integer G = binom[static_cast<std::size_t>(k - j)][static_cast<std::size_t>(l)] * ff;
                    Integer Ga;
                    mpz_pow_ui(Ga.get_mpz_t(), G.get_mpz_t(), static_cast<unsigned long>(a));
                    Integer Gaj;
                    mpz_pow_ui(Gaj.get_mpz_t(), G.get_mpz_t(), static_cast<unsigned long>(a * j));
                    for (int i = 0; i <= R.i_max; ++i)
                        for (int p = 0; p <= R.p_max; ++p) {
                            long d = i - p;
                            // (1): x^{ib} <= k^{pb} G^a
                            if (j * a >= d * b) {
                                ++rep.checked[0];
                                if (P(x, static_cast<int>(i * b)) > P(k, static_cast<int>(p * b)) * Ga)
                                    record(1, s, i, p, j, k, l);
                            }
                            // (2) with s' = d/j: x^{ijb} <= k^E G^{aj}, E = pjb + db - aj
                            if (d * b < a * j) {
                                ++rep.checked[1];
                                long E = p * j * b + d * b - a * j;
                                const Integer& lhs = P(x, static_cast<int>(i * j * b));
                                bool bad = E >= 0 ? lhs > P(k, static_cast<int>(E)) * Gaj
                                                  : lhs * P(k, static_cast<int>(-E)) > Gaj;
                                if (bad) record(2, s, i, p, j, k, l);
                            }
                            // (3): (k-j)^{ib} 2^{ib} >= k^{pb} ff^a
                            if (l == 0 && k >= 2 * j && j * a == d * b) {
                                ++rep.checked[2];
                                if (P(x, static_cast<int>(i * b)) * P(2, static_cast<int>(i * b)) <
                                    P(k, static_cast<int>(p * b)) * Ga)
                                    record(3, s, i, p, j, k, l);
                            }
                        }
                }
            }
        }
    }
    return rep;
}

nlohmann::json to_json(const LemmaReport& r) {
    nlohmann::json ce = nlohmann::json::array();
    for (const auto& c : r.counterexamples)
        ce.push_back({{"lemma", c.lemma}, {"s", to_pq_string(c.s)}, {"i", c.i}, {"p", c.p}, {"j", c.j}, {"k", c.k}, {"l", c.l}});
    return {{"pass", r.pass()},
            {"checked", {r.checked[0], r.checked[1], r.checked[2]}},
            {"counterexample_count", r.counterexample_count},
            {"counterexamples", ce}};
}

}  // namespace fauto
