#include <doctest.h>

#include "fauto/analysis.hpp"
#include "fauto/errors.hpp"
#include "fauto/fixtures.hpp"
#include "fauto/growth.hpp"
#include "fauto/lemmas.hpp"
#include "fauto/solver.hpp"

#include <cmath>
#include <random>

using namespace fauto;

namespace {

SeriesZ seq(int K, const std::function<Rational(int)>& f) {
    std::vector<Rational> v;
    for (int k = 0; k <= K; ++k) v.push_back(f(k));
    return SeriesZ(v);
}

SeriesTZ table(Truncation t, const std::function<Rational(int, int)>& f) { return SeriesTZ::generate(t, f); }

Rational powr(long b, long e) { return pow_rational(Rational(b), static_cast<unsigned long>(e)); }

// x! l! against k! with whole factorials: returns x^{ib} (x! l!)^a vs k^{pb} k!^a
int cmp_lemma1(int a, int b, int i, int p, int j, int k, int l) {
    int x = k - j - l;
    Integer lhs = pow_int(x, static_cast<unsigned long>(i * b)) *
                  pow_int(factorial(static_cast<unsigned long>(x)) * factorial(static_cast<unsigned long>(l)),
                          static_cast<unsigned long>(a));
    Integer rhs = pow_int(k, static_cast<unsigned long>(p * b)) *
                  pow_int(factorial(static_cast<unsigned long>(k)), static_cast<unsigned long>(a));
    return cmp(lhs, rhs);
}

}  // namespace

TEST_CASE("radius estimate") {
    for (long n = 0; n <= 6; ++n) {
        double r = radius_estimate(seq(64, [&](int k) -> Rational { return powr(n + 1, k); }), 0, {32, 64});
        CHECK(std::fabs(r * (n + 1) - 1) < 0.01);
    }
    CHECK(std::fabs(radius_estimate(seq(40, [](int) -> Rational { return Rational(1); }), 0, {20, 40}) - 1) < 1e-9);
    // only even coefficients
    SeriesZ even = seq(64, [](int k) -> Rational { return k % 2 == 0 ? powr(4, k) : Rational(0); });
    CHECK(std::fabs(radius_estimate(even, 0, {32, 64}) * 4 - 1) < 0.01);
    // k! with s = 1 has radius 1
    SeriesZ fact = seq(80, [](int k) -> Rational { return Rational(factorial(static_cast<unsigned long>(k))); });
    CHECK(std::fabs(radius_estimate(fact, 1, {40, 80}) - 1) < 1e-6);
    CHECK_THROWS_AS(radius_estimate(seq(20, [](int) -> Rational { return Rational(0); }), 0, {10, 20}), Error);
    CHECK_THROWS_AS(radius_estimate(seq(20, [](int k) -> Rational { return Rational(k % 5 == 0 ? 1 : 0); }), 0, {10, 20}), Error);
    CHECK_THROWS_AS(radius_estimate(seq(20, [](int) -> Rational { return Rational(1); }), 0, {10, 30}), Error);
}

TEST_CASE("fit_alpha") {
    std::map<long, double> r;
    for (long n = 0; n < 16; ++n) r[n] = 3.0 * std::pow(n + 1.0, -1.5);
    AlphaFit f = fit_alpha(r);
    CHECK(f.alpha_hat == doctest::Approx(1.5));
    CHECK(f.a_hat == doctest::Approx(3.0));
    CHECK_FALSE(f.degenerate);
    std::map<long, double> c;
    for (long n = 0; n < 10; ++n) c[n] = 0.5;
    AlphaFit fc = fit_alpha(c);
    CHECK(fc.degenerate);
    CHECK(fc.alpha_hat == 0);
    std::map<long, double> few{{0, 1.0}, {1, 0.5}};
    CHECK_THROWS_AS(fit_alpha(few), Error);
}

TEST_CASE("fit_gevrey") {
    SeriesZ f1 = seq(160, [](int k) -> Rational { return Rational(factorial(static_cast<unsigned long>(k))); });
    SeriesZ f2 = seq(160, [](int k) -> Rational {
        Integer x = factorial(static_cast<unsigned long>(k));
        return Rational(x * x);
    });
    SeriesZ one = seq(160, [](int) -> Rational { return Rational(1); });
    SeriesZ geo = seq(160, [](int k) -> Rational { return powr(7, k); });
    CHECK(std::fabs(fit_gevrey(f1, {80, 160}) - 1) < 0.1);
    CHECK(std::fabs(fit_gevrey(f2, {80, 160}) - 2) < 0.2);
    CHECK(std::fabs(fit_gevrey(one, {80, 160})) < 1e-6);
    CHECK(std::fabs(fit_gevrey(geo, {80, 160})) < 1e-6);
}

TEST_CASE("bound constants: exact shape and minimality") {
    // (n+1)^k against max(n,1)^k: B = 2 from the row n = 1
    SeriesTZ u = table({20, 30}, [](int n, int k) -> Rational { return powr(n + 1, k); });
    BoundConstants bc = bound_constants(u, 1, 0);
    CHECK(bc.verified);
    CHECK(bc.log_B == doctest::Approx(std::log(2.0)));
    REQUIRE(bc.minimality_witness);
    CHECK(check_bound(u, 1, 0, bc.log_A, bc.log_B));
    CHECK_FALSE(check_bound(u, 1, 0, bc.log_A, bc.log_B + std::log(0.9)));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        SeriesTZ v = table({8, 12}, [&](int n, int k) -> Rational {
            long num = static_cast<long>(rng() % 1000) - 500;
            return make_rational(num, static_cast<long>(rng() % 7) + 1) * powr(n + 2, k) *
                   Rational(factorial(static_cast<unsigned long>(k)));
        });
        for (Rational s : {Rational(0), make_rational(1, 2), Rational(1)}) {
            BoundConstants b = bound_constants(v, make_rational(1, 3), s);
            CHECK(b.verified);
            CHECK(b.minimality_witness.has_value());
        }
    }
}

TEST_CASE("radius law on the shrinking example") {
    NormalOperator op = compile_operator(example_shrinking().source, {}, {34, 66});
    SeriesTZ g = table({32, 64}, [](int n, int k) -> Rational { return k == 0 ? Rational(n + 1) : Rational(0); });
    SolutionTable s = solve_full(op, 0, g, {false});
    GrowthReport rep = analyze_growth(s.u, 0, 1);
    for (long n = 4; n <= 32; ++n) {
        REQUIRE(rep.radii.count(n));
        CHECK(rep.radii.at(n) * (n + 1) >= 0.9);
        CHECK(rep.radii.at(n) * (n + 1) <= 1.1);
    }
    CHECK(rep.alpha.alpha_hat == doctest::Approx(1.0).epsilon(0.01));
    CHECK(rep.bounds.verified);
    auto j = to_json(rep);
    CHECK(j["regression_window"]["k_min"] == 32);
    CHECK(radii_csv(rep).rfind("n,r_hat\n0,", 0) == 0);
    CHECK(radii_svg(rep).find("<circle") != std::string::npos);
}

TEST_CASE("lemma suite: default ranges pass") {
    LemmaReport r = lemma_suite(default_lemma_ranges());
    CHECK(r.pass());
    CHECK(r.checked[0] > 0);
    CHECK(r.checked[1] > 0);
    CHECK(r.checked[2] > 0);
    CHECK(to_json(r)["counterexample_count"] == 0);
}

TEST_CASE("lemma suite agrees with whole-factorial evaluation") {
    // count of admissible tuples for (1) on a small range, by enumeration
    LemmaRanges small;
    small.s_values = {Rational(0), make_rational(1, 2), Rational(1)};
    small.i_max = 3;
    small.p_max = 3;
    small.j_max = 2;
    small.k_max = 12;
    LemmaReport r = lemma_suite(small);
    long count1 = 0;
    for (const Rational& s : small.s_values) {
        int a = static_cast<int>(s.get_num().get_si());
        int b = static_cast<int>(s.get_den().get_si());
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 12; ++k)
                for (int l = 0; k - j - l >= 0; ++l)
                    for (int i = 0; i <= 3; ++i)
                        for (int p = 0; p <= 3; ++p) {
                            if (j * a < (i - p) * b) continue;
                            ++count1;
                            CHECK(cmp_lemma1(a, b, i, p, j, k, l) <= 0);
                        }
    }
    CHECK(r.checked[0] == count1);
    CHECK(r.pass());
    // outside the hypothesis the inequality can fail
    CHECK(cmp_lemma1(0, 1, 1, 0, 1, 3, 0) > 0);
    // k = 2j, j = 1, s = 1, i = 1, p = 0: (k-j)^i (k-j)!^s / (k^p k!^s) = 1/2 = 2^-i
    CHECK(Rational(1) / Rational(factorial(2)) == make_rational(1, 2));
}
