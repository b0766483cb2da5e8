#include <doctest.h>

#include "fauto/analysis.hpp"
#include "fauto/errors.hpp"
#include "fauto/fixtures.hpp"
#include "fauto/resonance.hpp"
#include "oracles.hpp"

#include <random>

using namespace fauto;

namespace {

IndicialPolynomial indicial(const Fixture& f, int trunc = 16) {
    NormalOperator op = compile_operator(f.source, f.params, {trunc, trunc});
    return IndicialPolynomial::from_theta(analyze_operator(op).theta);
}

// [t^n z^k] P dt^-m (t^n z^k), by direct interpretation of the tree.
Rational diagonal_oracle(const Fixture& f, int m, int n, int k) {
    Truncation t{n + m + 6, k + 6};
    Rational scale = Rational(factorial(static_cast<unsigned long>(n))) /
                     Rational(factorial(static_cast<unsigned long>(n + m)));
    SeriesTZ u = SeriesTZ::monomial(n + m, k, scale, t);
    SeriesTZ v = oracle::interpret(parse(f.source, f.params), u);
    return v.coeff(n, k);
}

IndicialPolynomial from_table(std::map<int, std::vector<long>> table) {
    IndicialPolynomial W;
    for (auto& [i, cs] : table) {
        std::vector<Rational> v(cs.begin(), cs.end());
        Polynomial p(v);
        if (!p.is_zero()) W.c.emplace(i, p);
    }
    return W;
}

}  // namespace

TEST_CASE("eval_W on the shrinking examples") {
    IndicialPolynomial ex2 = indicial(example_shrinking());
    IndicialPolynomial ex3 = indicial(example_shrinking_family(3, 2));
    CHECK(ex2(3, 4) == 20);
    CHECK(ex3(0, 0) == 1);
    for (long n = 0; n <= 100; ++n)
        for (long k = 0; k <= 100; ++k) {
            CHECK(ex2(n, k) == (n + 1) * (k + 1));
            CHECK(ex3(n, k) == (n + 1) * (k + 1));
        }
}

TEST_CASE("eval_W matches the diagonal of the operator") {
    std::vector<std::pair<Fixture, int>> cases = {
        {example_shrinking(), 0}, {example_shrinking_family(2, 3), 0}, {example_gevrey(1, 2, 3, 5, 4, 20), 1},
        {resonant_toy(), 0}};
    for (unsigned long seed = 1; seed <= 10; ++seed) {
        Fixture f = random_automorphism(seed);
        cases.emplace_back(f, compute_m(compile_operator(f.source, f.params, {12, 12})));
    }
    for (const auto& [f, m] : cases) {
        IndicialPolynomial W = indicial(f, 12);
        for (int n = 0; n <= 5; ++n)
            for (int k = 0; k <= 5; ++k) CHECK(W(n, k) == diagonal_oracle(f, m, n, k));
    }
}

TEST_CASE("constant and trivial W") {
    IndicialPolynomial one = from_table({{0, {1}}});
    for (long n = 0; n < 5; ++n) CHECK(one(n, 7) == 1);
    IndicialPolynomial ex1 = indicial(example_gevrey(1, 2, 3, 5, 4, 20));
    CHECK(ex1.c.size() == 1);
    CHECK(ex1(9, 9) == 2);
}

TEST_CASE("certify: examples") {
    ResonanceCertificate c2 = certify(indicial(example_shrinking()));
    CHECK(c2.verdict == Verdict::certified_strong);
    CHECK(c2.tail == TailArgument::sign_definite);
    CHECK(*c2.C0 == 1);
    CHECK(c2.grid_n == 256);

    ResonanceCertificate c1 = certify(indicial(example_gevrey(1, 2, 3, 5, 4, 20)));
    CHECK(c1.verdict == Verdict::certified_strong);
    CHECK(*c1.C0 == 2);

    ResonanceCertificate r = certify(indicial(resonant_toy()));
    CHECK(r.verdict == Verdict::resonant);
    REQUIRE(r.witness);
    CHECK(*r.witness == std::make_pair(0L, 5L));
    CHECK(to_json(r)["C0_lower_bound"] == "none");

    // same witness on a larger grid
    ResonanceCertificate r2 = certify(indicial(resonant_toy()), {400, 300});
    CHECK(r2.witness == r.witness);

    CHECK_THROWS_AS(certify(indicial(resonant_toy()), {7, 10}), Error);
}

TEST_CASE("certify: leading-term tail") {
    // W = (n+1)(k^2 - 3k + 3) has mixed signs in the falling basis
    IndicialPolynomial W = from_table({{2, {1, 1}}, {1, {-3, -3}}, {0, {3, 3}}});
    CHECK(certify(W, {16, 16}).verdict == Verdict::grid_verified_only);
    ResonanceCertificate c = certify(W, {64, 64});
    CHECK(c.verdict == Verdict::certified_strong);
    CHECK(c.tail == TailArgument::leading_term);
    REQUIRE(c.C0);
    CHECK(*c.C0 > 0);
    for (long n = 0; n <= 80; ++n)
        for (long k = 0; k <= 80; ++k) CHECK(abs(W(n, k)) >= *c.C0);

    // deg c_0 > deg c_p: gamma > 0, only the grid is claimed
    IndicialPolynomial g = from_table({{1, {1}}, {0, {1, -3, 1}}});
    ResonanceCertificate cg = certify(g, {12, 12});
    CHECK(cg.verdict != Verdict::certified_strong);
}

TEST_CASE("certify: random property") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> deg(0, 2);
    int strong = 0;
    int resonant = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::map<int, std::vector<long>> table;
        int p = deg(rng);
        for (int i = 0; i <= p; ++i) {
            std::vector<long> cs;
            for (int d = 0; d <= deg(rng); ++d) cs.push_back(coef(rng));
            table[i] = cs;
        }
        IndicialPolynomial W = from_table(table);
        if (W.c.empty()) continue;
        ResonanceCertificate c = certify(W, {8, 8});
        if (c.verdict == Verdict::resonant) {
            ++resonant;
            REQUIRE(c.witness);
            auto [wn, wk] = *c.witness;
            CHECK(W(wn, wk) == 0);
            for (long n = 0; n <= wn; ++n)
                for (long k = 0; k <= 200; ++k)
                    if (n < wn || k < wk) CHECK(W(n, k) != 0);
            CHECK(certify(W, {20, 20}).witness == c.witness);
        } else if (c.verdict == Verdict::certified_strong) {
            ++strong;
            REQUIRE(c.C0);
            CHECK(*c.C0 > 0);
            CHECK(*c.C0 <= *c.grid_min);
            for (long n = 0; n <= 40; ++n)
                for (long k = 0; k <= 40; ++k) CHECK(abs(W(n, k)) >= *c.C0);
        } else {
            CHECK(!c.C0);
        }
    }
    CHECK(strong > 0);
    CHECK(resonant > 0);
}

TEST_CASE("liouville demo") {
    Rational lam = liouville_lambda(3);
    CHECK(lam == make_rational(110001, 1000000));
    LiouvilleReport r = liouville_demo(3, 2000, 2000);
    // k = 0 row: best n is 0
    REQUIRE(!r.records.empty());
    CHECK(r.records.front().n == 0);
    CHECK(r.records.front().k == 0);
    CHECK(r.records.front().abs_w == lam);
    for (std::size_t i = 1; i < r.records.size(); ++i) {
        CHECK(r.records[i].abs_w < r.records[i - 1].abs_w);
        CHECK(r.records[i].k > r.records[i - 1].k);
    }
    // exhaustive oracle for the m = 2 witness
    std::optional<std::pair<long, long>> first;
    for (long k = 1; k <= 2000 && !first; ++k)
        for (long n = 1; n <= 2000; ++n)
            if (abs(Rational(n) - lam * (k + 1)) * (k + 1) < 1) {
                first = std::make_pair(n, k);
                break;
            }
    REQUIRE(first);
    REQUIRE(r.witnesses.count(2));
    CHECK(std::make_pair(r.witnesses.at(2).n, r.witnesses.at(2).k) == *first);
    CHECK(*first == std::make_pair(1L, 7L));
    CHECK(r.witnesses.at(2).abs_w < make_rational(1, 8));

    std::string csv = liouville_csv(r);
    CHECK(csv.rfind("n,k,abs_w\n0,0,1.100010000000000000000000000000000000000e-01\n", 0) == 0);

    LiouvilleReport small = liouville_demo(3, 0, 3);
    CHECK(small.witnesses.empty());
    CHECK(small.notes.size() == 2);
    CHECK_THROWS_AS(liouville_demo(1, 10, 10), Error);
}
