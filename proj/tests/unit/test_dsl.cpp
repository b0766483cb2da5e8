#include <doctest.h>

#include "fauto/dsl.hpp"
#include "fauto/errors.hpp"
#include "fauto/fixtures.hpp"
#include "fauto/normal_operator.hpp"
#include "oracles.hpp"

#include <random>

using namespace fauto;

namespace {

ExprPtr random_expr(std::mt19937& rng, int depth, const ParamMap& params) {
    std::uniform_int_distribution<int> pick(0, 9);
    int c = depth <= 0 ? pick(rng) % 6 : pick(rng);
    switch (c) {
        case 0: return Expr::atom(ExprKind::T);
        case 1: return Expr::atom(ExprKind::Z);
        case 2: return Expr::atom(ExprKind::Dt);
        case 3: return Expr::atom(ExprKind::Dz);
        case 4: return Expr::literal(make_rational(static_cast<long>(rng() % 7), static_cast<long>(rng() % 3 + 1)));
        case 5: {
            if (params.empty()) return Expr::atom(ExprKind::Z);
            auto it = params.begin();
            std::advance(it, static_cast<long>(rng() % params.size()));
            return Expr::param(it->first, it->second);
        }
        case 6: return Expr::binary(rng() % 2 ? ExprKind::Add : ExprKind::Sub, random_expr(rng, depth - 1, params),
                                    random_expr(rng, depth - 1, params));
        case 7: return Expr::binary(ExprKind::Mul, random_expr(rng, depth - 1, params), random_expr(rng, depth - 1, params));
        case 8: return Expr::power(random_expr(rng, depth - 1, params), static_cast<unsigned>(rng() % 3));
        default: return Expr::negate(random_expr(rng, depth - 1, params));
    }
}

ParamMap small_params(std::mt19937& rng) {
    ParamMap p;
    p.emplace("f", oracle::random_series(rng, {24, 24}, 3, 15));
    p.emplace("g1", oracle::random_series(rng, {24, 24}, 3, 15));
    return p;
}

}  // namespace

TEST_CASE("parse builds ordered products") {
    ExprPtr e = parse("dt*t");
    REQUIRE(e->kind == ExprKind::Mul);
    CHECK(e->lhs->kind == ExprKind::Dt);
    CHECK(e->rhs->kind == ExprKind::T);
    ExprPtr p = parse("(dt*t)^2");
    REQUIRE(p->kind == ExprKind::Pow);
    CHECK(p->exponent == 2);
    CHECK(same_tree(p->lhs, e));
}

TEST_CASE("parse of the shrinking-disc example") {
    ExprPtr e = parse(example_shrinking().source);
    REQUIRE(e->kind == ExprKind::Sub);
    CHECK(to_string(e->lhs) == "dt*t*dz*z");
    CHECK(to_string(e->rhs) == "(dt*t)^2*z*(dz*z + 1)");
    ExprPtr by_hand = Expr::binary(
        ExprKind::Sub,
        Expr::binary(ExprKind::Mul,
                     Expr::binary(ExprKind::Mul,
                                  Expr::binary(ExprKind::Mul, Expr::atom(ExprKind::Dt), Expr::atom(ExprKind::T)),
                                  Expr::atom(ExprKind::Dz)),
                     Expr::atom(ExprKind::Z)),
        Expr::binary(ExprKind::Mul,
                     Expr::binary(ExprKind::Mul,
                                  Expr::power(Expr::binary(ExprKind::Mul, Expr::atom(ExprKind::Dt), Expr::atom(ExprKind::T)), 2),
                                  Expr::atom(ExprKind::Z)),
                     Expr::binary(ExprKind::Add,
                                  Expr::binary(ExprKind::Mul, Expr::atom(ExprKind::Dz), Expr::atom(ExprKind::Z)),
                                  Expr::literal(1))));
    CHECK(same_tree(e, by_hand));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse("dt*t +\n  3*x");
        FAIL("expected failure");
    } catch (const ParseError& e) {
        CHECK(e.code() == "parse_error");
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS(parse("t^-1"), ParseError);
    CHECK_THROWS_AS(parse("t^1/2"), ParseError);
    CHECK_THROWS_AS(parse("t t"), ParseError);
    CHECK_THROWS_AS(parse("(t"), ParseError);
    CHECK_THROWS_AS(parse("t $ z"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("parse and print are inverse on random trees") {
    std::mt19937 rng(17);
    ParamMap params = small_params(rng);
    for (int trial = 0; trial < 400; ++trial) {
        ExprPtr e = random_expr(rng, 4, params);
        std::string text = to_string(e);
        ExprPtr back = parse(text, params);
        INFO(text);
        CHECK(same_tree(e, back));
        CHECK(to_string(back) == text);
    }
}

TEST_CASE("normal ordering of (dt t)^2") {
    NormalOperator op = normal_order(parse("(dt*t)^2"), {14, 0});
    REQUIRE(op.terms.size() == 3);
    Truncation t = op.trunc;
    CHECK(op.terms.at({2, 0}) == SeriesTZ::monomial(2, 0, 1, t));
    CHECK(op.terms.at({1, 0}) == SeriesTZ::monomial(1, 0, 3, t));
    CHECK(op.terms.at({0, 0}) == SeriesTZ::monomial(0, 0, 1, t));
    for (int n = 0; n <= 10; ++n) {
        SeriesTZ u = SeriesTZ::monomial(n, 0, 1, {12, 0});
        CHECK(apply_operator(op, u).coeff(n, 0) == Rational((n + 1) * (n + 1)));
    }
}

TEST_CASE("dt*t normal-orders to t*dt + 1") {
    NormalOperator op = normal_order(parse("dt*t"), {6, 6});
    REQUIRE(op.terms.size() == 2);
    CHECK(op.terms.at({1, 0}) == SeriesTZ::monomial(1, 0, 1, op.trunc));
    CHECK(op.terms.at({0, 0}) == SeriesTZ::monomial(0, 0, 1, op.trunc));
}

TEST_CASE("normal ordering agrees with the tree interpreter on monomials") {
    std::mt19937 rng(23);
    ParamMap params = small_params(rng);
    Truncation big{24, 24};
    int compared = 0;
    for (int trial = 0; trial < 60; ++trial) {
        ExprPtr e = random_expr(rng, 3, params);
        auto [dq, dr] = derivative_degree(e);
        if (dq > 6 || dr > 6) continue;
        NormalOperator op = normal_order(e, big);
        for (int n = 0; n <= 8; ++n)
            for (int k = 0; k <= 8; ++k) {
                SeriesTZ u = SeriesTZ::monomial(n, k, 1, big);
                SeriesTZ lhs = apply_operator(op, u);
                SeriesTZ rhs = oracle::interpret(e, u);
                Truncation w = oracle::meet(lhs.truncation(), rhs.truncation());
                REQUIRE(w.n >= 8);
                REQUIRE(w.k >= 8);
                CHECK(equal_on(lhs, rhs, w));
                ++compared;
            }
    }
    CHECK(compared > 1000);
}

TEST_CASE("normal ordering is idempotent") {
    std::mt19937 rng(29);
    ParamMap params = small_params(rng);
    for (int trial = 0; trial < 40; ++trial) {
        ExprPtr e = random_expr(rng, 3, params);
        NormalOperator op = normal_order(e, {20, 20});
        NormalOperator again = normal_order(to_expr(op), op.trunc);
        CHECK(again == op);
    }
}

TEST_CASE("shrinking-disc operator maps the explicit solution to sum (n+1) t^n") {
    Truncation t{12, 12};
    NormalOperator op = compile_operator(example_shrinking().source, {}, t);
    CHECK(op.trunc == t);
    SeriesTZ u = SeriesTZ::generate(t, [](int n, int k) -> Rational { return Rational(pow_int(Integer(n + 1), static_cast<unsigned long>(k))); });
    SeriesTZ g = apply_operator(op, u);
    Truncation w = g.truncation();
    CHECK(w.n >= 10);
    CHECK(w.k >= 10);
    SeriesTZ expect = SeriesTZ::generate(w, [](int n, int k) -> Rational { return k == 0 ? Rational(n + 1) : Rational(0); });
    CHECK(g == expect);
}

TEST_CASE("identity operator") {
    std::mt19937 rng(31);
    SeriesTZ u = oracle::random_series(rng, {6, 6});
    NormalOperator id = compile_operator("1", {}, {6, 6});
    CHECK(apply_operator(id, u) == u);
}

TEST_CASE("parameter sidecar round trip") {
    std::mt19937 rng(37);
    ParamMap p = small_params(rng);
    ParamMap back = params_from_json(params_to_json(p));
    CHECK(back == p);
    CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"p":{"N":1,"K":1,"coeffs":[[2,0,"1/1"]]}})")), Error);
    CHECK_THROWS_AS(parse("q*dt", {}), ParseError);
}
