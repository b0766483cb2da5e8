#pragma once

#include "fauto/analysis.hpp"
#include "fauto/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fauto {

using Point = std::pair<int, int>;  // (i, j)

struct PolygonEdge {
    Point from;
    Point to;
    std::optional<Rational> slope;  // nullopt for the vertical edge
};

/// Staircase boundary of conv(union of corner(i,j)), corner(a,b) = {x <= a, y >= b}.
/// `vertices` starts at the bottom-right point of the lowest row, follows the
/// lower hull of the points to its right and ends with the highest support
/// point of the last column, where the vertical edge is drawn.
struct NewtonPolygon {
    std::vector<Point> support;  // sorted, unique
    std::vector<Point> vertices;
    std::vector<PolygonEdge> edges;
    int lower_ordinate = 0;
};

/// Throws Error("empty_support") on an empty support.
NewtonPolygon build_polygon(std::vector<Point> support);

/// Least positive finite slope; nullopt when there is none.
std::optional<Rational> first_positive_slope(const NewtonPolygon& poly);

/// Points (i,j) of the operator with w_ij(n) != 0.
std::vector<Point> support_at(const ThetaOperator& theta, long n);

/// Last n whose polygon has to be inspected individually: every w_ij has a
/// fixed set of nonnegative integer roots, beyond which the support is the
/// generic one.
long stable_index(const ThetaOperator& theta);

struct ConditionVerdict {
    bool a_pass = true;
    std::optional<long> a_witness_n;
    std::optional<int> a_witness_l;  // nullopt when the support is empty
    bool b_pass = true;
    std::optional<long> b_witness_n;
    std::optional<Rational> b_witness_slope;
    Rational s;
    long n_checked = 0;  // polygons for n = 0..n_checked were built
    NewtonPolygon generic;  // polygon at n = n_checked, valid for all larger n
};

/// Conditions (a) lower ordinate zero and (b) first positive slope >= 1/s
/// (no positive slope at all when s = 0) for every n.
ConditionVerdict check_conditions(const ThetaOperator& theta, const Rational& s);

nlohmann::json to_json(const NewtonPolygon& p);
nlohmann::json to_json(const ConditionVerdict& v);

/// Staircase drawing of the polygon.
std::string to_svg(const NewtonPolygon& p);

}  // namespace fauto
