#include "fauto/newton.hpp"

#include "fauto/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fauto {

namespace {

// Cross product of (b - a) and (c - a); > 0 for a left turn.
long cross(const Point& a, const Point& b, const Point& c) {
    return static_cast<long>(b.first - a.first) * (c.second - a.second) -
           static_cast<long>(b.second - a.second) * (c.first - a.first);
}

}  // namespace

NewtonPolygon build_polygon(std::vector<Point> support) {
    if (support.empty()) throw Error("empty_support", "Newton polygon of an empty support");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    NewtonPolygon poly;
    poly.support = support;

    int l = support.front().second;
    for (const auto& p : support) l = std::min(l, p.second);
    poly.lower_ordinate = l;
    int x0 = 0;
    std::map<int, int> lowest;  // column -> least j
    std::map<int, int> highest;
    for (const auto& [i, j] : support) {
        if (j == l) x0 = std::max(x0, i);
        auto it = lowest.find(i);
        if (it == lowest.end() || j < it->second) lowest[i] = j;
        highest[i] = std::max(highest[i], j);
    }

    std::vector<Point> chain{{x0, l}};
    for (const auto& [i, j] : lowest) {
        if (i <= x0) continue;
        Point p{i, j};
        // keep slopes strictly increasing: drop the middle point unless the
        // turn is strictly to the left
        while (chain.size() >= 2 && cross(chain[chain.size() - 2], chain.back(), p) <= 0) chain.pop_back();
        chain.push_back(p);
    }
    for (std::size_t e = 0; e + 1 < chain.size(); ++e) {
        const Point& a = chain[e];
        const Point& b = chain[e + 1];
        poly.edges.push_back({a, b, make_rational(b.second - a.second, b.first - a.first)});
    }
    poly.vertices = chain;
    Point last = chain.back();
    int top = highest[last.first];
    if (top > last.second) {
        Point t{last.first, top};
        poly.edges.push_back({last, t, std::nullopt});
        poly.vertices.push_back(t);
    }
    for (auto& e : poly.edges)
        if (e.slope) e.slope->canonicalize();
    return poly;
}

std::optional<Rational> first_positive_slope(const NewtonPolygon& poly) {
    for (const auto& e : poly.edges)
        if (e.slope && *e.slope > 0) return e.slope;
    return std::nullopt;
}

std::vector<Point> support_at(const ThetaOperator& theta, long n) {
    std::vector<Point> out;
    for (const auto& t : theta.terms)
        if (t.w(n) != 0) out.emplace_back(t.i, t.j);
    return out;
}

long stable_index(const ThetaOperator& theta) {
    long last = theta.n_star;
    for (const auto& t : theta.terms) {
        auto roots = t.w.nonnegative_integer_roots(1L << 20);
        if (!roots.empty()) last = std::max(last, roots.back() + 1);
    }
    return last;
}

ConditionVerdict check_conditions(const ThetaOperator& theta, const Rational& s) {
    ConditionVerdict v;
    v.s = s;
    v.n_checked = stable_index(theta);
    for (long n = 0; n <= v.n_checked; ++n) {
        std::vector<Point> sup = support_at(theta, n);
        if (sup.empty()) {
            if (v.a_pass) {
                v.a_pass = false;
                v.a_witness_n = n;
            }
            continue;
        }
        NewtonPolygon poly = build_polygon(sup);
        if (n == v.n_checked) v.generic = poly;
        if (v.a_pass && poly.lower_ordinate != 0) {
            v.a_pass = false;
            v.a_witness_n = n;
            v.a_witness_l = poly.lower_ordinate;
        }
        std::optional<Rational> slope = first_positive_slope(poly);
        bool ok = !slope || (s > 0 && *slope * s >= 1);
        if (v.b_pass && !ok) {
            v.b_pass = false;
            v.b_witness_n = n;
            v.b_witness_slope = slope;
        }
    }
    return v;
}

nlohmann::json to_json(const NewtonPolygon& p) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& [i, j] : p.vertices) verts.push_back({i, j});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : p.edges)
        edges.push_back({{"from", {e.from.first, e.from.second}},
                         {"to", {e.to.first, e.to.second}},
                         {"slope", e.slope ? nlohmann::json(to_pq_string(*e.slope)) : nlohmann::json("vertical")}});
    nlohmann::json sup = nlohmann::json::array();
    for (const auto& [i, j] : p.support) sup.push_back({i, j});
    auto fps = first_positive_slope(p);
    return {{"support", sup},
            {"vertices", verts},
            {"edges", edges},
            {"lower_ordinate", p.lower_ordinate},
            {"first_positive_slope", fps ? nlohmann::json(to_pq_string(*fps)) : nlohmann::json("none")}};
}

nlohmann::json to_json(const ConditionVerdict& v) {
    nlohmann::json a = {{"pass", v.a_pass}};
    if (v.a_witness_n) a["witness_n"] = *v.a_witness_n;
    if (!v.a_pass) a["witness_l"] = v.a_witness_l ? nlohmann::json(*v.a_witness_l) : nlohmann::json(nullptr);
    nlohmann::json b = {{"pass", v.b_pass}, {"s", to_pq_string(v.s)}};
    if (v.b_witness_n) {
        b["witness_n"] = *v.b_witness_n;
        b["witness_slope"] = v.b_witness_slope ? nlohmann::json(to_pq_string(*v.b_witness_slope)) : nlohmann::json("none");
    }
    return {{"a", a}, {"b", b}, {"n_checked", v.n_checked}, {"polygon", to_json(v.generic)}};
}

std::string to_svg(const NewtonPolygon& p) {
    int imax = 1;
    int jmax = 1;
    for (const auto& [i, j] : p.support) {
        imax = std::max(imax, i);
        jmax = std::max(jmax, j);
    }
    const int cell = 40;
    const int margin = 30;
    int w = (imax + 2) * cell + 2 * margin;
    int h = (jmax + 2) * cell + 2 * margin;
    auto X = [&](double i) { return margin + (i + 1) * cell; };
    auto Y = [&](double j) { return h - margin - (j + 1) * cell; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << Y(0) << "\" x2=\"" << w - margin << "\" y2=\"" << Y(0)
       << "\" stroke=\"#999\"/>\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"" << margin << "\" x2=\"" << X(0) << "\" y2=\"" << h - margin
       << "\" stroke=\"#999\"/>\n";
    // horizontal ray to the left of the first vertex, then the boundary
    const Point& first = p.vertices.front();
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"" << margin << "," << Y(first.second);
    for (const auto& [i, j] : p.vertices) os << " " << X(i) << "," << Y(j);
    os << " " << X(p.vertices.back().first) << "," << margin << "\"/>\n";
    for (const auto& [i, j] : p.support)
        os << "<circle cx=\"" << X(i) << "\" cy=\"" << Y(j) << "\" r=\"4\" fill=\"#c33\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace fauto
