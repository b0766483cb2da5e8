#include "fauto/growth.hpp"

#include "fauto/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace fauto {

namespace {

struct Line {
    double slope;
    double intercept;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double slope = sxx == 0 ? 0 : sxy / sxx;
    return {slope, my - slope * mx};
}

// (k, log|u_k|) for the nonzero coefficients in the window.
void collect(const SeriesZ& u, Window w, std::vector<double>& ks, std::vector<double>& logs) {
    if (w.k_min < 0 || w.k_max > u.truncation() || w.k_min > w.k_max)
        throw Error("invalid_window", "regression window outside the truncation");
    for (int k = w.k_min; k <= w.k_max; ++k) {
        if (u[k] == 0) continue;
        ks.push_back(k);
        logs.push_back(log_abs(u[k]));
    }
    if (ks.empty()) throw Error("radius_indeterminate", "radius indeterminate (>= truncation resolution)");
    if (ks.size() < 8) throw Error("insufficient_data", "fewer than 8 nonzero coefficients in the window");
}

}  // namespace

Window default_window(int K) { return {K / 2, K}; }

double radius_estimate(const SeriesZ& u, const Rational& s, Window w) {
    std::vector<double> ks;
    std::vector<double> ys;
    collect(u, w, ks, ys);
    double sd = s.get_d();
    for (std::size_t i = 0; i < ks.size(); ++i) ys[i] -= sd * std::lgamma(ks[i] + 1);
    return std::exp(-least_squares(ks, ys).slope);
}

AlphaFit fit_alpha(const std::map<long, double>& radii) {
    if (radii.size() < 8) throw Error("insufficient_data", "alpha fit needs at least 8 radii");
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& [n, r] : radii) {
        if (!(r > 0)) throw Error("invalid_radius", "radius must be positive");
        x.push_back(std::log(static_cast<double>(n) + 1));
        y.push_back(std::log(r));
    }
    AlphaFit f;
    auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    if (*hi - *lo <= 1e-12 * std::max(1.0, std::fabs(*hi))) {
        f.degenerate = true;
        f.alpha_hat = 0;
        f.a_hat = std::exp(*hi);
        return f;
    }
    Line l = least_squares(x, y);
    f.alpha_hat = -l.slope;
    f.a_hat = std::exp(l.intercept);
    return f;
}

double fit_gevrey(const SeriesZ& u, Window w) {
    std::vector<double> ks;
    std::vector<double> ys;
    collect(u, w, ks, ys);
    // Normal equations for y ~ s (k log k) + c k + d, columns centred.
    std::size_t n = ks.size();
    std::vector<double> x1(n);
    std::vector<double> x2(n);
    double m1 = 0, m2 = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = ks[i] * std::log(std::max(ks[i], 1.0));
        x2[i] = ks[i];
        m1 += x1[i];
        m2 += x2[i];
        my += ys[i];
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    my /= static_cast<double>(n);
    long double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long double a = x1[i] - m1;
        long double b = x2[i] - m2;
        long double c = ys[i] - my;
        s11 += a * a;
        s12 += a * b;
        s22 += b * b;
        s1y += a * c;
        s2y += b * c;
    }
    long double det = s11 * s22 - s12 * s12;
    if (det == 0) return 0;
    return static_cast<double>((s1y * s22 - s2y * s12) / det);
}

namespace {

double base_log(int n, int k, double alpha, double s) {
    return alpha * k * std::log(static_cast<double>(std::max(n, 1))) + s * std::lgamma(k + 1.0);
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

bool check_bound(const SeriesTZ& u, const Rational& alpha, const Rational& s, const std::vector<double>& log_A,
                 double log_B) {
    Truncation t = u.truncation();
    double a = alpha.get_d();
    double sd = s.get_d();
    for (int n = 0; n <= t.n; ++n)
        for (int k = 0; k <= t.k; ++k) {
            if (u.coeff(n, k) == 0) continue;
            double rhs = log_A[static_cast<std::size_t>(n)] + k * log_B + base_log(n, k, a, sd);
            if (log_abs(u.coeff(n, k)) > rhs + 1e-9 * std::max(1.0, std::fabs(rhs))) return false;
        }
    return true;
}

BoundConstants bound_constants(const SeriesTZ& u, const Rational& alpha, const Rational& s) {
    Truncation t = u.truncation();
    double a = alpha.get_d();
    double sd = s.get_d();
    BoundConstants bc;
    // A(n) >= |u_{n,0}| always; take it as A(n) where that is nonzero, then
    // the smallest B for those rows. Remaining rows get the smallest A(n)
    // for that B.
    auto rows_pinned = [&](bool pinned_only) {
        double lb = kNegInf;
        for (int n = 0; n <= t.n; ++n) {
            bool pinned = u.coeff(n, 0) != 0;
            if (pinned_only && !pinned) continue;
            double la = pinned ? log_abs(u.coeff(n, 0)) : 0;
            for (int k = 1; k <= t.k; ++k)
                if (u.coeff(n, k) != 0)
                    lb = std::max(lb, (log_abs(u.coeff(n, k)) - la - base_log(n, k, a, sd)) / k);
        }
        return lb;
    };
    bc.log_B = rows_pinned(true);
    if (bc.log_B == kNegInf) bc.log_B = rows_pinned(false);
    if (bc.log_B == kNegInf) bc.log_B = 0;
    bc.log_A.assign(static_cast<std::size_t>(t.n) + 1, kNegInf);
    for (int n = 0; n <= t.n; ++n)
        for (int k = 0; k <= t.k; ++k)
            if (u.coeff(n, k) != 0)
                bc.log_A[static_cast<std::size_t>(n)] =
                    std::max(bc.log_A[static_cast<std::size_t>(n)],
                             log_abs(u.coeff(n, k)) - k * bc.log_B - base_log(n, k, a, sd));
    bc.verified = check_bound(u, alpha, s, bc.log_A, bc.log_B);
    double lowered = bc.log_B + std::log(0.9);
    for (int n = 0; n <= t.n && !bc.minimality_witness; ++n)
        for (int k = 1; k <= t.k; ++k) {
            if (u.coeff(n, k) == 0) continue;
            double rhs = bc.log_A[static_cast<std::size_t>(n)] + k * lowered + base_log(n, k, a, sd);
            if (log_abs(u.coeff(n, k)) > rhs + 1e-9 * std::max(1.0, std::fabs(rhs))) {
                bc.minimality_witness = std::make_pair(n, k);
                break;
            }
        }
    return bc;
}

GrowthReport analyze_growth(const SeriesTZ& u, const Rational& s, const Rational& alpha, std::optional<Window> w) {
    GrowthReport r;
    Truncation t = u.truncation();
    r.window = w.value_or(default_window(t.k));
    r.n_min = -1;
    for (int n = 0; n <= t.n; ++n) {
        try {
            r.radii[n] = radius_estimate(u.row(n), s, r.window);
            if (r.n_min < 0) r.n_min = n;
            r.n_max = n;
        } catch (const Error& e) {
            r.notes.push_back("n = " + std::to_string(n) + ": " + e.what());
        }
    }
    if (r.radii.size() >= 8)
        r.alpha = fit_alpha(r.radii);
    else
        r.notes.push_back("fewer than 8 radii: alpha not fitted");
    if (!r.radii.empty()) {
        try {
            r.s_hat = fit_gevrey(u.row(r.n_max), r.window);
        } catch (const Error& e) {
            r.notes.push_back(std::string("gevrey fit: ") + e.what());
        }
    }
    r.bounds = bound_constants(u, alpha, s);
    return r;
}

namespace {

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const GrowthReport& r) {
    nlohmann::json radii = nlohmann::json::array();
    for (const auto& [n, x] : r.radii) radii.push_back({n, x});
    nlohmann::json logA = nlohmann::json::array();
    for (double v : r.bounds.log_A) logA.push_back(finite_or_null(v));
    nlohmann::json j;
    j["radii"] = radii;
    j["alpha_hat"] = r.alpha.alpha_hat;
    j["a_hat"] = r.alpha.a_hat;
    j["alpha_degenerate"] = r.alpha.degenerate;
    j["s_hat"] = r.s_hat ? nlohmann::json(*r.s_hat) : nlohmann::json(nullptr);
    j["regression_window"] = {{"n_min", r.n_min}, {"n_max", r.n_max}, {"k_min", r.window.k_min}, {"k_max", r.window.k_max}};
    j["bound_constants"] = {{"log_A", logA},
                            {"log_B", r.bounds.log_B},
                            {"B", std::exp(r.bounds.log_B)},
                            {"verified", r.bounds.verified},
                            {"minimality_witness", r.bounds.minimality_witness
                                                       ? nlohmann::json({r.bounds.minimality_witness->first,
                                                                         r.bounds.minimality_witness->second})
                                                       : nlohmann::json(nullptr)}};
    j["notes"] = r.notes;
    return j;
}

std::string radii_csv(const GrowthReport& r) {
    std::ostringstream os;
    os << "n,r_hat\n" << std::setprecision(17);
    for (const auto& [n, x] : r.radii) os << n << "," << x << "\n";
    return os.str();
}

std::string radii_svg(const GrowthReport& r) {
    const double W = 480, H = 360, M = 40;
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, x] : r.radii) pts.emplace_back(std::log(n + 1.0), std::log(x));
    std::ostringstream os;
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    if (pts.empty()) {
        os << "</svg>\n";
        return os.str();
    }
    double x0 = pts.front().first, x1 = x0, y0 = pts.front().second, y1 = y0;
    for (auto [x, y] : pts) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };
    os << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\"" << H - 2 * M
       << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (auto [x, y] : pts) os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
    double la = std::log(r.alpha.a_hat > 0 ? r.alpha.a_hat : 1.0);
    os << "<line x1=\"" << px(x0) << "\" y1=\"" << py(la - r.alpha.alpha_hat * x0) << "\" x2=\"" << px(x1) << "\" y2=\""
       << py(la - r.alpha.alpha_hat * x1) << "\" stroke=\"#d62728\"/>\n";
    os << "<text x=\"" << M << "\" y=\"" << M - 10 << "\" font-size=\"12\">log r(n) against log(n+1), alpha_hat = "
       << r.alpha.alpha_hat << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace fauto
