#pragma once

#include "fauto/rational.hpp"
#include "fauto/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fauto {

struct Window {
    int k_min = 0;
    int k_max = 0;
};

/// Upper half [K/2, K] of a truncation K.
Window default_window(int K);

/// r with 1/r = exp(slope of the least-squares line through
/// (k, log|u_k| - s log k!)) over the nonzero coefficients in the window.
/// Throws Error("radius_indeterminate") on an all-zero window and
/// Error("insufficient_data") with fewer than 8 nonzero coefficients.
double radius_estimate(const SeriesZ& u, const Rational& s, Window w);

struct AlphaFit {
    double alpha_hat = 0;
    double a_hat = 0;
    bool degenerate = false;  // all radii equal
};

/// Least squares of log r(n) against log(n+1); needs at least 8 points.
AlphaFit fit_alpha(const std::map<long, double>& radii);

/// Coefficient of k log k in the fit log|u_k| ~ s k log k + c k + d.
double fit_gevrey(const SeriesZ& u, Window w);

/// Constants for |u_{n,k}| <= A(n) B^k max(n,1)^{alpha k} k!^s on the
/// table, in logs: A(n) as small as possible first (|u_{n,0}| where that is
/// nonzero), then the smallest B.
struct BoundConstants {
    std::vector<double> log_A;  // indexed by n
    double log_B = 0;
    bool verified = false;
    /// Cell that breaks the bound once B is lowered by 10% (A fixed).
    std::optional<std::pair<int, int>> minimality_witness;
};

BoundConstants bound_constants(const SeriesTZ& u, const Rational& alpha, const Rational& s);
bool check_bound(const SeriesTZ& u, const Rational& alpha, const Rational& s, const std::vector<double>& log_A,
                 double log_B);

struct GrowthReport {
    std::map<long, double> radii;
    AlphaFit alpha;
    std::optional<double> s_hat;
    Window window;
    int n_min = 0;
    int n_max = 0;
    BoundConstants bounds;
    std::vector<std::string> notes;
};

/// Radii for every row with enough data, the alpha fit, a Gevrey fit on the
/// last row and the bound constants for (alpha, s).
GrowthReport analyze_growth(const SeriesTZ& u, const Rational& s, const Rational& alpha,
                            std::optional<Window> w = std::nullopt);

nlohmann::json to_json(const GrowthReport& r);
/// CSV "n,r_hat".
std::string radii_csv(const GrowthReport& r);
/// Log-log plot of r(n) against n+1 with the fitted line.
std::string radii_svg(const GrowthReport& r);

}  // namespace fauto
