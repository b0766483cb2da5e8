#pragma once

#include "fauto/analysis.hpp"
#include "fauto/normal_operator.hpp"
#include "fauto/resonance.hpp"
#include "fauto/series.hpp"

#include <json.hpp>

namespace fauto {

/// Solves P(n, dz) u_n = f_n for u_{n,0..K} by the k-recurrence
/// W(n,k) u_{n,k} = f_{n,k} - (contributions of u_{n,k'} with k' < k).
/// Throws ResonanceError at the first k with W(n,k) = 0 and Error when K
/// exceeds the Euler form's z-truncation or f_n is shorter than K.
SeriesZ solve_theta(const ThetaOperator& theta, long n, const SeriesZ& f, int K);

/// [z^k] of P(n, dz) u for k <= K.
SeriesZ apply_theta_series(const ThetaOperator& theta, long n, const SeriesZ& u, int K);

struct SolutionTable {
    SeriesTZ u;
    SeriesTZ g;
    bool residual_checked = false;
    /// Window on which u is the exact solution; equals u's truncation.
    Truncation trunc;
    /// Window of P dt^-m u compared with g during the residual check.
    Truncation residual_window;
};

struct SolveOptions {
    bool check_residual = true;
};

/// Coefficient matching for P(dt,dz) dt^-m u = g, lexicographic in (n,k),
/// on g's window. Terms that lower the z-degree make earlier rows depend on
/// data past the window; u is returned on the largest rectangle (rows first)
/// whose entries only depend on known coefficients of g and the operator. Throws ConditionError('a') when
/// a row references a higher z-degree of itself or has an identically zero
/// diagonal, ResonanceError on a zero diagonal entry.
SolutionTable solve_full(const NormalOperator& op, int m, const SeriesTZ& g, const SolveOptions& opt = {});

/// CSV with header n,k,numerator,denominator (nonzero entries only).
std::string to_csv(const SolutionTable& s);
nlohmann::json summary_json(const SolutionTable& s);

/// Inhomogeneity f_n whose solution grows along k = M j*: u_{n,0} = 1 and
/// W(n,k) u_{n,k} = -sum_i w_{i j*}(n) a_{i j*}(0) (k - j*)^i u_{n,k-j*}.
struct AdversarialPair {
    long n = 0;
    SeriesZ f;
    SeriesZ u;
    int i_star = 0;
    int j_star = 0;
    /// D^{j*} = D1 |a_{i*j*}(0)| / (D2 2^{i*}), D1 = |lead w_{i*j*}|/2 and
    /// D2 = sum of |coefficients| of W.
    Rational D_pow;
    double D = 0;
    /// min over M >= 1 of |u_{n,Mj*}| / (D^{Mj*} (Mj*)!^s n^{alpha M j*}),
    /// natural log.
    double log_C = 0;
};

/// Throws Error("no_adversarial_direction") when alpha = 0 and
/// Error("n_too_small") when w_{i*j*}(n) = 0.
AdversarialPair adversarial(const ThetaOperator& theta, const ExponentReport& ex, long n, int K);

/// log(|u_{n,Mj*}| / (D^{Mj*} (Mj*)!^s n^{alpha M j*})) for M = 1..K/j*
/// (nan where u vanishes).
std::vector<double> adversarial_log_ratios(const AdversarialPair& a, const ExponentReport& ex);

nlohmann::json to_json(const AdversarialPair& a);

}  // namespace fauto
