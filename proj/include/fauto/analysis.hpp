#pragma once

#include "fauto/normal_operator.hpp"
#include "fauto/polynomial.hpp"
#include "fauto/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fauto {

/// One term w(n) a(z) z^j (z dz)^i with a(0) != 0.
struct ThetaTerm {
    int i = 0;
    int j = 0;
    Polynomial w;
    SeriesZ a;
};

/// P(n, dz) = sum w_ij(n) a_ij(z) z^j (z dz)^i, known for z-orders <= z_trunc.
struct ThetaOperator {
    std::vector<ThetaTerm> terms;  // sorted by (i, j)
    int z_trunc = 0;
    /// Largest q - m over the principal terms; beyond it the vanishing
    /// pattern of the falling factorials in n no longer changes.
    int n_star = 0;

    const ThetaTerm* find(int i, int j) const;
    /// Lowest j over the terms (the lower ordinate), nullopt when empty.
    std::optional<int> lower_ordinate() const;
};

/// m = max(q - ord_t a_qr). Identically zero coefficients are skipped and
/// reported through `warnings`. Throws HypothesisError when m < 0.
int compute_m(const NormalOperator& op, std::vector<std::string>* warnings = nullptr);

/// Keeps the terms with q - ord_t a_qr = m, each reduced to its t^(q-m) slice.
NormalOperator principal_part(const NormalOperator& op, int m);

/// Euler form of P~_m(n, dz). Each slice z^alpha a~(z) with alpha >= r is
/// rewritten through z^r dz^r = sum_i s(r,i) (z dz)^i. Throws
/// NegativeOrdinateError when some alpha < r.
ThetaOperator reduce_to_theta(const NormalOperator& principal, int m, std::vector<std::string>* warnings = nullptr);

/// Coefficients of P~_m(n, dz) z^k computed directly from the dz form, up to
/// z-order `K`.
SeriesZ apply_principal_dz(const NormalOperator& principal, int m, long n, int k, int K);
/// Same quantity computed from the Euler form.
SeriesZ apply_theta(const ThetaOperator& theta, long n, int k, int K);

struct ExponentReport {
    int m = 0;
    int l = 0;
    int p = 0;
    Rational s;          // active value
    Rational s_derived;  // from the operator's geometry
    bool s_overridden = false;
    Rational alpha;
    Rational beta;
    Rational gamma;
    std::optional<Rational> gamma_tilde;  // undefined when s <= s'
    std::map<std::pair<int, int>, int> deg_table;
};

/// Throws Error("no_j0_stratum") when no term has j = 0.
ExponentReport exponents(const ThetaOperator& theta, int m, std::optional<Rational> s_override = std::nullopt);

nlohmann::json to_json(const ExponentReport& r);
nlohmann::json to_json(const ThetaOperator& t);

/// Everything the later stages need, computed once.
struct Analysis {
    int m = 0;
    NormalOperator principal;
    ThetaOperator theta;
    std::vector<std::string> warnings;
};

Analysis analyze_operator(const NormalOperator& op);

}  // namespace fauto
