#pragma once

#include "fauto/dsl.hpp"
#include "fauto/series.hpp"

#include <map>
#include <string>
#include <utility>

#include <json.hpp>

namespace fauto {

/// Canonical form sum_{(q,r)} a_qr(t,z) dt^q dz^r. Every stored coefficient
/// is nonzero and all coefficients share the operator's truncation.
struct NormalOperator {
    std::map<std::pair<int, int>, SeriesTZ> terms;
    Truncation trunc;

    bool empty() const { return terms.empty(); }
    friend bool operator==(const NormalOperator&, const NormalOperator&) = default;
};

/// Moves every derivative to the right using dt*t = t*dt + 1 and
/// dz*z = z*dz + 1 (Leibniz product of canonical forms). Atoms t, z and
/// literals are built at `trunc`; parameters use their own truncation. The
/// result is truncated to the smallest order that remains exact.
NormalOperator normal_order(const ExprPtr& e, Truncation trunc);

/// Parses and normal-orders `source` so that the result is exact on at least
/// `target` (atoms are built with enough padding to absorb the derivatives),
/// then restricts to `target`. Parameters with smaller truncation lower it.
NormalOperator compile_operator(std::string_view source, const ParamMap& params, Truncation target);

/// The canonical operator written back as an expression, one parameter
/// "a_q_r" per coefficient.
ExprPtr to_expr(const NormalOperator& op);

/// sum a_qr * dt^q dz^r u, exact on the returned truncation.
SeriesTZ apply_operator(const NormalOperator& op, const SeriesTZ& u);

/// P(dt,dz) dt^{-m} u.
SeriesTZ apply_full(const NormalOperator& op, int m, const SeriesTZ& u);

/// Human-readable listing, one "(q,r): coefficient" line per term.
std::string describe(const NormalOperator& op);

/// Sidecar format {name: {"N": n, "K": k, "coeffs": [[n, k, "p/q"], ...]}}.
ParamMap params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ParamMap& params);

/// Rendering of a truncated series as a polynomial in t and z.
std::string series_to_string(const SeriesTZ& s);

}  // namespace fauto
