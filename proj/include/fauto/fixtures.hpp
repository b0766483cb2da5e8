#pragma once

#include "fauto/dsl.hpp"
#include "fauto/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fauto {

/// A ready-made operator: DSL source plus the series parameters it uses.
struct Fixture {
    std::string name;
    std::string source;
    ParamMap params;
};

/// (dt*t)(dz*z) - (dt*t)^2 z (dz*z + 1)
Fixture example_shrinking();
/// (dt*t)(dz*z) - (dt*t)^mu z^nu (dz*z + nu), mu >= 2, nu >= 1.
Fixture example_shrinking_family(int mu, int nu);
/// p0 dt^m + p1 dt^m dz + p2 t dt^(m+1) dz with
/// p0 = a + z p00 + ..., p1 = (b + p10) z^2 + ..., p2 = (c + p20) z^h + ...
/// where p00 = 1 + z, p10 = p20 = z and a few t-dependent tails. Parameters
/// are tabulated up to `pad` in both variables.
Fixture example_gevrey(int m, const Rational& a, const Rational& b, const Rational& c, int h, int pad = 64);
/// z dz - 5: indicial polynomial k - 5.
Fixture resonant_toy();

/// Random operator built to satisfy the automorphism conditions: a positive
/// constant times dt^m, further principal terms on the j = 0 stratum with
/// positive coefficients (so the indicial polynomial has positive
/// falling-factorial coefficients), principal terms with j > 0 of either
/// sign, and lower-order terms. Deterministic in `seed`.
Fixture random_automorphism(unsigned long seed);

/// Every built-in fixture used by the demo and the soundness checks.
std::vector<Fixture> builtin_fixtures();

}  // namespace fauto
