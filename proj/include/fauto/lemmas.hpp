#pragma once

#include "fauto/rational.hpp"

#include <string>
#include <vector>

#include <json.hpp>

namespace fauto {

struct LemmaRanges {
    std::vector<Rational> s_values;
    int i_max = 6;
    int p_max = 6;
    int j_max = 4;
    int k_max = 200;
};

LemmaRanges default_lemma_ranges();

struct LemmaCounterexample {
    int lemma;
    Rational s;
    int i;
    int p;
    int j;
    int k;
    int l;
};

struct LemmaReport {
    long checked[3] = {0, 0, 0};
    std::vector<LemmaCounterexample> counterexamples;  // first few only
    long counterexample_count = 0;
    bool pass() const { return counterexample_count == 0; }
};

/// Exhaustive exact check of the three factorial inequalities
///   (1) (k-j-l)^i (k-j-l)!^s l!^s <= k^p k!^s            when js >= i-p,
///   (2) same left side <= k^(s'-s) k^p k!^s, s' = (i-p)/j, when s' < s,
///   (3) (k-j)^i (k-j)!^s >= 2^-i k^p k!^s, k >= 2j,      when js = i-p,
/// for k >= 1, j >= 1, l >= 0, k-j-l >= 0. Rational powers are removed by
/// raising both sides to the common denominator.
LemmaReport lemma_suite(const LemmaRanges& ranges);

nlohmann::json to_json(const LemmaReport& r);

}  // namespace fauto
