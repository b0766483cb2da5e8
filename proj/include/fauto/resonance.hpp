#pragma once

#include "fauto/analysis.hpp"
#include "fauto/polynomial.hpp"
#include "fauto/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fauto {

/// W(n,k) = sum_i c_i(n) k^i with c_i(n) = w_i0(n) a_i0(0).
struct IndicialPolynomial {
    std::map<int, Polynomial> c;  // only nonzero c_i

    static IndicialPolynomial from_theta(const ThetaOperator& theta);
    Rational operator()(long n, long k) const;
    /// W(n, .) as a polynomial in k.
    Polynomial row(long n) const;
    /// W(., k) as a polynomial in n.
    Polynomial column(long k) const;
    int p() const { return c.empty() ? -1 : c.rbegin()->first; }
};

enum class Verdict { certified_strong, grid_verified_only, resonant };
enum class TailArgument { sign_definite, leading_term, none };

std::string to_string(Verdict v);
std::string to_string(TailArgument t);

struct ResonanceCertificate {
    Verdict verdict = Verdict::grid_verified_only;
    std::optional<Rational> C0;
    long grid_n = 0;
    long grid_k = 0;
    TailArgument tail = TailArgument::none;
    std::optional<std::pair<long, long>> witness;
    std::optional<Rational> grid_min;  // min |W| over the grid (absent when resonant)
    std::vector<std::string> notes;
};

struct CertifyOptions {
    long grid_n = 256;
    long grid_k = 256;
    /// Largest index scanned exactly when a tail bound needs it.
    long scan_cap = 65536;
};

/// Exhaustive grid check plus a tail argument where one applies. Rows up to
/// grid_n are searched for roots in k exactly, so a resonance witness is the
/// lexicographically least zero among those rows. Throws Error when a grid
/// bound is below 8.
ResonanceCertificate certify(const IndicialPolynomial& W, const CertifyOptions& opt = {});

nlohmann::json to_json(const ResonanceCertificate& c);

/// Near-resonance demonstration for W(x,y) = x - lambda (y+1) with
/// lambda = sum_{j<=J} 10^(-j!).
struct LiouvilleRecord {
    long n;
    long k;
    Rational abs_w;
};

struct LiouvilleReport {
    Rational lambda;
    std::vector<LiouvilleRecord> records;  // strictly decreasing minima over k
    /// For each m = 2..J the first pair with n,k >= 1 and |W| < (k+1)^-(m-1).
    std::map<int, LiouvilleRecord> witnesses;
    std::vector<std::string> notes;
};

LiouvilleReport liouville_demo(int J, long N, long K);
Rational liouville_lambda(int J);

/// CSV rows "n,k,abs_w" with |W| written to 40 significant digits.
std::string liouville_csv(const LiouvilleReport& r);
nlohmann::json to_json(const LiouvilleReport& r);

}  // namespace fauto
