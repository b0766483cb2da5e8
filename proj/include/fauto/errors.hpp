#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fauto {

/// Base of every error raised by the library. `code()` is a stable,
/// machine-readable identifier used by the CLI error object.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error("parse_error", message + " at line " + std::to_string(line) + ", column " +
                                   std::to_string(column)),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// m = max(q - ord_t a_qr) is negative.
class HypothesisError : public Error {
public:
    explicit HypothesisError(int m)
        : Error("hypothesis_violated", "hypothesis violated: m = " + std::to_string(m) + " < 0"),
          m_(m) {}
    int m() const noexcept { return m_; }

private:
    int m_;
};

/// Some principal term has ord_z of its slice below its z-derivative order.
class NegativeOrdinateError : public Error {
public:
    explicit NegativeOrdinateError(int l)
        : Error("negative_lower_ordinate",
                "negative lower ordinate l = " + std::to_string(l) + ": condition (a) fails"),
          l_(l) {}
    int l() const noexcept { return l_; }

private:
    int l_;
};

class ResonanceError : public Error {
public:
    ResonanceError(long n, long k)
        : Error("resonance", "W(n,k) = 0 at n = " + std::to_string(n) + ", k = " + std::to_string(k)),
          n_(n), k_(k) {}
    long n() const noexcept { return n_; }
    long k() const noexcept { return k_; }

private:
    long n_;
    long k_;
};

/// An automorphism condition (a)/(b)/(c) is violated at a concrete n.
class ConditionError : public Error {
public:
    ConditionError(char condition, long n, const std::string& detail)
        : Error(std::string("condition_") + condition + "_failed",
                std::string("condition (") + condition + ") fails at n = " + std::to_string(n) + ": " +
                    detail),
          condition_(condition), n_(n) {}
    char condition() const noexcept { return condition_; }
    long n() const noexcept { return n_; }

private:
    char condition_;
    long n_;
};

}  // namespace fauto
