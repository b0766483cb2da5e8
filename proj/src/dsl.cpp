#include "fauto/dsl.hpp"

#include "fauto/errors.hpp"

#include <cctype>
#include <vector>

namespace fauto {

ExprPtr Expr::atom(ExprKind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

ExprPtr Expr::literal(const Rational& v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Literal;
    e->value = v;
    return e;
}

ExprPtr Expr::param(std::string name, SeriesTZ s) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Param;
    e->name = std::move(name);
    e->series = std::move(s);
    return e;
}

ExprPtr Expr::binary(ExprKind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::power(ExprPtr base, unsigned exp) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Pow;
    e->lhs = std::move(base);
    e->exponent = exp;
    return e;
}

ExprPtr Expr::negate(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Neg;
    e->lhs = std::move(a);
    return e;
}

namespace {

enum class Tok { T, Z, Dt, Dz, Plus, Minus, Star, Caret, LParen, RParen, Number, Ident, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            advance(1);
            continue;
        }
        int l = line;
        int cl = col;
        auto single = [&](Tok k) {
            out.push_back({k, std::string(1, static_cast<char>(c)), l, cl});
            advance(1);
        };
        switch (c) {
            case '+': single(Tok::Plus); continue;
            case '-': single(Tok::Minus); continue;
            case '*': single(Tok::Star); continue;
            case '^': single(Tok::Caret); continue;
            case '(': single(Tok::LParen); continue;
            case ')': single(Tok::RParen); continue;
            default: break;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '/') {
                std::size_t d = j + 1;
                while (d < src.size() && std::isdigit(static_cast<unsigned char>(src[d]))) ++d;
                if (d == j + 1) throw ParseError("expected denominator after '/'", l, cl + static_cast<int>(j - i) + 1);
                j = d;
            }
            out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            std::string word(src.substr(i, j - i));
            Tok k = Tok::Ident;
            if (word == "t") k = Tok::T;
            else if (word == "z") k = Tok::Z;
            else if (word == "dt") k = Tok::Dt;
            else if (word == "dz") k = Tok::Dz;
            out.push_back({k, word, l, cl});
            advance(j - i);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", l, cl);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const ParamMap& params) : toks_(std::move(toks)), params_(params) {}

    ExprPtr parse_all() {
        ExprPtr e = expr();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

    ExprPtr expr() {
        ExprPtr e;
        if (peek().kind == Tok::Minus) {
            take();
            e = Expr::negate(term());
        } else {
            e = term();
        }
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            ExprKind k = take().kind == Tok::Plus ? ExprKind::Add : ExprKind::Sub;
            e = Expr::binary(k, e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (peek().kind == Tok::Star) {
            take();
            e = Expr::binary(ExprKind::Mul, e, factor());
        }
        return e;
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (peek().kind != Tok::Caret) return b;
        take();
        const Token& t = peek();
        if (t.kind == Tok::Minus) fail("negative exponent");
        if (t.kind != Tok::Number) fail("expected a nonnegative integer exponent");
        if (t.text.find('/') != std::string::npos) fail("non-integer exponent");
        if (t.text.size() > 4) fail("exponent too large");
        unsigned e = static_cast<unsigned>(std::stoul(t.text));
        take();
        return Expr::power(b, e);
    }

    ExprPtr base() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::T: take(); return Expr::atom(ExprKind::T);
            case Tok::Z: take(); return Expr::atom(ExprKind::Z);
            case Tok::Dt: take(); return Expr::atom(ExprKind::Dt);
            case Tok::Dz: take(); return Expr::atom(ExprKind::Dz);
            case Tok::Number: {
                Rational v;
                try {
                    v = parse_rational(t.text);
                } catch (const std::invalid_argument&) {
                    fail("invalid rational literal '" + t.text + "'");
                }
                take();
                return Expr::literal(v);
            }
            case Tok::Ident: {
                auto it = params_.find(t.text);
                if (it == params_.end()) fail("unknown parameter '" + t.text + "'");
                take();
                return Expr::param(it->first, it->second);
            }
            case Tok::LParen: {
                take();
                ExprPtr e = expr();
                if (peek().kind != Tok::RParen) fail("expected ')'");
                take();
                return e;
            }
            case Tok::End: fail("unexpected end of input");
            default: fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const ParamMap& params_;
};

int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul: return 2;
        case ExprKind::Pow: return 3;
        default: return 4;
    }
}

void print(const ExprPtr& e, std::string& out) {
    auto child = [&](const ExprPtr& c, bool parens) {
        if (parens) out += '(';
        print(c, out);
        if (parens) out += ')';
    };
    switch (e->kind) {
        case ExprKind::T: out += "t"; break;
        case ExprKind::Z: out += "z"; break;
        case ExprKind::Dt: out += "dt"; break;
        case ExprKind::Dz: out += "dz"; break;
        case ExprKind::Literal: out += e->value.get_str(); break;
        case ExprKind::Param: out += e->name; break;
        case ExprKind::Neg:
            out += "(-";
            child(e->lhs, precedence(e->lhs) < 2);
            out += ')';
            break;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul: {
            int p = precedence(e);
            child(e->lhs, precedence(e->lhs) < p);
            out += e->kind == ExprKind::Add ? " + " : e->kind == ExprKind::Sub ? " - " : "*";
            child(e->rhs, precedence(e->rhs) <= p);
            break;
        }
        case ExprKind::Pow:
            child(e->lhs, precedence(e->lhs) <= 3);
            out += '^';
            out += std::to_string(e->exponent);
            break;
    }
}

}  // namespace

ExprPtr parse(std::string_view source, const ParamMap& params) {
    Parser p(tokenize(source), params);
    return p.parse_all();
}

std::string to_string(const ExprPtr& e) {
    std::string out;
    print(e, out);
    return out;
}

bool same_tree(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprKind::Literal: return a->value == b->value;
        case ExprKind::Param: return a->name == b->name;
        case ExprKind::Pow: return a->exponent == b->exponent && same_tree(a->lhs, b->lhs);
        case ExprKind::Neg: return same_tree(a->lhs, b->lhs);
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul: return same_tree(a->lhs, b->lhs) && same_tree(a->rhs, b->rhs);
        default: return true;
    }
}

std::pair<int, int> derivative_degree(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Dt: return {1, 0};
        case ExprKind::Dz: return {0, 1};
        case ExprKind::Add:
        case ExprKind::Sub: {
            auto a = derivative_degree(e->lhs);
            auto b = derivative_degree(e->rhs);
            return {std::max(a.first, b.first), std::max(a.second, b.second)};
        }
        case ExprKind::Mul: {
            auto a = derivative_degree(e->lhs);
            auto b = derivative_degree(e->rhs);
            return {a.first + b.first, a.second + b.second};
        }
        case ExprKind::Pow: {
            auto a = derivative_degree(e->lhs);
            int n = static_cast<int>(e->exponent);
            return {a.first * n, a.second * n};
        }
        case ExprKind::Neg: return derivative_degree(e->lhs);
        default: return {0, 0};
    }
}

}  // namespace fauto
