#ifndef FIBLAB_PARSER_HPP
#define FIBLAB_PARSER_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "fiblab/expr.hpp"

namespace fiblab {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
          line(line_),
          col(col_) {}
};

// Recursive-descent parser for the identity DSL.
//
//   identity := expr ("=" expr)+ [";" cond ("," cond)*]
//   cond     := var ">=" int
//   expr     := ["-"] term (("+"|"-") term)*
//   term     := factor ("*" factor)*
//   factor   := base ["^" (uint | "(" lin ")")]
//   base     := rational | "F[" lin "]" | "L[" lin "]" | "Fk{" uint "}[" lin "]"
//             | "H{" int "," int "}[" lin "]" | "(-1)^(" lin ")" | "C(" lin "," lin ")"
//             | "Sum(" var "," lin "," lin "," expr ")" | "(" expr ")"
//   lin      := signed integer-linear combination, products of <= 2 variables
//               allowed so parameterized subscripts (k*n+m) can be written.
class Parser {
  public:
    explicit Parser(std::string text) : src_(std::move(text)) {}

    Identity parse_identity() {
        Identity id;
        id.sides.push_back(parse_expr());
        expect('=');
        id.sides.push_back(parse_expr());
        while (peek() == '=') {
            get();
            id.sides.push_back(parse_expr());
        }
        if (peek() == ';') {
            get();
            parse_cond(id);
            while (peek() == ',') {
                get();
                parse_cond(id);
            }
        }
        skip_ws();
        if (pos_ < src_.size()) err("trailing input");
        validate(id);
        for (auto& s : id.sides) s = canonicalize(s);
        return id;
    }

    ExprPtr parse_single_expr() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size()) err("trailing input");
        return canonicalize(e);
    }

  private:
    std::string src_;
    size_t pos_ = 0;
    std::vector<std::string> sum_stack_;

    void err(const std::string& msg) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    char get() {
        skip_ws();
        if (pos_ >= src_.size()) err("unexpected end of input");
        return src_[pos_++];
    }

    void expect(char c) {
        if (get() != c) {
            --pos_;
            err(std::string("expected '") + c + "'");
        }
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool lookahead(const std::string& s) {
        skip_ws();
        size_t p = pos_;
        for (char c : s) {
            while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
            if (p >= src_.size() || src_[p] != c) return false;
            ++p;
        }
        return true;
    }

    void consume(const std::string& s) {
        for (char c : s) expect(c);
    }

    long long parse_uint() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            err("expected number");
        long long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            v = v * 10 + (src_[pos_++] - '0');
        return v;
    }

    long long parse_int() {
        bool neg = accept('-');
        long long v = parse_uint();
        return neg ? -v : v;
    }

    std::string parse_name() {
        skip_ws();
        if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_])))
            err("expected name");
        std::string s;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
            s += src_[pos_++];
        return s;
    }

    // one signed term of a linear form; sign handled by caller
    void parse_lin_term(LinForm& f, long long sign) {
        skip_ws();
        long long coeff = 1;
        bool have_coeff = false;
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            coeff = parse_uint();
            have_coeff = true;
            // juxtaposed variable ("3n") or explicit product ("3*n")
            if (peek() == '*') get();
        }
        skip_ws();
        if (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
            std::string v1 = parse_name();
            if (peek() == '*') {
                size_t save = pos_;
                get();
                skip_ws();
                if (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
                    std::string v2 = parse_name();
                    f.add_term({v1, v2}, sign * coeff);
                    return;
                }
                pos_ = save;  // not a var product
            }
            f.add_term({v1}, sign * coeff);
        } else {
            if (!have_coeff) err("expected linear term");
            f.constant += sign * coeff;
        }
    }

    LinForm parse_lin() {
        LinForm f;
        long long sign = accept('-') ? -1 : 1;
        parse_lin_term(f, sign);
        while (peek() == '+' || peek() == '-') {
            sign = (get() == '-') ? -1 : 1;
            parse_lin_term(f, sign);
        }
        return f;
    }

    LinForm parse_bracketed_lin() {
        expect('[');
        LinForm f = parse_lin();
        expect(']');
        return f;
    }

    ExprPtr parse_base() {
        skip_ws();
        if (lookahead("(-1)^(")) {
            consume("(-1)^(");
            LinForm f = parse_lin();
            expect(')');
            return make_sign(f);
        }
        char c = peek();
        if (c == '(') {
            get();
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long num = parse_uint();
            if (peek() == '/') {
                get();
                long long den = parse_uint();
                if (den == 0) err("zero denominator");
                return make_const(mkrat(num, den));
            }
            return make_const(mkrat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t save = pos_;
            std::string name = parse_name();
            if (name == "F" && peek() == '[') return make_fib(parse_bracketed_lin());
            if (name == "L" && peek() == '[') return make_lucas(parse_bracketed_lin());
            if (name == "Fk" && peek() == '{') {
                get();
                long long k = parse_uint();
                expect('}');
                return make_kfib(k, parse_bracketed_lin());
            }
            if (name == "H" && peek() == '{') {
                get();
                long long h0 = parse_int();
                expect(',');
                long long h1 = parse_int();
                expect('}');
                return make_genfib(h0, h1, parse_bracketed_lin());
            }
            if (name == "C" && peek() == '(') {
                get();
                LinForm upper = parse_lin();
                expect(',');
                LinForm lower = parse_lin();
                expect(')');
                return make_binom(upper, lower);
            }
            if (name == "Sum" && peek() == '(') {
                get();
                std::string var = parse_name();
                for (auto& v : sum_stack_)
                    if (v == var) err("shadowed sum variable '" + var + "'");
                expect(',');
                LinForm lower = parse_lin();
                expect(',');
                LinForm upper = parse_lin();
                expect(',');
                sum_stack_.push_back(var);
                ExprPtr body = parse_expr();
                sum_stack_.pop_back();
                expect(')');
                if (lower.mentions(var) || upper.mentions(var))
                    err("sum limits mention the bound variable '" + var + "'");
                return make_sum(var, lower, upper, body);
            }
            pos_ = save;
            err("unknown name '" + name + "'");
        }
        err("expected expression");
        return nullptr;  // unreachable
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_base();
        if (peek() == '^') {
            get();
            skip_ws();
            if (peek() == '(') {
                get();
                LinForm exp = parse_lin();
                expect(')');
                return make_pow(base, exp);
            }
            long long e = parse_uint();
            if (e < 1) err("power exponent must be >= 1");
            return make_pow(base, LinForm(e));
        }
        return base;
    }

    ExprPtr parse_term() {
        std::vector<ExprPtr> factors{parse_factor()};
        while (peek() == '*') {
            get();
            factors.push_back(parse_factor());
        }
        if (factors.size() == 1) return factors[0];
        return make_mul(std::move(factors));
    }

    ExprPtr parse_expr() {
        std::vector<ExprPtr> terms;
        bool lead_neg = accept('-');
        ExprPtr t = parse_term();
        terms.push_back(lead_neg ? make_neg(t) : t);
        while (peek() == '+' || peek() == '-') {
            bool neg = (get() == '-');
            ExprPtr u = parse_term();
            terms.push_back(neg ? make_neg(u) : u);
        }
        if (terms.size() == 1) return terms[0];
        return make_add(std::move(terms));
    }

    void parse_cond(Identity& id) {
        std::string v = parse_name();
        expect('>');
        expect('=');
        long long b = parse_int();
        if (id.conditions.count(v)) err("duplicate condition for '" + v + "'");
        id.conditions[v] = b;
    }

    void validate(const Identity& id) const {
        std::set<std::string> fv = free_vars(id);
        for (auto& [v, b] : id.conditions)
            if (!fv.count(v))
                throw ParseError("condition on unbound variable '" + v + "'", 1, 1);
    }
};

inline Identity parse(const std::string& text) { return Parser(text).parse_identity(); }
inline ExprPtr parse_expr_text(const std::string& text) {
    return Parser(text).parse_single_expr();
}

}  // namespace fiblab

#endif
