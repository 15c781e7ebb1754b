// Recursive-descent parser for the calculator expression grammar.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | primary
//   primary := INT '/' INT          (rational literal)
//            | INT
//            | cf '[' a0 (';' cfterms)? ']'
//            | inv '(' expr ')'
//            | '(' expr ')'
//   cfterms := INT (',' INT)* (',' block)? | block
//   block   := '(' INT (',' INT)* ')' '*'
//
// Precedence: unary minus > '*','/' > '+','-'; all left-associative.
#pragma once

#include "eudoxus/cf.hpp"
#include "eudoxus/integer.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eudoxus {

struct SyntaxError : error {
    std::size_t offset;
    std::string expected;
    SyntaxError(std::size_t off, std::string exp)
        : error("syntax error at offset " + std::to_string(off) + ": expected " + exp),
          offset(off),
          expected(std::move(exp)) {}
};

struct DepthExceeded : error {
    using error::error;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Integer, Rational, CF, Add, Sub, Mul, Div, Neg, Inv };

    Kind kind;
    Int value;           // Integer
    Int num, den;        // Rational
    std::vector<Int> cf_prefix;
    std::vector<Int> cf_block;   // non-empty for a periodic tail
    ExprPtr lhs, rhs;    // rhs unused by unary nodes

    static ExprPtr integer(Int v) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Integer;
        e->value = std::move(v);
        return e;
    }
    static ExprPtr rational(Int n, Int d) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Rational;
        e->num = std::move(n);
        e->den = std::move(d);
        return e;
    }
    static ExprPtr cf(std::vector<Int> prefix, std::vector<Int> block) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::CF;
        e->cf_prefix = std::move(prefix);
        e->cf_block = std::move(block);
        return e;
    }
    static ExprPtr unary(Kind k, ExprPtr a) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        return e;
    }
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }

    /// The CFSeq this literal denotes.
    CFSeq to_cfseq() const {
        if (cf_block.empty()) return CFSeq(cf_prefix);
        return CFSeq::periodic(cf_prefix, cf_block);
    }
};

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t max_depth)
        : text_(text), max_depth_(max_depth) {}

    ExprPtr parse() {
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& expected) { throw SyntaxError(pos_, expected); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) fail(what);
    }

    bool peek_digit() {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    bool eat_word(std::string_view w) {
        skip_ws();
        if (text_.substr(pos_, w.size()) != w) return false;
        std::size_t end = pos_ + w.size();
        if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
        pos_ = end;
        return true;
    }

    Int parse_uint() {
        skip_ws();
        if (!peek_digit()) fail("a number");
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Int(std::string(text_.substr(start, pos_ - start)));
    }

    Int parse_sint() {
        skip_ws();
        bool negative = eat('-');
        Int v = parse_uint();
        return negative ? -v : v;
    }

    struct DepthGuard {
        ExprParser& p;
        explicit DepthGuard(ExprParser& parser) : p(parser) {
            if (++p.depth_ > p.max_depth_) throw DepthExceeded("expression nesting too deep");
        }
        ~DepthGuard() { --p.depth_; }
    };

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        ExprPtr e = parse_term();
        for (;;) {
            if (eat('+'))
                e = Expr::binary(Expr::Kind::Add, e, parse_term());
            else if (eat('-'))
                e = Expr::binary(Expr::Kind::Sub, e, parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (eat('*'))
                e = Expr::binary(Expr::Kind::Mul, e, parse_factor());
            else if (eat('/'))
                e = Expr::binary(Expr::Kind::Div, e, parse_factor());
            else
                return e;
        }
    }

    ExprPtr parse_factor() {
        DepthGuard guard(*this);
        if (eat('-')) return Expr::unary(Expr::Kind::Neg, parse_factor());
        return parse_primary();
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("an expression");

        if (eat_word("cf")) return parse_cf_literal();
        if (eat_word("inv")) {
            expect('(', "'(' after inv");
            ExprPtr e = parse_expr();
            expect(')', "')'");
            return Expr::unary(Expr::Kind::Inv, e);
        }
        if (eat('(')) {
            ExprPtr e = parse_expr();
            expect(')', "')'");
            return e;
        }
        if (peek_digit()) {
            Int n = parse_uint();
            // adjacent INT '/' INT is a rational literal, not division
            std::size_t save = pos_;
            if (eat('/')) {
                if (peek_digit()) {
                    Int d = parse_uint();
                    if (d == 0) throw SyntaxError(save, "a nonzero denominator");
                    return Expr::rational(std::move(n), std::move(d));
                }
                pos_ = save;
            }
            return Expr::integer(std::move(n));
        }
        fail("an expression");
    }

    ExprPtr parse_cf_literal() {
        expect('[', "'[' after cf");
        std::vector<Int> prefix;
        std::vector<Int> block;
        prefix.push_back(parse_sint());
        if (eat(';')) {
            for (;;) {
                skip_ws();
                if (eat('(')) {
                    block = parse_cf_block();
                    break;
                }
                std::size_t at = pos_;
                Int t = parse_sint();
                if (t < 1) throw SyntaxError(at, "a positive term past the first");
                prefix.push_back(std::move(t));
                if (!eat(',')) break;
            }
        }
        expect(']', "']'");
        return Expr::cf(std::move(prefix), std::move(block));
    }

    std::vector<Int> parse_cf_block() {
        std::vector<Int> block;
        for (;;) {
            std::size_t at = pos_;
            Int t = parse_sint();
            if (t < 1) throw SyntaxError(at, "a positive term in the periodic block");
            block.push_back(std::move(t));
            if (!eat(',')) break;
        }
        expect(')', "')'");
        expect('*', "'*' after the periodic block");
        return block;
    }

    std::string_view text_;
    std::size_t max_depth_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expr(std::string_view text, std::size_t max_depth = 64) {
    if (text.size() > 64 * 1024) throw error("parse: input exceeds 64 KiB");
    return detail::ExprParser(text, max_depth).parse();
}

inline std::string print_expr(const Expr& e);

namespace detail {

inline int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
            return 2;
        case Expr::Kind::Neg:
            return 3;
        default:
            return 4;
    }
}

inline void print_into(const Expr& e, std::string& out, int parent_prec, bool right_operand) {
    int prec = precedence(e.kind);
    bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
    switch (e.kind) {
        case Expr::Kind::Integer:
            out += e.value.str();
            return;
        case Expr::Kind::Rational:
            out += e.num.str() + "/" + e.den.str();
            return;
        case Expr::Kind::CF: {
            out += "cf[" + e.cf_prefix[0].str();
            if (e.cf_prefix.size() > 1 || !e.cf_block.empty()) out += ";";
            for (std::size_t i = 1; i < e.cf_prefix.size(); ++i) {
                if (i > 1) out += ",";
                out += e.cf_prefix[i].str();
            }
            if (!e.cf_block.empty()) {
                if (e.cf_prefix.size() > 1) out += ",";
                out += "(";
                for (std::size_t i = 0; i < e.cf_block.size(); ++i) {
                    if (i) out += ",";
                    out += e.cf_block[i].str();
                }
                out += ")*";
            }
            out += "]";
            return;
        }
        case Expr::Kind::Inv:
            out += "inv(";
            print_into(*e.lhs, out, 0, false);
            out += ")";
            return;
        case Expr::Kind::Neg:
            if (parens) out += "(";
            out += "-";
            print_into(*e.lhs, out, prec, false);
            if (parens) out += ")";
            return;
        default: {
            if (parens) out += "(";
            const char* op = e.kind == Expr::Kind::Add   ? " + "
                             : e.kind == Expr::Kind::Sub ? " - "
                             : e.kind == Expr::Kind::Mul ? " * "
                                                         : " / ";
            print_into(*e.lhs, out, prec, false);
            out += op;
            // "... / 2" would re-lex 2 into a rational literal with whatever
            // integer literal precedes the slash
            bool shield = e.kind == Expr::Kind::Div && e.rhs->kind == Expr::Kind::Integer;
            if (shield) out += "(";
            print_into(*e.rhs, out, prec, true);
            if (shield) out += ")";
            if (parens) out += ")";
            return;
        }
    }
}

}  // namespace detail

/// Canonical text for an Expr; reparsing yields a structurally identical tree.
inline std::string print_expr(const Expr& e) {
    std::string out;
    detail::print_into(e, out, 0, false);
    return out;
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Integer:
            return a.value == b.value;
        case Expr::Kind::Rational:
            return a.num == b.num && a.den == b.den;
        case Expr::Kind::CF:
            return a.cf_prefix == b.cf_prefix && a.cf_block == b.cf_block;
        case Expr::Kind::Neg:
        case Expr::Kind::Inv:
            return structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

}  // namespace eudoxus
