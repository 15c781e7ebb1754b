// Calculator command layer: expression-to-DAG building, command parsing,
// and deterministic execution with the exit-code contract
// 0 = success, 1 = user error, 2 = inconclusive verdict.
#pragma once

#include "eudoxus/cf_bridge.hpp"
#include "eudoxus/localization.hpp"
#include "eudoxus/parser.hpp"
#include "eudoxus/real_ops.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eudoxus {

struct Config {
    Fuel fuel{64};
    unsigned digits = 12;
    std::size_t cf_terms = 12;
    unsigned max_digits = 1000;
};

/// Lowers an Expr onto the endomorphism DAG. Division and inv() need a sign
/// certificate for the divisor; InconclusiveSign propagates to the caller.
inline EndoPtr build_endo(const Expr& e, Fuel fuel) {
    switch (e.kind) {
        case Expr::Kind::Integer:
            return EndoNode::int_slope(e.value);
        case Expr::Kind::Rational:
            return EndoNode::rat_slope(e.num, e.den);
        case Expr::Kind::CF:
            return cf_to_endo(e.to_cfseq());
        case Expr::Kind::Add:
            return add(build_endo(*e.lhs, fuel), build_endo(*e.rhs, fuel));
        case Expr::Kind::Sub:
            return add(build_endo(*e.lhs, fuel), neg(build_endo(*e.rhs, fuel)));
        case Expr::Kind::Mul:
            return mul(build_endo(*e.lhs, fuel), build_endo(*e.rhs, fuel));
        case Expr::Kind::Div:
            return mul(build_endo(*e.lhs, fuel), invert(build_endo(*e.rhs, fuel), fuel));
        case Expr::Kind::Neg:
            return neg(build_endo(*e.lhs, fuel));
        case Expr::Kind::Inv:
            return invert(build_endo(*e.lhs, fuel), fuel);
    }
    throw error("build_endo: unreachable");
}

struct Command {
    enum class Kind { Eval, Cf, Sign, Compare, Defect, Saturate, Crt, Padic };

    Kind kind;
    std::string arg1;  // expression / generator list / fraction / action spec
    std::string arg2;  // second expression / prime partition / prime
    std::string arg3;  // padic precision
    std::optional<unsigned> digits;      // eval override
    std::optional<std::size_t> terms;    // cf override
};

struct Outcome {
    std::string out;  // stdout payload (no trailing newline)
    int code;         // 0 success, 1 user error, 2 inconclusive
};

namespace detail {

inline std::string format_rat(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string format_sign(const SignResult& s) {
    switch (s.verdict) {
        case SignResult::Verdict::Positive:
            return "positive λ ≥ " + format_rat(s.slope_bound) +
                   " (witness n=" + s.witness.str() + ")";
        case SignResult::Verdict::Negative:
            return "negative λ ≤ " + format_rat(s.slope_bound) +
                   " (witness n=" + s.witness.str() + ")";
        default:
            return "inconclusive |λ| ≤ " + format_rat(s.magnitude_bound);
    }
}

inline std::vector<Int> parse_int_list(std::string_view text, char sep) {
    std::vector<Int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) end = text.size();
        std::string item(text.substr(start, end - start));
        // trim
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
            item.erase(item.begin());
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
            item.pop_back();
        if (item.empty()) throw error("expected an integer list");
        for (std::size_t i = 0; i < item.size(); ++i)
            if (!(std::isdigit(static_cast<unsigned char>(item[i])) || (i == 0 && item[i] == '-')))
                throw error("bad integer '" + item + "'");
        out.push_back(Int(item));
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

/// "a/b" or "a".
inline std::pair<Int, Int> parse_fraction(std::string_view text) {
    std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        std::vector<Int> v = parse_int_list(text, ',');
        if (v.size() != 1) throw error("expected a fraction");
        return {v[0], 1};
    }
    Int num = parse_int_list(text.substr(0, slash), ',').at(0);
    Int den = parse_int_list(text.substr(slash + 1), ',').at(0);
    if (den == 0) throw error("zero denominator");
    return {num, den};
}

}  // namespace detail

inline Outcome execute(const Command& cmd, const Config& cfg) {
    switch (cmd.kind) {
        case Command::Kind::Eval: {
            unsigned digits = cmd.digits.value_or(cfg.digits);
            if (digits > cfg.max_digits)
                throw error("digits exceed the configured maximum of " +
                            std::to_string(cfg.max_digits));
            ExprPtr e = parse_expr(cmd.arg1);
            try {
                return Outcome{to_decimal(build_endo(*e, cfg.fuel), digits, cfg.max_digits), 0};
            } catch (const InconclusiveSign& is) {
                return Outcome{"inconclusive |λ| ≤ " +
                                   detail::format_rat(is.magnitude_bound) + " (cannot invert)",
                               2};
            }
        }
        case Command::Kind::Sign: {
            ExprPtr e = parse_expr(cmd.arg1);
            try {
                SignResult s = sign(build_endo(*e, cfg.fuel), cfg.fuel);
                return Outcome{detail::format_sign(s), s.inconclusive() ? 2 : 0};
            } catch (const InconclusiveSign& is) {
                return Outcome{"inconclusive |λ| ≤ " +
                                   detail::format_rat(is.magnitude_bound) + " (cannot invert)",
                               2};
            }
        }
        case Command::Kind::Compare: {
            ExprPtr a = parse_expr(cmd.arg1);
            ExprPtr b = parse_expr(cmd.arg2);
            try {
                SignResult s =
                    compare(build_endo(*a, cfg.fuel), build_endo(*b, cfg.fuel), cfg.fuel);
                return Outcome{detail::format_sign(s), s.inconclusive() ? 2 : 0};
            } catch (const InconclusiveSign& is) {
                return Outcome{"inconclusive |λ| ≤ " +
                                   detail::format_rat(is.magnitude_bound) + " (cannot invert)",
                               2};
            }
        }
        case Command::Kind::Cf: {
            std::size_t terms = cmd.terms.value_or(cfg.cf_terms);
            ExprPtr e = parse_expr(cmd.arg1);
            try {
                CFExtraction ext = endo_to_cf(build_endo(*e, cfg.fuel), terms, cfg.fuel);
                std::string out = "cf[";
                for (std::size_t i = 0; i < ext.terms.size(); ++i) {
                    if (i == 1) out += ";";
                    if (i > 1) out += ",";
                    out += ext.terms[i].str();
                }
                out += "]";
                switch (ext.flag) {
                    case CFExtraction::Flag::Terminated:
                        return Outcome{out + " (exact)", 0};
                    case CFExtraction::Flag::Prefix:
                        return Outcome{out + " (partial)", 0};
                    default:
                        return Outcome{out + " (inconclusive)", 2};
                }
            } catch (const InconclusiveSign& is) {
                return Outcome{"inconclusive |λ| ≤ " +
                                   detail::format_rat(is.magnitude_bound) + " (cannot invert)",
                               2};
            }
        }
        case Command::Kind::Defect: {
            ExprPtr e = parse_expr(cmd.arg1);
            return Outcome{build_endo(*e, cfg.fuel)->defect().c.str(), 0};
        }
        case Command::Kind::Saturate: {
            MultSet s(detail::parse_int_list(cmd.arg1, ','));
            return Outcome{saturate(s).str(), 0};
        }
        case Command::Kind::Crt: {
            auto [num, den] = detail::parse_fraction(cmd.arg1);
            std::size_t bar = cmd.arg2.find('|');
            if (bar == std::string::npos) throw error("expected left|right prime sets");
            PrimeSet left(detail::parse_int_list(std::string_view(cmd.arg2).substr(0, bar), ','));
            PrimeSet right(
                detail::parse_int_list(std::string_view(cmd.arg2).substr(bar + 1), ','));
            PruferFrac x(num, den, left.unite(right));
            auto [a, b] = crt_split(x, left, right);
            return Outcome{"(" + a.str() + ", " + b.str() + ")", 0};
        }
        case Command::Kind::Padic: {
            auto [num, den] = detail::parse_fraction(cmd.arg1);
            Int p = detail::parse_int_list(cmd.arg2, ',').at(0);
            Int k = detail::parse_int_list(cmd.arg3, ',').at(0);
            if (!is_prime(p)) throw error("p must be prime");
            if (k < 1 || k > 4096) throw error("precision out of range");
            PruferAction act = mul_by_rational(num, den, PrimeSet(std::vector<Int>{p}));
            PadicTrunc t = padic_extract(act, p, k.convert_to<std::size_t>());
            return Outcome{t.str(), 0};
        }
    }
    throw error("execute: unreachable");
}

/// REPL / one-line command form: "<verb> <args>". Compare separates its two
/// expressions with a comma; crt and padic take space-separated arguments.
inline Command parse_command(std::string_view line) {
    auto skip = [&](std::size_t i) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        return i;
    };
    std::size_t start = skip(0);
    std::size_t end = start;
    while (end < line.size() && std::isalpha(static_cast<unsigned char>(line[end]))) ++end;
    std::string verb(line.substr(start, end - start));
    std::string rest(line.substr(skip(end)));
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.pop_back();

    auto split_ws = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            if (j > i) parts.push_back(s.substr(i, j - i));
            i = j;
        }
        return parts;
    };

    Command cmd{};
    if (verb == "eval") {
        cmd.kind = Command::Kind::Eval;
        cmd.arg1 = rest;
    } else if (verb == "sign") {
        cmd.kind = Command::Kind::Sign;
        cmd.arg1 = rest;
    } else if (verb == "cf") {
        cmd.kind = Command::Kind::Cf;
        cmd.arg1 = rest;
    } else if (verb == "defect") {
        cmd.kind = Command::Kind::Defect;
        cmd.arg1 = rest;
    } else if (verb == "compare") {
        cmd.kind = Command::Kind::Compare;
        // first comma outside brackets; cf literals carry their own commas
        std::size_t comma = std::string::npos;
        int depth = 0;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            char ch = rest[i];
            if (ch == '[' || ch == '(') ++depth;
            if (ch == ']' || ch == ')') --depth;
            if (ch == ',' && depth == 0) {
                comma = i;
                break;
            }
        }
        if (comma == std::string::npos) throw error("compare: expected '<expr>, <expr>'");
        cmd.arg1 = rest.substr(0, comma);
        cmd.arg2 = rest.substr(comma + 1);
    } else if (verb == "saturate") {
        cmd.kind = Command::Kind::Saturate;
        cmd.arg1 = rest;
    } else if (verb == "crt") {
        cmd.kind = Command::Kind::Crt;
        auto parts = split_ws(rest);
        if (parts.size() != 2) throw error("crt: expected '<frac> <left|right>'");
        cmd.arg1 = parts[0];
        cmd.arg2 = parts[1];
    } else if (verb == "padic") {
        cmd.kind = Command::Kind::Padic;
        auto parts = split_ws(rest);
        if (parts.size() != 3) throw error("padic: expected '<a/b> <p> <k>'");
        cmd.arg1 = parts[0];
        cmd.arg2 = parts[1];
        cmd.arg3 = parts[2];
    } else {
        throw error("unknown command '" + verb + "'");
    }
    return cmd;
}

}  // namespace eudoxus
