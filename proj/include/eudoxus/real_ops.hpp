// Field operations, fuel-bounded sign and comparison, constructive
// multiplicative inverse, and certified decimal output.
#pragma once

#include "eudoxus/endo.hpp"

#include <string>
#include <utility>

namespace eudoxus {

/// Search budget for semi-decidable questions: sign probes n = 2^0 .. 2^max_doublings.
struct Fuel {
    unsigned max_doublings = 64;
};

/// Tried to invert a node whose sign could not be certified within fuel.
struct InconclusiveSign : error {
    Rat magnitude_bound;
    explicit InconclusiveSign(Rat bound)
        : error("cannot invert: sign inconclusive, certified |lambda| <= " +
                numerator(bound).str() + "/" + denominator(bound).str()),
          magnitude_bound(std::move(bound)) {}
};

/// Outcome of a fuel-bounded sign search. Positive/Negative verdicts are
/// eternal certificates (f(witness) escaped the defect bound); Inconclusive
/// only says |lambda| <= magnitude_bound at this fuel, never "zero".
struct SignResult {
    enum class Verdict { Positive, Negative, Inconclusive };

    Verdict verdict;
    Int witness;          // Positive/Negative: the probe with |f(n)| > c
    Rat slope_bound;      // Positive: lambda >= slope_bound > 0; Negative: lambda <= slope_bound < 0
    Rat magnitude_bound;  // Inconclusive: |lambda| <= magnitude_bound

    bool positive() const { return verdict == Verdict::Positive; }
    bool negative() const { return verdict == Verdict::Negative; }
    bool inconclusive() const { return verdict == Verdict::Inconclusive; }
};

inline EndoPtr add(EndoPtr f, EndoPtr g) { return EndoNode::sum(std::move(f), std::move(g)); }
inline EndoPtr neg(EndoPtr f) { return EndoNode::negate(std::move(f)); }
inline EndoPtr mul(EndoPtr f, EndoPtr g) { return EndoNode::compose(std::move(f), std::move(g)); }

/// Probes f at n = 1, 2, 4, ... until f(n) escapes the defect bound.
/// f(n) > c certifies lambda >= (f(n) - c)/n > 0; symmetrically for negative.
inline SignResult sign(const EndoPtr& f, Fuel fuel) {
    if (fuel.max_doublings < 1) throw error("sign: fuel must allow at least one doubling");
    const Int& c = f->defect().c;
    Int n = 1;
    Int v;
    for (unsigned j = 0; j <= fuel.max_doublings; ++j, n <<= 1) {
        v = f->eval(n);
        if (v > c) return SignResult{SignResult::Verdict::Positive, n, Rat(v - c, n), Rat()};
        if (v < -c) return SignResult{SignResult::Verdict::Negative, n, Rat(v + c, n), Rat()};
    }
    n >>= 1;  // last probed
    return SignResult{SignResult::Verdict::Inconclusive, 0, Rat(), Rat(abs(v) + c, n)};
}

/// Sign of f - g.
inline SignResult compare(const EndoPtr& f, const EndoPtr& g, Fuel fuel) {
    return sign(add(f, neg(g)), fuel);
}

/// Multiplicative inverse. Requires a sign certificate: the zero class has
/// none, and boundedness is not decidable while a sign search is.
inline EndoPtr invert(const EndoPtr& f, Fuel fuel) {
    SignResult s = sign(f, fuel);
    if (s.positive()) return EndoNode::inverse(f, s.slope_bound);
    if (s.negative()) {
        // f(-x) = -f(x) under odd normalization, so the flipped operand is
        // Neg(f) with slope floor -ceiling; flip back around the inverse.
        return neg(EndoNode::inverse(neg(f), -s.slope_bound));
    }
    throw InconclusiveSign(s.magnitude_bound);
}

/// Certified decimal expansion, truncated (not rounded): at n = c*10^(digits+1)
/// the midpoint f(n)/n is within 10^-(digits+1) of lambda, so the printed
/// string is the true expansion off by at most one unit in the last place.
/// Format: optional "-", integer digits, ".", fraction digits, " ±1e-", count.
inline std::string to_decimal(const EndoPtr& f, unsigned digits, unsigned max_digits = 1000) {
    if (digits > max_digits) throw error("to_decimal: digit count exceeds configured maximum");
    const Int& c = f->defect().c;
    Int n = c * pow10(digits + 1);
    Int v = f->eval(n);
    Int scaled = abs(v) * pow10(digits) / n;  // trunc toward zero
    Int ipart = scaled / pow10(digits);
    Int frac = scaled % pow10(digits);

    std::string out;
    if (v < 0 && scaled > 0) out += '-';
    out += ipart.str();
    if (digits > 0) {
        std::string fs = frac.str();
        out += '.';
        out.append(digits - fs.size(), '0');
        out += fs;
    }
    out += " ±1e-";
    out += std::to_string(digits);
    return out;
}

}  // namespace eudoxus
