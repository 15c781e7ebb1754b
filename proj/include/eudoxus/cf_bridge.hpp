// Bidirectional correspondence between near-endomorphisms and integer
// sequences through continued-fraction convergents: integer part, digit
// extraction, CF-to-endomorphism construction, diagonalization.
#pragma once

#include "eudoxus/real_ops.hpp"

#include <optional>
#include <vector>

namespace eudoxus {

/// CFPiecewise node over the given terms; its slope is the CF's value.
inline EndoPtr cf_to_endo(CFSeq cf) { return EndoNode::cf_piecewise(std::move(cf)); }

/// The unique integer a with 0 <= f - a*id < id, i.e. floor of the slope.
/// Shrinks the approx interval until at most one integer candidate remains,
/// then settles the remaining boundary with a sign search; an Inconclusive
/// boundary is accepted as the exact-integer (zero-remainder) case. nullopt
/// only when fuel runs out before one candidate is isolated.
inline std::optional<Int> integer_part(const EndoPtr& f, Fuel fuel) {
    Int n = 1;
    Int a_min, a_max;
    bool isolated = false;
    for (unsigned j = 0; j <= fuel.max_doublings; ++j, n <<= 1) {
        CertifiedApprox ap = f->approx(n);
        a_min = ceil_rat(ap.lower());
        a_max = floor_rat(ap.upper());
        if (a_max - a_min < 1) {
            isolated = true;
            break;
        }
    }
    if (!isolated) return std::nullopt;
    if (a_max < a_min) return floor_rat(f->approx(n).upper());  // no integer inside: floor is certain
    // One candidate a0; the interval certifies a0 - 1 < lambda < a0 + 1.
    const Int& a0 = a_min;
    SignResult s = sign(add(f, neg(EndoNode::int_slope(a0))), fuel);
    if (s.negative()) return a0 - 1;
    return a0;  // Positive, or Inconclusive at the integer boundary
}

/// CF digit extraction result. Terminated: the remainder was certified
/// within the zero-class envelope at this fuel (rational endpoint).
/// Prefix: k terms delivered, more exist. Inconclusive: a step could not
/// be certified.
struct CFExtraction {
    enum class Flag { Prefix, Terminated, Inconclusive };
    std::vector<Int> terms;
    Flag flag;
};

/// Iterates a_n = integer_part(f_n), f_{n+1} = invert(f_n - a_n*id).
/// CFPiecewise inputs short-circuit to their stored terms.
inline CFExtraction endo_to_cf(const EndoPtr& f, std::size_t k, Fuel fuel) {
    CFExtraction out{{}, CFExtraction::Flag::Prefix};
    if (const CFSeq* cf = f->cf_terms()) {
        for (std::size_t i = 0; i < k; ++i) {
            std::optional<Int> t = cf->term(i);
            if (!t) {
                out.flag = CFExtraction::Flag::Terminated;
                return out;
            }
            out.terms.push_back(std::move(*t));
        }
        if (cf->finite() && cf->size() <= k) out.flag = CFExtraction::Flag::Terminated;
        return out;
    }

    EndoPtr cur = f;
    for (std::size_t i = 0; i < k; ++i) {
        std::optional<Int> a = integer_part(cur, fuel);
        if (!a) {
            out.flag = CFExtraction::Flag::Inconclusive;
            return out;
        }
        out.terms.push_back(*a);
        EndoPtr rem = add(cur, neg(EndoNode::int_slope(*a)));
        SignResult s = sign(rem, fuel);
        if (s.positive()) {
            cur = EndoNode::inverse(rem, s.slope_bound);
            continue;
        }
        if (s.inconclusive() &&
            s.magnitude_bound * pow_int(2, fuel.max_doublings) <= Rat(2 * rem->defect().c)) {
            // |rem(2^fuel)| <= c: the zero-class certificate at this fuel.
            out.flag = CFExtraction::Flag::Terminated;
        } else {
            out.flag = CFExtraction::Flag::Inconclusive;
        }
        return out;
    }
    return out;
}

/// Anti-diagonal sequence: term i is |rows[i][i]| + 1 where defined, else 1,
/// so the output differs from every row at its defined diagonal position.
inline CFSeq diagonal(const std::vector<CFSeq>& rows, std::size_t n) {
    if (n < 1) throw error("diagonal: need a positive prefix length");
    std::vector<Int> terms;
    terms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::optional<Int> t = (i < rows.size()) ? rows[i].term(i) : std::nullopt;
        terms.push_back(t ? abs(*t) + 1 : Int(1));
    }
    return CFSeq(std::move(terms));
}

}  // namespace eudoxus
