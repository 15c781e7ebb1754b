// Continued-fraction term sequences and their convergents.
#pragma once

#include "eudoxus/integer.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace eudoxus {

/// Requested more terms than a finite sequence holds.
struct FiniteExhausted : error {
    using error::error;
};

/// A finite or lazily generated sequence of continued-fraction terms.
/// The first term may be any integer; every later term must be >= 1.
/// Lazy sequences are pure functions of the index, so they are replayable
/// and safely shareable across threads.
class CFSeq {
public:
    explicit CFSeq(std::vector<Int> terms)
        : rep_(std::make_shared<Rep>(Rep{std::move(terms), {}, nullptr, true})) {
        if (rep_->prefix.empty()) throw error("CFSeq: at least one term required");
        validate_tail(rep_->prefix);
    }

    /// Eventually periodic expansion: prefix terms, then block repeated forever.
    static CFSeq periodic(std::vector<Int> prefix, std::vector<Int> block) {
        if (block.empty()) throw error("CFSeq: empty periodic block");
        validate_tail(prefix);
        for (const Int& t : block)  // block terms recur at positions >= 1
            if (t < 1) throw error("CFSeq: term < 1 past index 0");
        CFSeq s;
        s.rep_ = std::make_shared<Rep>(Rep{std::move(prefix), std::move(block), nullptr, false});
        return s;
    }

    /// Infinite expansion from a pure index -> term function.
    static CFSeq generated(std::function<Int(std::size_t)> fn) {
        if (!fn) throw error("CFSeq: null generator");
        CFSeq s;
        s.rep_ = std::make_shared<Rep>(Rep{{}, {}, std::move(fn), false});
        return s;
    }

    /// Term at 0-based index i, or nullopt when finite and exhausted.
    std::optional<Int> term(std::size_t i) const {
        const Rep& r = *rep_;
        if (i < r.prefix.size()) return r.prefix[i];
        if (r.is_finite) return std::nullopt;
        if (!r.block.empty()) return r.block[(i - r.prefix.size()) % r.block.size()];
        Int t = r.fn(i);
        if (i >= 1 && t < 1) throw error("CFSeq: generated term < 1 past index 0");
        return t;
    }

    bool finite() const { return rep_->is_finite; }

    /// Number of terms; only meaningful for finite sequences.
    std::size_t size() const { return rep_->prefix.size(); }

private:
    CFSeq() = default;

    struct Rep {
        std::vector<Int> prefix;
        std::vector<Int> block;
        std::function<Int(std::size_t)> fn;
        bool is_finite;
    };

    static void validate_tail(const std::vector<Int>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] < 1) throw error("CFSeq: term < 1 past index 0");
    }

    std::shared_ptr<const Rep> rep_;
};

/// One convergent p/q; index is 1-based so the determinant identity reads
/// p_{n+1} q_n - p_n q_{n+1} = (-1)^{n+1}.
struct Convergent {
    Int p;
    Int q;
    std::size_t index;
};

/// First n convergents by the standard recurrence
/// p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2}.
inline std::vector<Convergent> convergents(const CFSeq& cf, std::size_t n) {
    std::vector<Convergent> out;
    out.reserve(n);
    Int p_prev2 = 0, q_prev2 = 1;  // p_{-1}, q_{-1}
    Int p_prev = 1, q_prev = 0;    // p_0, q_0
    for (std::size_t k = 1; k <= n; ++k) {
        std::optional<Int> a = cf.term(k - 1);
        if (!a) throw FiniteExhausted("convergents: sequence has fewer than requested terms");
        Int p = *a * p_prev + p_prev2;
        Int q = *a * q_prev + q_prev2;
        out.push_back(Convergent{p, q, k});
        p_prev2 = std::move(p_prev);
        q_prev2 = std::move(q_prev);
        p_prev = std::move(p);
        q_prev = std::move(q);
    }
    return out;
}

}  // namespace eudoxus
