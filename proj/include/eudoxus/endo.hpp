// Near-endomorphism expression DAG: immutable nodes, odd-normalized memoized
// evaluation, and a sound strict additivity-defect bound per constructor.
#pragma once

#include "eudoxus/cf.hpp"
#include "eudoxus/integer.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace eudoxus {

class EndoNode;
using EndoPtr = std::shared_ptr<const EndoNode>;

/// Strict additivity bound: |f(a+b) - f(a) - f(b)| < c for all integers a, b.
struct DefectBound {
    Int c;
};

/// A certified interval for the slope lambda(f): it lies in
/// [value - radius, value + radius].
struct CertifiedApprox {
    Rat value;
    Rat radius;

    Rat lower() const { return value - radius; }
    Rat upper() const { return value + radius; }
    bool contains(const Rat& x) const { return lower() <= x && x <= upper(); }
    bool intersects(const CertifiedApprox& o) const {
        return lower() <= o.upper() && o.lower() <= upper();
    }
};

/// Result of an exhaustive defect scan. `violated` flags a defect that met or
/// exceeded the claimed bound; (witness_a, witness_b) is the maximizing pair.
struct CertifyReport {
    Int max_defect;
    Int witness_a;
    Int witness_b;
    bool violated;
};

class EndoNode : public std::enable_shared_from_this<EndoNode> {
public:
    enum class Kind { IntSlope, RatSlope, CFPiecewise, Sum, Neg, Compose, Inverse };

    // -- factories ----------------------------------------------------------

    static EndoPtr int_slope(Int k) {
        auto n = make(Kind::IntSlope);
        n->int_k_ = std::move(k);
        n->defect_.c = 1;
        return n;
    }

    /// floor(p*x/q) for x > 0, odd-extended. q >= 1 after gcd reduction.
    static EndoPtr rat_slope(Int p, Int q) {
        if (q <= 0) throw error("rat_slope: denominator must be positive");
        Int g = gcd(abs(p), q);
        if (g > 1) {
            p /= g;
            q /= g;
        }
        auto n = make(Kind::RatSlope);
        n->rat_p_ = std::move(p);
        n->rat_q_ = std::move(q);
        n->defect_.c = 2;
        return n;
    }

    /// Piecewise convergent-slope function: floor(P_n x / Q_n) on
    /// Q_n <= x < Q_{n+1}, odd-extended; a finite sequence keeps using its
    /// last convergent for all larger x.
    static EndoPtr cf_piecewise(CFSeq cf) {
        auto n = make(Kind::CFPiecewise);
        n->cf_ = std::move(cf);
        n->defect_.c = 4;
        return n;
    }

    static EndoPtr sum(EndoPtr a, EndoPtr b) {
        require(a && b, "sum: null child");
        auto n = make(Kind::Sum);
        n->defect_.c = a->defect_.c + b->defect_.c;
        n->left_ = std::move(a);
        n->right_ = std::move(b);
        return n;
    }

    static EndoPtr negate(EndoPtr f) {
        require(static_cast<bool>(f), "negate: null child");
        auto n = make(Kind::Neg);
        n->defect_.c = f->defect_.c;
        n->left_ = std::move(f);
        return n;
    }

    /// outer(inner(x)); the product of the two slopes.
    static EndoPtr compose(EndoPtr outer, EndoPtr inner) {
        require(outer && inner, "compose: null child");
        auto n = make(Kind::Compose);
        Int f1 = abs(outer->eval(1));
        n->defect_.c = 2 * outer->defect_.c + inner->defect_.c * (f1 + outer->defect_.c) + 1;
        n->left_ = std::move(outer);
        n->right_ = std::move(inner);
        return n;
    }

    /// Preimage-crossing inverse of a node certified positive with the given
    /// rational slope lower bound. Callers hold the positivity certificate;
    /// use real_ops invert() rather than this factory directly.
    static EndoPtr inverse(EndoPtr f, Rat slope_floor) {
        require(static_cast<bool>(f), "inverse: null child");
        if (slope_floor <= 0) throw error("inverse: slope floor must be positive");
        auto n = make(Kind::Inverse);
        Int f1 = abs(f->eval(1));
        n->defect_.c = ceil_rat(Rat(5 * f->defect_.c + 2 * f1) / slope_floor) + 2;
        n->slope_floor_ = std::move(slope_floor);
        n->left_ = std::move(f);
        return n;
    }

    // -- evaluation ---------------------------------------------------------

    /// Odd-normalized evaluation: f(0) = 0 and f(-x) = -f(x) by construction.
    Int eval(const Int& x) const {
        if (x == 0) return 0;
        if (x < 0) return -eval_pos(-x);
        return eval_pos(x);
    }

    Int operator()(const Int& x) const { return eval(x); }

    const DefectBound& defect() const { return defect_; }

    /// Interval certificate from |f(n) - n*lambda| <= c: value f(n)/n,
    /// radius c/n. Monotone: the radius is exactly c/n.
    CertifiedApprox approx(const Int& n) const {
        if (n < 1) throw error("approx: n must be >= 1");
        return CertifiedApprox{Rat(eval(n), n), Rat(defect_.c, n)};
    }

    /// Exhaustive defect scan over |a|, |b| <= range_bound against the claimed
    /// bound. The dense value table makes the O(range^2) pair loop cheap.
    CertifyReport certify_defect(long range_bound) const;

    // -- structure ----------------------------------------------------------

    Kind kind() const { return kind_; }
    const EndoPtr& child_left() const { return left_; }
    const EndoPtr& child_right() const { return right_; }
    const CFSeq* cf_terms() const { return kind_ == Kind::CFPiecewise ? &*cf_ : nullptr; }
    const Rat& inverse_slope_floor() const { return slope_floor_; }

    // -- memo administration ------------------------------------------------

    std::size_t memo_size() const {
        std::lock_guard<std::mutex> lk(memo_mu_);
        return memo_.size();
    }

    /// Global cap on per-node memo entries; 0 = unbounded. When full, the
    /// largest-argument entries go first (huge decimal-query arguments are
    /// one-shot; small CF-extraction arguments recur).
    static void set_memo_cap(std::size_t cap) { memo_cap_ref().store(cap); }
    static std::size_t memo_cap() { return memo_cap_ref().load(); }

    EndoNode(const EndoNode&) = delete;
    EndoNode& operator=(const EndoNode&) = delete;

private:
    EndoNode() = default;

    static std::shared_ptr<EndoNode> make(Kind k) {
        auto n = std::shared_ptr<EndoNode>(new EndoNode());
        n->kind_ = k;
        return n;
    }

    static void require(bool ok, const char* msg) {
        if (!ok) throw error(msg);
    }

    static std::atomic<std::size_t>& memo_cap_ref() {
        static std::atomic<std::size_t> cap{0};
        return cap;
    }

    // Memo holds positive arguments only; oddness supplies the rest. Writes
    // are idempotent (evaluation is deterministic), so the lock is dropped
    // during recursive computation.
    Int eval_pos(const Int& x) const {
        {
            std::lock_guard<std::mutex> lk(memo_mu_);
            auto it = memo_.find(x);
            if (it != memo_.end()) return it->second;
        }
        Int v = compute_pos(x);
        {
            std::lock_guard<std::mutex> lk(memo_mu_);
            std::size_t cap = memo_cap();
            if (cap > 0) {
                while (memo_.size() >= cap && !memo_.empty()) memo_.erase(std::prev(memo_.end()));
                if (memo_.size() < cap) memo_.emplace(x, v);
            } else {
                memo_.emplace(x, v);
            }
        }
        return v;
    }

    Int compute_pos(const Int& x) const {
        switch (kind_) {
            case Kind::IntSlope:
                return int_k_ * x;
            case Kind::RatSlope:
                return floor_div(rat_p_ * x, rat_q_);
            case Kind::CFPiecewise: {
                auto [p, q] = bracket_convergent(x);
                return floor_div(p * x, q);
            }
            case Kind::Sum:
                return left_->eval(x) + right_->eval(x);
            case Kind::Neg:
                return -left_->eval(x);
            case Kind::Compose:
                return left_->eval(right_->eval(x));
            case Kind::Inverse:
                return inverse_eval(x);
        }
        throw error("eval: unreachable");
    }

    // Largest stored convergent with q <= x (extending the cache on demand);
    // a finite CF past its last convergent keeps that convergent.
    std::pair<Int, Int> bracket_convergent(const Int& x) const {
        std::lock_guard<std::mutex> lk(conv_mu_);
        if (convs_.empty()) extend_convergents_locked();
        while (!cf_exhausted_ && convs_.back().q <= x) extend_convergents_locked();
        // q's are nondecreasing (strictly increasing from index 2): take the
        // last one <= x, falling back to the first for x >= 1.
        auto it = std::upper_bound(convs_.begin(), convs_.end(), x,
                                   [](const Int& v, const Convergent& c) { return v < c.q; });
        if (it != convs_.begin()) --it;
        return {it->p, it->q};
    }

    void extend_convergents_locked() const {
        std::size_t k = convs_.size();
        std::optional<Int> a = cf_->term(k);
        if (!a) {
            cf_exhausted_ = true;
            return;
        }
        Int p, q;
        if (k == 0) {
            p = *a;
            q = 1;
        } else {
            p = *a * convs_[k - 1].p + (k >= 2 ? convs_[k - 2].p : Int(1));
            q = *a * convs_[k - 1].q + (k >= 2 ? convs_[k - 2].q : Int(0));
        }
        convs_.push_back(Convergent{std::move(p), std::move(q), k + 1});
    }

    // Finds y with f(y) >= x > f(y-1) for x >= 1: double an upper bracket
    // starting near x/sigma, then bisect on [0, hi] keeping f(lo) < x <= f(hi).
    // Any such crossing differs from the true minimal preimage by less than
    // 2c/sigma + 1 and stays in the same equivalence class.
    Int inverse_eval(const Int& x) const {
        const EndoNode& f = *left_;
        Int hi = ceil_rat(Rat(x) / slope_floor_);
        if (hi < 1) hi = 1;
        while (f.eval(hi) < x) hi <<= 1;
        Int lo = 0;  // f(0) = 0 < x
        while (hi - lo > 1) {
            Int mid = (lo + hi) >> 1;
            if (f.eval(mid) >= x)
                hi = std::move(mid);
            else
                lo = std::move(mid);
        }
        return hi;
    }

    Kind kind_{};
    Int int_k_;
    Int rat_p_, rat_q_;
    std::optional<CFSeq> cf_;
    EndoPtr left_, right_;
    Rat slope_floor_;
    DefectBound defect_{1};

    mutable std::mutex memo_mu_;
    mutable std::map<Int, Int> memo_;
    mutable std::mutex conv_mu_;
    mutable std::vector<Convergent> convs_;
    mutable bool cf_exhausted_ = false;
};

inline CertifyReport EndoNode::certify_defect(long range_bound) const {
    if (range_bound < 1) throw error("certify_defect: range must be >= 1");
    const long r = range_bound;
    // values[i] = f(i - 2r) for the whole reachable argument range
    std::vector<Int> values(static_cast<std::size_t>(4 * r + 1));
    for (long i = -2 * r; i <= 2 * r; ++i) values[static_cast<std::size_t>(i + 2 * r)] = eval(i);

    // int64 fast path when every value fits comfortably
    bool small = true;
    const Int lim = Int(1) << 61;
    for (const Int& v : values)
        if (abs(v) >= lim) {
            small = false;
            break;
        }

    CertifyReport rep{0, 0, 0, false};
    if (small) {
        std::vector<long long> v(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            v[i] = values[i].convert_to<long long>();
        long long best = 0;
        long ba = 0, bb = 0;
        for (long a = -r; a <= r; ++a) {
            const long long fa = v[static_cast<std::size_t>(a + 2 * r)];
            for (long b = -r; b <= r; ++b) {
                long long d = v[static_cast<std::size_t>(a + b + 2 * r)] -
                              fa - v[static_cast<std::size_t>(b + 2 * r)];
                if (d < 0) d = -d;
                if (d > best) {
                    best = d;
                    ba = a;
                    bb = b;
                }
            }
        }
        rep.max_defect = best;
        rep.witness_a = ba;
        rep.witness_b = bb;
    } else {
        Int best = 0;
        long ba = 0, bb = 0;
        for (long a = -r; a <= r; ++a) {
            const Int& fa = values[static_cast<std::size_t>(a + 2 * r)];
            for (long b = -r; b <= r; ++b) {
                Int d = abs(values[static_cast<std::size_t>(a + b + 2 * r)] - fa -
                            values[static_cast<std::size_t>(b + 2 * r)]);
                if (d > best) {
                    best = std::move(d);
                    ba = a;
                    bb = b;
                }
            }
        }
        rep.max_defect = std::move(best);
        rep.witness_a = ba;
        rep.witness_b = bb;
    }
    rep.violated = rep.max_defect >= defect_.c;
    return rep;
}

}  // namespace eudoxus
