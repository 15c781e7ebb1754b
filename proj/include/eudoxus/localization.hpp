// Multiplicative sets, saturation, S^-1 Z/Z elements, CRT splitting, and
// truncated p-adic numbers acting as quasi-endomorphisms of Z[1/p]/Z.
#pragma once

#include "eudoxus/integer.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace eudoxus {

struct SupportViolation : error {
    using error::error;
};
struct PrecisionExhausted : error {
    using error::error;
};
struct PrimeMismatch : error {
    using error::error;
};
struct IncoherentAction : error {
    using error::error;
};

/// Sorted set of distinct certified primes.
class PrimeSet {
public:
    PrimeSet() = default;

    explicit PrimeSet(std::vector<Int> primes) : primes_(std::move(primes)) {
        std::sort(primes_.begin(), primes_.end());
        primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
        for (const Int& p : primes_)
            if (!is_prime(p)) throw error("PrimeSet: " + p.str() + " is not prime");
    }

    bool contains(const Int& p) const {
        return std::binary_search(primes_.begin(), primes_.end(), p);
    }
    bool disjoint(const PrimeSet& o) const {
        for (const Int& p : primes_)
            if (o.contains(p)) return false;
        return true;
    }
    PrimeSet unite(const PrimeSet& o) const {
        std::vector<Int> v = primes_;
        v.insert(v.end(), o.primes_.begin(), o.primes_.end());
        return PrimeSet(std::move(v));
    }
    PrimeSet minus(const Int& p) const {
        std::vector<Int> v;
        for (const Int& q : primes_)
            if (q != p) v.push_back(q);
        return PrimeSet(std::move(v));
    }

    const std::vector<Int>& primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    bool operator==(const PrimeSet& o) const { return primes_ == o.primes_; }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            if (i) out += ", ";
            out += primes_[i].str();
        }
        return out + "}";
    }

private:
    std::vector<Int> primes_;
};

/// Finite generator list of a multiplicatively closed subset of Z.
/// Infinitely generated prime sets are out of reach by construction.
class MultSet {
public:
    explicit MultSet(std::vector<Int> generators) : generators_(std::move(generators)) {
        if (generators_.empty()) throw error("MultSet: empty generator list");
        for (const Int& g : generators_)
            if (g == 0) throw error("MultSet: 0 is not allowed");
    }
    const std::vector<Int>& generators() const { return generators_; }

private:
    std::vector<Int> generators_;
};

/// All primes dividing any generator. Signs drop out (T = S intersect N);
/// units contribute nothing, so saturate({1}) is empty.
inline PrimeSet saturate(const MultSet& s) {
    std::vector<Int> primes;
    for (const Int& g : s.generators()) {
        Int n = abs(g);
        for (Int d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                primes.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) primes.push_back(n);
    }
    return PrimeSet(std::move(primes));
}

/// Element of S^-1 Z / Z: a reduced fraction mod 1 whose denominator's prime
/// support lies in the declared set. Equality compares the value only.
class PruferFrac {
public:
    PruferFrac(Int num, Int den, PrimeSet support) : support_(std::move(support)) {
        if (den < 1) throw error("PruferFrac: denominator must be positive");
        num %= den;
        if (num < 0) num += den;
        Int g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        Int rest = den;
        for (const Int& p : support_.primes())
            while (rest % p == 0) rest /= p;
        if (rest != 1)
            throw SupportViolation("PruferFrac: denominator " + den.str() +
                                   " has a prime outside support " + support_.str());
        num_ = std::move(num);
        den_ = std::move(den);
    }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    const PrimeSet& support() const { return support_; }
    bool zero() const { return num_ == 0; }

    PruferFrac operator+(const PruferFrac& o) const {
        return PruferFrac(num_ * o.den_ + o.num_ * den_, den_ * o.den_,
                          support_.unite(o.support_));
    }
    bool operator==(const PruferFrac& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const PruferFrac& o) const { return !(*this == o); }

    std::string str() const { return num_.str() + "/" + den_.str() + " mod 1"; }

private:
    Int num_, den_;
    PrimeSet support_;
};

/// Inverse CRT map x/(nm) -> (x mod n)/n, (x mod m)/m over a disjoint
/// partition of the denominator's support.
inline std::pair<PruferFrac, PruferFrac> crt_split(const PruferFrac& x, const PrimeSet& left,
                                                   const PrimeSet& right) {
    if (!left.disjoint(right)) throw SupportViolation("crt_split: prime sets overlap");
    Int n = 1, rest = x.den();
    for (const Int& p : left.primes())
        while (rest % p == 0) {
            n *= p;
            rest /= p;
        }
    Int m = 1;
    for (const Int& p : right.primes())
        while (rest % p == 0) {
            m *= p;
            rest /= p;
        }
    if (rest != 1)
        throw SupportViolation("crt_split: denominator prime outside both sets");
    return {PruferFrac(x.num() % n, n, left), PruferFrac(x.num() % m, m, right)};
}

/// Forward CRT map (a/n, b/m) -> x/(nm) with x = a mod n, x = b mod m.
inline PruferFrac crt_join(const PruferFrac& a, const PruferFrac& b) {
    if (!a.support().disjoint(b.support()))
        throw SupportViolation("crt_join: supports overlap");
    const Int& n = a.den();
    const Int& m = b.den();
    Int x = a.num() * m * mod_inverse(m % n, n) + b.num() * n * mod_inverse(n % m, m);
    return PruferFrac(x, n * m, a.support().unite(b.support()));
}

/// Truncated p-adic number: p^valuation times a unit read from `digits`
/// (base p, least significant first, digits[0] != 0 unless the value is 0).
class PadicTrunc {
public:
    PadicTrunc(Int p, long valuation, std::vector<Int> digits)
        : p_(std::move(p)), valuation_(valuation), digits_(std::move(digits)) {
        if (!is_prime(p_)) throw error("PadicTrunc: p must be prime");
        if (digits_.empty()) throw error("PadicTrunc: need at least one digit");
        bool all_zero = true;
        for (const Int& d : digits_) {
            if (d < 0 || d >= p_) throw error("PadicTrunc: digit out of range");
            if (d != 0) all_zero = false;
        }
        if (all_zero)
            valuation_ = 0;  // zero has no meaningful valuation
        else if (digits_[0] == 0)
            throw error("PadicTrunc: unit digit must be nonzero");
    }

    const Int& p() const { return p_; }
    long valuation() const { return valuation_; }
    const std::vector<Int>& digits() const { return digits_; }
    std::size_t precision() const { return digits_.size(); }
    bool zero() const { return digits_[0] == 0; }

    /// Unit part mod p^j. Throws when j digits are not available.
    Int unit_mod(std::size_t j) const {
        if (j > digits_.size())
            throw PrecisionExhausted("PadicTrunc: " + std::to_string(j) +
                                     " digits requested, " + std::to_string(digits_.size()) +
                                     " stored");
        Int u = 0, pk = 1;
        for (std::size_t i = 0; i < j; ++i) {
            u += digits_[i] * pk;
            pk *= p_;
        }
        return u;
    }

    std::string str() const {
        std::ostringstream os;
        os << "p-adic(p=" << p_ << ", val=" << valuation_ << ", digits=[";
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            if (i) os << ",";
            os << digits_[i];
        }
        os << "])";
        return os.str();
    }

    /// Image of the rational a/b in Q_p, truncated to `precision` digits.
    static PadicTrunc from_rational(const Int& p, Int a, Int b, std::size_t precision) {
        if (b == 0) throw error("PadicTrunc: zero denominator");
        if (precision < 1) throw error("PadicTrunc: precision must be >= 1");
        if (a == 0) return PadicTrunc(p, 0, std::vector<Int>(precision, 0));
        long v = 0;
        while (a % p == 0) {
            a /= p;
            ++v;
        }
        while (b % p == 0) {
            b /= p;
            --v;
        }
        Int mod = pow_int(p, static_cast<unsigned long>(precision));
        Int u = a % mod;
        if (u < 0) u += mod;
        u = u * mod_inverse(((b % mod) + mod) % mod, mod) % mod;
        std::vector<Int> ds(precision);
        for (std::size_t i = 0; i < precision; ++i) {
            ds[i] = u % p;
            u /= p;
        }
        return PadicTrunc(p, v, std::move(ds));
    }

private:
    Int p_;
    long valuation_;
    std::vector<Int> digits_;
};

/// The action of a truncated p-adic number on Z[1/p]/Z: with den(a) = p^k and
/// x = p^v * u, the image is (num(a) * u mod p^(k-v)) / p^(k-v).
inline PruferFrac padic_act(const PadicTrunc& x, const PruferFrac& a) {
    Int k = 0, rest = a.den();
    while (rest % x.p() == 0) {
        rest /= x.p();
        ++k;
    }
    if (rest != 1)
        throw PrimeMismatch("padic_act: denominator " + a.den().str() + " is not a power of " +
                            x.p().str());
    PrimeSet support(std::vector<Int>{x.p()});
    if (x.zero()) return PruferFrac(0, 1, support);
    Int need = k - x.valuation();
    if (need <= 0) return PruferFrac(0, 1, support);  // image is a p-adic integer, hence 0 mod 1
    if (need > Int(x.precision()))
        throw PrecisionExhausted("padic_act: needs " + need.str() + " digits, " +
                                 std::to_string(x.precision()) + " stored");
    unsigned long nd = need.convert_to<unsigned long>();
    Int mod = pow_int(x.p(), nd);
    Int num = a.num() * x.unit_mod(nd) % mod;
    return PruferFrac(std::move(num), std::move(mod), std::move(support));
}

using PruferAction = std::function<PruferFrac(const PruferFrac&)>;

/// Reads a p-adic number back out of a quasi-endomorphism of Z[1/p]/Z given
/// in multiplication normal form: probes act(1/p^j) for j = 1..k, checks the
/// levels cohere, and assembles valuation and digits. Probes that do not
/// describe one consistent multiplication raise IncoherentAction.
inline PadicTrunc padic_extract(const PruferAction& act, const Int& p, std::size_t k) {
    if (k < 1) throw error("padic_extract: precision must be >= 1");
    if (!is_prime(p)) throw error("padic_extract: p must be prime");
    PrimeSet support(std::vector<Int>{p});

    struct Probe {
        std::size_t j;
        Int num;
        long exp;  // denominator p-exponent
    };
    std::vector<Probe> probes;
    bool any_nonzero = false;
    long valuation = 0;
    for (std::size_t j = 1; j <= k; ++j) {
        PruferFrac r = act(PruferFrac(1, pow_int(p, j), support));
        Int e = 0, rest = r.den();
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (rest != 1)
            throw IncoherentAction("padic_extract: image denominator not a power of " + p.str());
        long ej = e.convert_to<long>();
        if (!r.zero()) {
            long vj = static_cast<long>(j) - ej;
            if (!any_nonzero) {
                valuation = vj;
                any_nonzero = true;
            } else if (vj != valuation) {
                throw IncoherentAction("padic_extract: inconsistent valuation across levels");
            }
        }
        probes.push_back(Probe{j, r.num(), ej});
    }
    if (!any_nonzero)  // acts as zero to this reach
        return PadicTrunc(p, 0, std::vector<Int>(k, 0));

    // Zero probes are only legitimate while j <= valuation.
    for (const Probe& pr : probes)
        if (pr.num == 0 && static_cast<long>(pr.j) > valuation)
            throw IncoherentAction("padic_extract: zero image past the valuation");

    std::size_t navail =
        static_cast<std::size_t>(static_cast<long>(k) - valuation);  // digits the last probe carries
    std::size_t prec = std::min(navail, k);
    const Probe& last = probes.back();
    Int u = last.num;  // unit mod p^navail

    // Each level must reduce to the previous one.
    for (const Probe& pr : probes) {
        long ej = static_cast<long>(pr.j) - valuation;
        if (ej <= 0) continue;
        Int mod = pow_int(p, static_cast<unsigned long>(ej));
        if (pr.num % mod != u % mod)
            throw IncoherentAction("padic_extract: digit levels disagree");
    }

    std::vector<Int> ds(prec);
    Int rest = u;
    for (std::size_t i = 0; i < prec; ++i) {
        ds[i] = rest % p;
        rest /= p;
    }
    return PadicTrunc(p, valuation, std::move(ds));
}

/// One truncated p-adic component per prime of the set.
struct QEndProduct {
    std::vector<std::pair<Int, PadicTrunc>> components;

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < components.size(); ++i) {
            if (i) out += ", ";
            out += components[i].second.str();
        }
        return out + ")";
    }
};

/// Product decomposition of a quasi-endomorphism of S^-1 Z/Z: restrict the
/// action to each prime through the CRT projection and extract.
inline QEndProduct qend_decompose(const PruferAction& act, const PrimeSet& primes,
                                  std::size_t k) {
    QEndProduct out;
    for (const Int& p : primes.primes()) {
        PrimeSet others = primes.minus(p);
        PruferAction restricted = [&act, p, others](const PruferFrac& a) {
            PruferFrac image = act(a);
            return crt_split(image, PrimeSet(std::vector<Int>{p}), others).first;
        };
        out.components.emplace_back(p, padic_extract(restricted, p, k));
    }
    return out;
}

/// The group endomorphism "multiply by a/b" of S^-1 Z/Z. Support primes in b
/// enlarge the denominator; the coprime part of b acts through its modular
/// inverse (it is a unit on every torsion component).
inline PruferAction mul_by_rational(Int a, Int b, PrimeSet support) {
    if (b == 0) throw error("mul_by_rational: zero denominator");
    if (b < 0) {
        a = -a;
        b = -b;
    }
    return [a = std::move(a), b = std::move(b), support = std::move(support)](const PruferFrac& x) {
        Int b_supported = 1, b_rest = b;
        for (const Int& p : support.primes())
            while (b_rest % p == 0) {
                b_supported *= p;
                b_rest /= p;
            }
        Int den = x.den() * b_supported;
        if (den == 1) return PruferFrac(0, 1, support);
        Int num = a % den * x.num() % den * mod_inverse(b_rest % den, den) % den;
        return PruferFrac(std::move(num), std::move(den), support);
    };
}

}  // namespace eudoxus
