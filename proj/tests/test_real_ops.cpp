#include "eudoxus/real_ops.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace eudoxus;

namespace {

EndoPtr sqrt2_node() { return EndoNode::cf_piecewise(CFSeq::periodic({Int(1)}, {Int(2)})); }

Rat parse_decimal(const std::string& s) {
    // "<sign><int>.<frac> ±1e-<d>"
    std::size_t space = s.find(' ');
    std::string body = s.substr(0, space);
    bool negative = !body.empty() && body[0] == '-';
    if (negative) body.erase(body.begin());
    std::size_t dot = body.find('.');
    std::string digits = body.substr(0, dot);
    unsigned frac = 0;
    if (dot != std::string::npos) {
        digits += body.substr(dot + 1);
        frac = static_cast<unsigned>(body.size() - dot - 1);
    }
    Rat r(Int(digits), pow10(frac));
    return negative ? -r : r;
}

}  // namespace

TEST_CASE("add and neg act pointwise and respect the class structure") {
    auto two = EndoNode::int_slope(2);
    auto three = EndoNode::int_slope(3);
    auto five = EndoNode::int_slope(5);
    auto s = add(two, three);
    for (long x = -100; x <= 100; ++x) CHECK(s->eval(x) == five->eval(x));

    SECTION("1/2 + 1/2 differs from the identity by a bounded function") {
        auto h = add(EndoNode::rat_slope(1, 2), EndoNode::rat_slope(1, 2));
        for (long x = -1000; x <= 1000; ++x) CHECK(abs(h->eval(x) - x) <= 2);
    }

    SECTION("approx is exactly additive") {
        auto f = EndoNode::rat_slope(7, 5);
        auto g = sqrt2_node();
        CertifiedApprox af = f->approx(1000), ag = g->approx(1000);
        CHECK(add(f, g)->approx(1000).value == af.value + ag.value);
    }

    SECTION("neg examples") {
        CHECK(neg(EndoNode::int_slope(7))->eval(3) == -21);
        auto f = sqrt2_node();
        auto nn = neg(neg(f));
        for (long x : {-50L, -3L, 1L, 17L, 400L}) CHECK(nn->eval(x) == f->eval(x));

        SignResult sr = sign(add(f, neg(f)), Fuel{20});
        REQUIRE(sr.inconclusive());
        CHECK(sr.magnitude_bound <= Rat(add(f, neg(f))->defect().c, pow_int(2, 20)));
    }
}

TEST_CASE("mul composes and commutes at the certified level") {
    auto p = mul(EndoNode::int_slope(2), EndoNode::int_slope(3));
    for (long x = -50; x <= 50; ++x) CHECK(p->eval(x) == 6 * x);

    auto f = EndoNode::rat_slope(3, 2);
    CertifiedApprox sq = mul(f, f)->approx(10000);
    CHECK(sq.contains(Rat(9, 4)));

    SECTION("commutativity residual respects the lemma bound") {
        std::mt19937_64 rng(7);
        std::vector<std::pair<EndoPtr, EndoPtr>> pairs{
            {EndoNode::rat_slope(3, 2), sqrt2_node()},
            {EndoNode::int_slope(-4), EndoNode::rat_slope(7, 5)},
            {sqrt2_node(), EndoNode::rat_slope(-22, 7)},
        };
        for (auto& [a, b] : pairs) {
            Int c = std::max(a->defect().c, b->defect().c);
            Int bound = (2 + abs(a->eval(1)) + abs(b->eval(1)) + 2 * c) * c;
            for (int i = 0; i < 1000; ++i) {
                Int n(std::uniform_int_distribution<long>(1, 1000000)(rng));
                CHECK(abs(a->eval(b->eval(n)) - b->eval(a->eval(n))) < bound);
            }
        }
    }

    SECTION("interval-level commutativity and distributivity") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 20; ++i) {
            auto r = [&rng]() {
                return EndoNode::rat_slope(std::uniform_int_distribution<long>(-40, 40)(rng),
                                           std::uniform_int_distribution<long>(1, 40)(rng));
            };
            EndoPtr f = r(), g = r(), h = r();
            Int n = pow10(4);
            CHECK(mul(f, g)->approx(n).intersects(mul(g, f)->approx(n)));
            CHECK(mul(f, add(g, h))->approx(n).intersects(
                add(mul(f, g), mul(f, h))->approx(n)));
        }
    }
}

TEST_CASE("sign search produces eternal certificates") {
    SignResult s1 = sign(EndoNode::int_slope(1), Fuel{4});
    REQUIRE(s1.positive());
    CHECK(s1.witness == 2);  // f(1) = 1 is not > c = 1; f(2) = 2 is
    CHECK(s1.slope_bound == Rat(1, 2));

    SignResult s0 = sign(EndoNode::int_slope(0), Fuel{20});
    REQUIRE(s0.inconclusive());
    CHECK(s0.magnitude_bound == Rat(1, pow_int(2, 20)));

    SECTION("sqrt2 * sqrt2 - 2 is indistinguishable from zero") {
        auto s = sqrt2_node();
        auto h = add(mul(s, s), neg(EndoNode::int_slope(2)));
        SignResult r = sign(h, Fuel{30});
        REQUIRE(r.inconclusive());
        CHECK(r.magnitude_bound < Rat(1, pow_int(2, 20)));
    }

    SECTION("verdicts re-verify against the defect bound") {
        auto f = EndoNode::rat_slope(-5, 7);
        SignResult r = sign(f, Fuel{16});
        REQUIRE(r.negative());
        CHECK(f->eval(r.witness) < -f->defect().c);
        CHECK(r.slope_bound < 0);
    }

    SECTION("no node ever gets both a Positive and a Negative verdict") {
        std::vector<EndoPtr> nodes{EndoNode::int_slope(0),
                                   EndoNode::rat_slope(1, 1000),
                                   EndoNode::rat_slope(-1, 1000),
                                   add(sqrt2_node(), neg(sqrt2_node())),
                                   sqrt2_node()};
        for (const auto& f : nodes) {
            bool saw_pos = false, saw_neg = false;
            for (unsigned fuel : {2u, 4u, 8u, 16u, 32u}) {
                SignResult r = sign(f, Fuel{fuel});
                saw_pos |= r.positive();
                saw_neg |= r.negative();
            }
            CHECK_FALSE((saw_pos && saw_neg));
        }
    }
}

TEST_CASE("compare orders the field") {
    CHECK(compare(EndoNode::int_slope(3), EndoNode::int_slope(2), Fuel{4}).positive());
    CHECK(compare(EndoNode::rat_slope(1, 3), EndoNode::rat_slope(1, 2), Fuel{8}).negative());
    CHECK(compare(sqrt2_node(), EndoNode::rat_slope(141421356, pow10(8)), Fuel{40}).positive());
}

TEST_CASE("invert constructs a working multiplicative inverse") {
    Fuel fuel{32};
    auto f = EndoNode::int_slope(2);
    auto g = invert(f, fuel);
    CHECK(g->eval(7) == 4);  // least y with 2y >= 7
    for (long x = 1; x <= 300; ++x) {
        Int r = f->eval(g->eval(x)) - x;
        CHECK(r >= 0);
        CHECK(r <= 1);
    }

    SECTION("reciprocal of 1/3 is 3") {
        auto inv = invert(EndoNode::rat_slope(1, 3), fuel);
        CHECK(inv->approx(pow10(4)).contains(Rat(3)));
    }

    SECTION("negative slopes go through the flipped construction") {
        auto inv = invert(EndoNode::int_slope(-2), fuel);
        CHECK(inv->eval(7) == -4);
        CHECK(inv->approx(pow10(4)).contains(Rat(-1, 2)));
    }

    SECTION("zero class refuses with a certified bound") {
        auto z = add(EndoNode::rat_slope(1, 2), neg(EndoNode::rat_slope(1, 2)));
        CHECK_THROWS_AS(invert(z, Fuel{16}), InconclusiveSign);
    }

    SECTION("inverse contract on random rational slopes") {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 10; ++i) {
            Int p(std::uniform_int_distribution<long>(1, 1000)(rng));
            Int q(std::uniform_int_distribution<long>(1, 1000)(rng));
            auto r = EndoNode::rat_slope(p, q);
            auto rinv = invert(r, Fuel{40});
            Int allowed = r->defect().c + abs(r->eval(1));
            for (long x = 1; x <= 2000; ++x)
                REQUIRE(abs(r->eval(rinv->eval(x)) - x) <= allowed);
        }
    }

    SECTION("inverse nodes pass certify_defect") {
        for (auto [p, q] : {std::pair<long, long>{7, 3}, {3, 2}, {1, 9}}) {
            auto r = EndoNode::rat_slope(p, q);
            auto rinv = invert(r, Fuel{32});
            CHECK_FALSE(rinv->certify_defect(200).violated);
        }
    }
}

TEST_CASE("to_decimal truncates a certified midpoint") {
    CHECK(to_decimal(EndoNode::rat_slope(1, 4), 3) == "0.250 ±1e-3");
    CHECK(to_decimal(EndoNode::int_slope(-3), 2) == "-3.00 ±1e-2");

    SECTION("twenty digits of sqrt2 against the isqrt oracle") {
        std::string s = to_decimal(sqrt2_node(), 20);
        CHECK(s == "1.41421356237309504880 ±1e-20");
        // independent recomputation: truncation of sqrt(2) to 20 places
        Int scaled = oracle::isqrt(Int(2) * pow_int(10, 40));
        Rat printed = parse_decimal(s);
        CHECK(abs(printed * pow10(20) - Rat(scaled)) <= 1);
    }

    SECTION("parse-back lands inside one ulp of the approx midpoint") {
        for (auto& f : {EndoNode::rat_slope(-355, 113), sqrt2_node(), EndoNode::int_slope(41)}) {
            unsigned d = 9;
            Rat printed = parse_decimal(to_decimal(f, d));
            Rat mid = f->approx(f->defect().c * pow10(d + 1)).value;
            CHECK(abs(printed - mid) < Rat(1, pow10(d)));
        }
    }

    CHECK_THROWS_AS(to_decimal(sqrt2_node(), 2000), error);
}
